"""Boundary-matrix reduction, barcodes and the finite-type calculus."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import z2
from .complexes import FilteredComplex, format_value


@dataclass(frozen=True, order=True)
class Interval:
    """Half-open interval [birth, death); death may be +inf."""

    birth: float
    death: float

    def __post_init__(self):
        if not self.birth < self.death:
            raise ValueError(f"need birth < death, got [{self.birth}, {self.death})")

    def __contains__(self, t: float) -> bool:
        return self.birth <= t < self.death

    @property
    def length(self) -> float:
        return self.death - self.birth


class Barcode:
    """Multiset of (dimension, interval) bars, kept in sorted order."""

    def __init__(self, bars: Iterable[tuple[int, Interval]]):
        self.bars: tuple[tuple[int, Interval], ...] = tuple(
            sorted(bars, key=lambda b: (b[0], b[1].birth, b[1].death))
        )

    def __len__(self) -> int:
        return len(self.bars)

    def __iter__(self):
        return iter(self.bars)

    def __eq__(self, other) -> bool:
        return isinstance(other, Barcode) and self.bars == other.bars

    def __repr__(self) -> str:
        return f"Barcode({list(self.bars)!r})"

    def in_dim(self, k: int) -> list[Interval]:
        return [iv for d, iv in self.bars if d == k]

    def dims(self) -> tuple[int, ...]:
        return tuple(sorted({d for d, _ in self.bars}))

    def to_bcx(self) -> str:
        """BCX v1: `<dim> <birth> <death|inf>` lines, sorted."""
        return "".join(
            f"{d} {format_value(iv.birth)} {format_value(iv.death)}\n"
            for d, iv in self.bars
        )


def parse_bcx(text: str) -> Barcode:
    bars = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected `<dim> <birth> <death>`")
        d = int(parts[0])
        birth = float(parts[1])
        death = math.inf if parts[2] == "inf" else float(parts[2])
        bars.append((d, Interval(birth, death)))
    return Barcode(bars)


@dataclass(frozen=True)
class Reduction:
    """Outcome of the column reduction: (birth, death) cell pairs, the
    unpaired (positive, never-killed) cells, and a cycle per positive cell."""

    pairs: tuple[tuple[int, int], ...]
    unpaired: tuple[int, ...]
    cycles: dict


def reduce_filtration(fc: FilteredComplex) -> Reduction:
    """Standard left-to-right reduction of the full boundary matrix.

    Cell ids double as row/column indices since the declaration order is
    the filtration order.  Deterministic.
    """
    n = len(fc.cells)
    reduced: dict[int, tuple] = {}      # column id -> reduced column
    chain: dict[int, tuple] = {}        # column id -> cells summed into it
    low_to_col: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    positives: list[int] = []
    cycles: dict[int, tuple] = {}
    for j in range(n):
        col = fc.cells[j].boundary
        v = (j,)
        while col:
            pivot = col[-1]
            other = low_to_col.get(pivot)
            if other is None:
                break
            col = z2.add_into(col, reduced[other])
            v = z2.add_into(v, chain[other])
        reduced[j] = col
        chain[j] = v
        if col:
            low_to_col[col[-1]] = j
            pairs.append((col[-1], j))
        else:
            positives.append(j)
            cycles[j] = v
    paired_rows = {i for i, _ in pairs}
    unpaired = tuple(j for j in positives if j not in paired_rows)
    return Reduction(pairs=tuple(pairs), unpaired=unpaired, cycles=cycles)


def barcode(fc: FilteredComplex) -> Barcode:
    """Barcode of the filtration; zero-length pairs are dropped."""
    red = reduce_filtration(fc)
    bars = []
    for i, j in red.pairs:
        b, d = fc.cells[i].value, fc.cells[j].value
        if b < d:
            bars.append((fc.cells[i].dim, Interval(b, d)))
    for j in red.unpaired:
        bars.append((fc.cells[j].dim, Interval(fc.cells[j].value, math.inf)))
    return Barcode(bars)


def persistent_betti(b: Barcode, k: int, a: float, p: float) -> int:
    """Rank of the map induced by inclusion of level a into level a+p:
    bars born no later than a and still alive at a+p."""
    if p < 0:
        raise ValueError("lifespan p must be nonnegative")
    return sum(1 for iv in b.in_dim(k) if iv.birth <= a and iv.death > a + p)


@dataclass(frozen=True)
class DimensionFunction:
    """Piecewise-constant bar count: dims[i] holds on
    [critical_values[i-1], critical_values[i]) with half-open pieces."""

    critical_values: tuple[float, ...]
    dims: tuple[int, ...]

    def __call__(self, t: float) -> int:
        i = 0
        while i < len(self.critical_values) and t >= self.critical_values[i]:
            i += 1
        return self.dims[i]


def dimension_function(intervals: Sequence[Interval]) -> DimensionFunction:
    critical = tuple(
        sorted(
            {iv.birth for iv in intervals}
            | {iv.death for iv in intervals if iv.death != math.inf}
        )
    )
    dims = [0] + [sum(1 for iv in intervals if c in iv) for c in critical]
    return DimensionFunction(critical, tuple(dims))


def barcode_dimension_function(b: Barcode, k: int) -> DimensionFunction:
    return dimension_function(b.in_dim(k))


def characteristic_sum_identity_check(
    lhs: Sequence[Interval], rhs: Sequence[Interval]
) -> bool:
    """Pointwise equality of the dimension functions of two interval sums.

    The splice and union/intersection identities for characteristic
    diagrams hold at this level (not as diagram isomorphisms: the internal
    maps across the seam differ).
    """
    points = sorted(
        {iv.birth for iv in lhs} | {iv.birth for iv in rhs}
        | {iv.death for iv in lhs if iv.death != math.inf}
        | {iv.death for iv in rhs if iv.death != math.inf}
    )
    if not points:
        return len(lhs) == len(rhs) == 0
    samples = [points[0] - 1.0]
    for i, t in enumerate(points):
        samples.append(t)
        if i + 1 < len(points):
            samples.append((t + points[i + 1]) / 2)
    samples.append(points[-1] + 1.0)
    return all(
        sum(1 for iv in lhs if t in iv) == sum(1 for iv in rhs if t in iv)
        for t in samples
    )
