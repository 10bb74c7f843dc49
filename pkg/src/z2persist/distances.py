"""Bottleneck/interleaving distance between finite-type barcodes."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .complexes import FilteredComplex, VertexFunction, lower_star
from .persistence import Barcode, Interval, barcode


def _match_cost(i: Interval, j: Interval) -> float:
    """Sup distance between endpoints; inf - inf counts as 0."""
    db = abs(i.birth - j.birth)
    if i.death == math.inf and j.death == math.inf:
        return db
    return max(db, abs(i.death - j.death))


def _deletion_cost(i: Interval) -> float:
    """Half the length: the cheapest eps-interleaving that kills a bar
    collapses it from both ends."""
    return i.length / 2


def interval_distance(i: Interval, j: Interval) -> float:
    """Interleaving distance between two characteristic intervals: match
    endpoints or delete both, whichever is cheaper."""
    return min(_match_cost(i, j), max(_deletion_cost(i), _deletion_cost(j)))


@dataclass(frozen=True)
class Matching:
    """Partition of two barcodes into matched pairs and deletions."""

    pairs: tuple[tuple[int, int], ...]
    unmatched_left: tuple[int, ...]
    unmatched_right: tuple[int, ...]


def _feasible(
    left: Sequence[Interval], right: Sequence[Interval], eps: float
) -> Optional[Matching]:
    """Perfect-matching feasibility at tolerance eps.

    Each side is padded with one slot per opposite bar (deletion targets);
    bar-bar edges need endpoint cost <= eps, bar-slot edges need the bar's
    half-length <= eps, slot-slot edges are free.  A perfect matching on
    the padded graph exists iff the barcodes are eps-matchable.
    """
    nl, nr = len(left), len(right)
    size = nl + nr

    def edges(u: int) -> list[int]:
        out = []
        if u < nl:
            iv = left[u]
            out += [v for v in range(nr) if _match_cost(iv, right[v]) <= eps]
            if _deletion_cost(iv) <= eps:
                out.append(nr + u)
        else:
            sv = u - nl
            if _deletion_cost(right[sv]) <= eps:
                out.append(sv)
            out += [nr + v for v in range(nl)]
        return out

    match_r = [-1] * size

    def augment(u: int, seen: list[bool]) -> bool:
        for v in edges(u):
            if not seen[v]:
                seen[v] = True
                if match_r[v] == -1 or augment(match_r[v], seen):
                    match_r[v] = u
                    return True
        return False

    for u in range(size):
        if not augment(u, [False] * size):
            return None
    pairs = []
    unmatched_left = []
    unmatched_right = []
    for v in range(size):
        u = match_r[v]
        if v < nr and u < nl:
            pairs.append((u, v))
        elif v < nr and u >= nl:
            unmatched_right.append(v)
        elif v >= nr and u < nl:
            unmatched_left.append(u)
    return Matching(tuple(pairs), tuple(unmatched_left), tuple(unmatched_right))


def bottleneck_matching(
    b1: Barcode, b2: Barcode, k: int
) -> tuple[float, Optional[Matching]]:
    """Bottleneck distance in degree k with an optimal matching witness.

    Exact: the optimum is attained at one of the finitely many candidate
    values (endpoint gaps and half-lengths), found by binary search with a
    bipartite feasibility check.  Barcodes with different numbers of
    infinite bars are at distance infinity.
    """
    left, right = b1.in_dim(k), b2.in_dim(k)
    n_inf_l = sum(1 for iv in left if iv.death == math.inf)
    n_inf_r = sum(1 for iv in right if iv.death == math.inf)
    if n_inf_l != n_inf_r:
        return math.inf, None
    if not left and not right:
        return 0.0, Matching((), (), ())
    candidates = {0.0}
    for i in left:
        for j in right:
            c = _match_cost(i, j)
            if c != math.inf:
                candidates.add(c)
    for iv in left + right:
        if iv.death != math.inf:
            candidates.add(_deletion_cost(iv))
    values = sorted(candidates)
    lo, hi = 0, len(values) - 1
    if _feasible(left, right, values[hi]) is None:
        return math.inf, None
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(left, right, values[mid]) is not None:
            hi = mid
        else:
            lo = mid + 1
    return values[lo], _feasible(left, right, values[lo])


def bottleneck(b1: Barcode, b2: Barcode, k: Optional[int] = None) -> float:
    """Bottleneck distance in degree k, or the max over all degrees."""
    if k is not None:
        return bottleneck_matching(b1, b2, k)[0]
    dims = set(b1.dims()) | set(b2.dims())
    return max((bottleneck_matching(b1, b2, d)[0] for d in dims), default=0.0)


def interleaved(b1: Barcode, b2: Barcode, k: int, eps: float) -> bool:
    """Whether the degree-k diagrams are eps-interleaved; the matching at
    eps is the witness for the shifted maps."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return bottleneck(b1, b2, k) <= eps


@dataclass(frozen=True)
class StabilityReport:
    lhs: float
    rhs: float
    ok: bool


def stability_harness(
    skeleton: FilteredComplex,
    f: VertexFunction,
    g: VertexFunction,
    k: Optional[int] = None,
    mode: str = "ordinary",
    tol: float = 1e-9,
) -> StabilityReport:
    """Check the stability bound: barcode distance <= sup|f - g|.

    mode 'ordinary' compares lower-star barcodes, 'extended' compares
    extended barcodes built with a common bound M.
    """
    rhs = f.sup_distance(g)
    if mode == "ordinary":
        lhs = bottleneck(barcode(lower_star(skeleton, f)),
                         barcode(lower_star(skeleton, g)), k)
    elif mode == "extended":
        from .extended import BifiltrationSpec, extended_barcode

        sup = max(max(abs(x) for x in f.values.values()),
                  max(abs(x) for x in g.values.values()))
        M = sup + 1.0
        lhs = bottleneck(
            extended_barcode(BifiltrationSpec(skeleton, f, M=M)),
            extended_barcode(BifiltrationSpec(skeleton, g, M=M)),
            k,
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return StabilityReport(lhs=lhs, rhs=rhs, ok=lhs <= rhs + tol)
