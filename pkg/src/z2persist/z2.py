"""Sparse linear algebra over GF(2).

Columns are sorted tuples of row indices holding a 1; the empty tuple is
the zero column.  Everything is immutable and pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

Z2Column = tuple  # strictly increasing row indices


def column(rows: Iterable[int]) -> Z2Column:
    """Build a column from row indices, cancelling duplicate pairs (1+1=0)."""
    out: list[int] = []
    for r in sorted(rows):
        if out and out[-1] == r:
            out.pop()
        else:
            out.append(r)
    return tuple(out)


def add_into(target: Z2Column, source: Z2Column) -> Z2Column:
    """GF(2) column addition: symmetric difference of the index sets."""
    out: list[int] = []
    i = j = 0
    n, m = len(target), len(source)
    while i < n and j < m:
        a, b = target[i], source[j]
        if a < b:
            out.append(a)
            i += 1
        elif b < a:
            out.append(b)
            j += 1
        else:
            i += 1
            j += 1
    out.extend(target[i:])
    out.extend(source[j:])
    return tuple(out)


def low(col: Z2Column) -> Optional[int]:
    """Largest row index with a 1, or None for the zero column."""
    return col[-1] if col else None


@dataclass(frozen=True)
class SparseZ2Matrix:
    """Column-major GF(2) matrix."""

    num_rows: int
    columns: tuple[Z2Column, ...]

    def __post_init__(self):
        for col in self.columns:
            if col and (col[-1] >= self.num_rows or col[0] < 0):
                raise ValueError(f"row index out of range in column {col}")

    @property
    def num_cols(self) -> int:
        return len(self.columns)


def rank(m: SparseZ2Matrix) -> int:
    """GF(2) rank by deterministic left-to-right column reduction.

    A column is repeatedly reduced by the earlier column sharing its low
    index until its low is fresh or the column vanishes.
    """
    low_to_col: dict[int, Z2Column] = {}
    r = 0
    for col in m.columns:
        while col:
            pivot = col[-1]
            other = low_to_col.get(pivot)
            if other is None:
                low_to_col[pivot] = col
                r += 1
                break
            col = add_into(col, other)
    return r
