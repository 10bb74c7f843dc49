"""Absolute Z/2 homology: Betti numbers, cycle generators, duality check."""
from __future__ import annotations

from dataclasses import dataclass

from . import z2
from .complexes import FilteredComplex


def betti(fc: FilteredComplex, k: int) -> int:
    """dim ker of the k-th boundary map minus rank of the (k+1)-st."""
    if k < 0 or k > fc.max_dim:
        return 0
    ker = fc.num_cells(k) - z2.rank(fc.boundary_matrix(k))
    return ker - z2.rank(fc.boundary_matrix(k + 1))


def betti_numbers(fc: FilteredComplex) -> tuple[int, ...]:
    return tuple(betti(fc, k) for k in range(fc.max_dim + 1))


def generators(fc: FilteredComplex, k: int) -> list[frozenset]:
    """Cycle representatives for a basis of H_k, as sets of cell ids.

    Representatives come from the boundary-matrix reduction and are not
    canonical; any basis of cycles modulo boundaries is equally valid.
    """
    from .persistence import reduce_filtration

    red = reduce_filtration(fc)
    return [
        frozenset(red.cycles[j])
        for j in red.unpaired
        if fc.cells[j].dim == k
    ]


@dataclass(frozen=True)
class HomologySummary:
    betti: dict
    generators: dict


def summarize(fc: FilteredComplex) -> HomologySummary:
    return HomologySummary(
        betti={k: betti(fc, k) for k in range(fc.max_dim + 1)},
        generators={k: generators(fc, k) for k in range(fc.max_dim + 1)},
    )


@dataclass(frozen=True)
class DualityReport:
    ok: bool
    mismatches: tuple[tuple[int, int, int], ...]  # (k, betti_k, betti_n_minus_k)


def duality_check(fc: FilteredComplex, n: int) -> DualityReport:
    """Betti-number symmetry b_k == b_{n-k} for a closed n-manifold.

    Over the field Z/2 every closed manifold is orientable, and cohomology
    ranks equal homology ranks, so duality reduces to this palindrome
    test.  The manifold hypothesis is the caller's responsibility.
    """
    mismatches = []
    for k in range(n + 1):
        bk, bnk = betti(fc, k), betti(fc, n - k)
        if bk != bnk:
            mismatches.append((k, bk, bnk))
    return DualityReport(ok=not mismatches, mismatches=tuple(mismatches))
