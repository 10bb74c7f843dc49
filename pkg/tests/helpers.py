"""Independent oracles and random-input generators for the test suite.

Everything here deliberately avoids the library's sparse reduction path:
dense GF(2) elimination, explicit composite-map matrices and exhaustive
matching enumeration serve as ground truth.
"""
from __future__ import annotations

import math
import random
from typing import Sequence

import numpy as np

from z2persist import FilteredComplex, Interval, VertexFunction
from z2persist.complexes import _simplices_to_complex


def gf2_rank(m: np.ndarray) -> int:
    """Dense Gaussian elimination over GF(2)."""
    a = (np.asarray(m, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if a[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i, :] ^= a[r, :]
        r += 1
        if r == rows:
            break
    return r


def gf2_nullspace(m: np.ndarray) -> np.ndarray:
    """Kernel basis (columns) of a GF(2) matrix."""
    a = (np.asarray(m, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if a[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i, :] ^= a[r, :]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.uint8)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = a[i, fc]
    return basis


def dense_boundary(fc: FilteredComplex, k: int) -> np.ndarray:
    rows = [c.id for c in fc.cells if c.dim == k - 1]
    cols = [c for c in fc.cells if c.dim == k]
    row_of = {cid: i for i, cid in enumerate(rows)}
    m = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    for j, c in enumerate(cols):
        for f in c.boundary:
            m[row_of[f], j] = 1
    return m


def dense_betti(fc: FilteredComplex, k: int) -> int:
    nk = fc.num_cells(k)
    if nk == 0:
        return 0
    return nk - gf2_rank(dense_boundary(fc, k)) - gf2_rank(dense_boundary(fc, k + 1))


def inclusion_rank(fc: FilteredComplex, k: int, a: float, b: float) -> int:
    """Rank of H_k(sublevel a) -> H_k(sublevel b) by explicit chain-level
    linear algebra: rank[Z_a | B_b] - rank B_b."""
    assert a <= b
    k_ids = [c.id for c in fc.cells if c.dim == k and c.value <= b]
    pos = {cid: i for i, cid in enumerate(k_ids)}
    n = len(k_ids)
    # cycles of the a-sublevel, as vectors in the b-sublevel chain group
    a_ids = [cid for cid in k_ids if fc.cells[cid].value <= a]
    face_ids = [c.id for c in fc.cells if c.dim == k - 1]
    frow = {cid: i for i, cid in enumerate(face_ids)}
    bd = np.zeros((len(face_ids), len(a_ids)), dtype=np.uint8)
    for j, cid in enumerate(a_ids):
        for f in fc.cells[cid].boundary:
            bd[frow[f], j] = 1
    kernel = gf2_nullspace(bd)  # coords in a_ids
    z_cols = np.zeros((n, kernel.shape[1]), dtype=np.uint8)
    for j in range(kernel.shape[1]):
        for i, cid in enumerate(a_ids):
            if kernel[i, j]:
                z_cols[pos[cid], j] = 1
    b_cols_src = [c for c in fc.cells if c.dim == k + 1 and c.value <= b]
    b_cols = np.zeros((n, len(b_cols_src)), dtype=np.uint8)
    for j, c in enumerate(b_cols_src):
        for f in c.boundary:
            b_cols[pos[f], j] = 1
    return int(gf2_rank(np.concatenate([z_cols, b_cols], axis=1)) - gf2_rank(b_cols))


def pair_rank(skeleton: FilteredComplex, f: VertexFunction, M: float,
              lam: float, k: int, a: float, b: float) -> int:
    """Rank of H_k(X_a, A_a) -> H_k(X_b, A_b) over GF(2).

    X_t collects cells entering at max f over their vertices, A_t cells of
    the superlevel complement mirror entering at 2M + lam - min f.  The
    rank is computed directly on quotient chain complexes: relative cycles
    at a modulo boundaries-at-b plus chains in A_b.
    """
    assert a <= b

    def asc(c):
        return max(f(v) for v in skeleton.cell_vertices(c.id))

    def desc(c):
        return 2 * M + lam - min(f(v) for v in skeleton.cell_vertices(c.id))

    k_ids = [c.id for c in skeleton.cells if c.dim == k]
    if not k_ids:
        return 0
    pos = {cid: i for i, cid in enumerate(k_ids)}
    in_xa = {c.id for c in skeleton.cells if asc(c) <= a}
    in_xb = {c.id for c in skeleton.cells if asc(c) <= b}
    in_aa = {c.id for c in skeleton.cells if desc(c) <= a}
    in_ab = {c.id for c in skeleton.cells if desc(c) <= b}
    # relative cycles at a: chains on X_a whose boundary lies in A_a
    a_ids = [cid for cid in k_ids if cid in in_xa]
    face_ids = [c.id for c in skeleton.cells if c.dim == k - 1 and c.id not in in_aa]
    frow = {cid: i for i, cid in enumerate(face_ids)}
    bd = np.zeros((len(face_ids), len(a_ids)), dtype=np.uint8)
    for j, cid in enumerate(a_ids):
        for fa in skeleton.cells[cid].boundary:
            if fa in frow:
                bd[frow[fa], j] = 1
    kernel = gf2_nullspace(bd)
    z_cols = np.zeros((len(k_ids), kernel.shape[1]), dtype=np.uint8)
    for j in range(kernel.shape[1]):
        for i, cid in enumerate(a_ids):
            if kernel[i, j]:
                z_cols[pos[cid], j] = 1
    # null directions at b: boundaries of (k+1)-cells in X_b and chains in A_b
    null_srcs = [c for c in skeleton.cells if c.dim == k + 1 and c.id in in_xb]
    n_cols = np.zeros((len(k_ids), len(null_srcs) + len(in_ab & set(k_ids))), dtype=np.uint8)
    for j, c in enumerate(null_srcs):
        for fa in c.boundary:
            n_cols[pos[fa], j] = 1
    for j, cid in enumerate(sorted(in_ab & set(k_ids))):
        n_cols[pos[cid], len(null_srcs) + j] = 1
    return int(gf2_rank(np.concatenate([z_cols, n_cols], axis=1)) - gf2_rank(n_cols))


def composite_rank(intervals: Sequence[Interval], a: float, p: float) -> int:
    """Rank of the composed interval-module maps from parameter a to a+p,
    built as explicit GF(2) step matrices and multiplied."""
    b = a + p
    cuts = sorted(
        {a, b}
        | {iv.birth for iv in intervals if a < iv.birth < b}
        | {iv.death for iv in intervals if iv.death != math.inf and a < iv.death < b}
    )
    def alive(t):
        return [i for i, iv in enumerate(intervals) if t in iv]
    prod = np.eye(len(alive(a)), dtype=np.uint8)
    prev = alive(a)
    for t in cuts[1:]:
        cur = alive(t)
        step = np.zeros((len(cur), len(prev)), dtype=np.uint8)
        for col, i in enumerate(prev):
            if i in cur:
                step[cur.index(i), col] = 1
        prod = (step @ prod) % 2
        prev = cur
    return gf2_rank(prod) if prod.size else 0


def match_cost(i: Interval, j: Interval) -> float:
    if i.death == math.inf and j.death == math.inf:
        return abs(i.birth - j.birth)
    return max(abs(i.birth - j.birth), abs(i.death - j.death))


def exhaustive_bottleneck(left: Sequence[Interval], right: Sequence[Interval]) -> float:
    """Minimum over all matchings of the max per-bar cost, by recursion."""
    best = math.inf

    def rec(i: int, used: set, acc: float):
        nonlocal best
        if acc >= best:
            return
        if i == len(left):
            rest = max(
                (right[j].length / 2 for j in range(len(right)) if j not in used),
                default=0.0,
            )
            best = min(best, max(acc, rest))
            return
        rec(i + 1, used, max(acc, left[i].length / 2))
        for j in range(len(right)):
            if j not in used:
                rec(i + 1, used | {j}, max(acc, match_cost(left[i], right[j])))

    rec(0, set(), 0.0)
    return best


def random_intervals(rng: random.Random, n: int, allow_infinite: bool = True) -> list[Interval]:
    out = []
    for _ in range(n):
        b = rng.uniform(-3, 3)
        if allow_infinite and rng.random() < 0.25:
            out.append(Interval(b, math.inf))
        else:
            out.append(Interval(b, b + rng.uniform(0.1, 4.0)))
    return out


def random_skeleton(rng: random.Random, max_cells: int = 30) -> FilteredComplex:
    """Random small simplicial complex (vertices, edges, some triangles)."""
    nv = rng.randint(3, 7)
    simplices = {(i,): 0.0 for i in range(nv)}
    pairs = [(i, j) for i in range(nv) for j in range(i + 1, nv)]
    rng.shuffle(pairs)
    for e in pairs[: rng.randint(nv - 1, len(pairs))]:
        simplices[e] = 0.0
    tris = [
        (i, j, k)
        for i in range(nv)
        for j in range(i + 1, nv)
        for k in range(j + 1, nv)
        if (i, j) in simplices and (i, k) in simplices and (j, k) in simplices
    ]
    rng.shuffle(tris)
    for t in tris[: rng.randint(0, len(tris))]:
        if len(simplices) >= max_cells:
            break
        simplices[t] = 0.0
    return _simplices_to_complex(simplices)


def random_vertex_function(rng: random.Random, fc: FilteredComplex,
                           lo: float = -1.0, hi: float = 1.0) -> VertexFunction:
    vals = {c.id: rng.uniform(lo, hi) for c in fc.cells if c.dim == 0}
    return VertexFunction(vals, bound_M=max(abs(lo), abs(hi)) + 1.0)


def perturbed(rng: random.Random, f: VertexFunction, radius: float) -> VertexFunction:
    vals = {v: x + rng.uniform(-radius, radius) for v, x in f.values.items()}
    return VertexFunction(vals, bound_M=f.bound_M + radius)
