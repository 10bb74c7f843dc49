"""Vietoris-Rips filtrations of Euclidean point clouds and Betti curves.

Scale is the simplex diameter: two balls of radius r intersect iff the
centre distance is at most 2r, so a radius step s is a diameter step 2s.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .complexes import Cell, FilteredComplex
from .persistence import Barcode


@dataclass(frozen=True)
class PointCloud:
    points: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("point cloud is empty")
        d = len(self.points[0])
        for p in self.points:
            if len(p) != d:
                raise ValueError("points have mixed dimensions")
            if not all(math.isfinite(x) for x in p):
                raise ValueError("non-finite coordinate")

    def __len__(self) -> int:
        return len(self.points)

    def distance_matrix(self) -> np.ndarray:
        pts = np.asarray(self.points, dtype=float)
        diff = pts[:, None, :] - pts[None, :, :]
        return np.sqrt((diff**2).sum(axis=-1))

    @classmethod
    def from_csv(cls, text: str) -> "PointCloud":
        pts = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            pts.append(tuple(float(x) for x in line.split(",")))
        return cls(tuple(pts))

    def to_csv(self) -> str:
        return "\n".join(",".join(repr(x) for x in p) for p in self.points) + "\n"


@dataclass(frozen=True)
class RipsParams:
    max_dim: int
    steps: Optional[int] = None          # number N of filtration steps
    step_size: Optional[float] = None    # diameter increase per step
    threshold: Optional[float] = None

    def __post_init__(self):
        if self.max_dim < 0:
            raise ValueError("max_dim must be nonnegative")
        if self.steps is not None and self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.step_size is not None and self.step_size <= 0:
            raise ValueError("step_size must be positive")
        if (self.steps is None) != (self.step_size is None):
            raise ValueError("steps and step_size go together")

    @property
    def scale_limit(self) -> float:
        if self.threshold is not None:
            return self.threshold
        if self.steps is not None:
            return self.steps * self.step_size
        return math.inf


def _snap_up(value: float, step: float) -> float:
    k = math.ceil(value / step - 1e-12)
    return k * step


def rips_filtration(pc: PointCloud, params: RipsParams) -> FilteredComplex:
    """Build the Rips filtration up to max_dim and the scale limit.

    Vertices at 0; every higher simplex enters at its diameter (snapped up
    to the next step boundary in stepped mode).  Simplices are enumerated
    by expanding cliques of the threshold graph in vertex order, so the
    output is deterministic.
    """
    dist = pc.distance_matrix()
    n = len(pc)
    limit = params.scale_limit
    if limit == math.inf:
        raise ValueError("need a threshold or steps to bound the scale")
    nbrs = [
        [j for j in range(i + 1, n) if dist[i, j] <= limit] for i in range(n)
    ]
    simplices: list[tuple[tuple[int, ...], float]] = [((i,), 0.0) for i in range(n)]
    frontier = [((i,), 0.0, nbrs[i]) for i in range(n)]
    for _ in range(params.max_dim):
        nxt = []
        for simplex, diam, cands in frontier:
            for idx, j in enumerate(cands):
                d = float(max(diam, max(dist[v, j] for v in simplex)))
                if d > limit:
                    continue
                ext = [u for u in cands[idx + 1 :] if dist[j, u] <= limit]
                nxt.append((simplex + (j,), d, ext))
        simplices.extend((s, d) for s, d, _ in nxt)
        frontier = nxt
    if params.step_size is not None:
        simplices = [
            (s, _snap_up(d, params.step_size) if len(s) > 1 else 0.0)
            for s, d in simplices
        ]
        simplices = [(s, d) for s, d in simplices if d <= limit]
    simplices.sort(key=lambda sd: (sd[1], len(sd[0]), sd[0]))
    ids = {s: i for i, (s, _) in enumerate(simplices)}
    cells = []
    for s, d in simplices:
        cid = ids[s]
        bdry = ()
        if len(s) > 1:
            bdry = tuple(ids[s[:i] + s[i + 1 :]] for i in range(len(s)))
        verts = tuple(ids[(v,)] for v in s)
        cells.append(
            Cell(cid, len(s) - 1, d, boundary=bdry, vertices=verts,
                 name="-".join(str(v) for v in s))
        )
    return FilteredComplex(cells)


def betti_curve(b: Barcode, k: int, grid: Sequence[float]) -> list[int]:
    """Number of degree-k bars alive at each grid value."""
    if any(grid[i] > grid[i + 1] for i in range(len(grid) - 1)):
        raise ValueError("grid must be sorted")
    bars = b.in_dim(k)
    return [sum(1 for iv in bars if t in iv) for t in grid]


def betti_curve_csv(b: Barcode, grid: Sequence[float], max_k: Optional[int] = None) -> str:
    """CSV with header t,b0,...,bK, one row per grid value."""
    if max_k is None:
        max_k = max(b.dims(), default=0)
    curves = [betti_curve(b, k, grid) for k in range(max_k + 1)]
    lines = ["t," + ",".join(f"b{k}" for k in range(max_k + 1))]
    for i, t in enumerate(grid):
        lines.append(f"{t!r}," + ",".join(str(c[i]) for c in curves))
    return "\n".join(lines) + "\n"
