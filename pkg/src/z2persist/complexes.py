"""Filtered cell complexes with explicit mod-2 boundaries.

Cells carry a dimension, a filtration value and the set of (dim-1)-cells
appearing in their boundary with odd degree.  A cell may also carry the
vertex ids of its closure; when absent they are recovered by following
boundaries, which is exact for honest simplicial cells.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

from .z2 import SparseZ2Matrix, column


class ComplexError(ValueError):
    """Invariant violation, pointing at the first offending cell."""

    def __init__(self, message: str, cell_id: Optional[int] = None):
        super().__init__(message if cell_id is None else f"cell {cell_id}: {message}")
        self.cell_id = cell_id


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    value: float
    boundary: tuple[int, ...] = ()
    vertices: Optional[tuple[int, ...]] = None
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(sorted(self.boundary)))
        if self.vertices is not None:
            object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))

    def label(self) -> str:
        return self.name if self.name is not None else str(self.id)


@dataclass(frozen=True)
class VertexFunction:
    """Real values on vertex ids, bounded by bound_M (|f| <= M).

    The fixtures attain the bound at the extreme heights, so the check is
    non-strict.
    """

    values: dict
    bound_M: float

    def __post_init__(self):
        if self.bound_M <= 0:
            raise ValueError("bound_M must be positive")
        for v, x in self.values.items():
            if abs(x) > self.bound_M:
                raise ValueError(f"|f({v})| = {abs(x)} exceeds bound {self.bound_M}")

    def __call__(self, vertex: int) -> float:
        try:
            return self.values[vertex]
        except KeyError:
            raise ComplexError("no function value for vertex", vertex) from None

    def sup_distance(self, other: "VertexFunction") -> float:
        if set(self.values) != set(other.values):
            raise ValueError("vertex functions defined on different vertex sets")
        return max(abs(self.values[v] - other.values[v]) for v in self.values)


class FilteredComplex:
    """Ordered cells forming a filtration: faces precede cofaces, values
    monotone along boundaries, ties broken by (value, dim, id)."""

    def __init__(self, cells: Iterable[Cell]):
        self.cells: tuple[Cell, ...] = tuple(cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    @property
    def max_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def validate(self) -> None:
        """Raise ComplexError on the first violated invariant."""
        cells = self.cells
        for i, c in enumerate(cells):
            if c.id != i:
                raise ComplexError(f"id {c.id} out of declaration order", c.id)
            if c.dim < 0:
                raise ComplexError("negative dimension", c.id)
        for i in range(1, len(cells)):
            a, b = cells[i - 1], cells[i]
            if (b.value, b.dim) < (a.value, a.dim):
                raise ComplexError(
                    f"ordering violation: value {b.value} dim {b.dim} after "
                    f"value {a.value} dim {a.dim}",
                    b.id,
                )
        for c in cells:
            prev = None
            for f in c.boundary:
                if f == prev:
                    raise ComplexError(f"repeated face {f}", c.id)
                prev = f
                if f >= c.id:
                    raise ComplexError(f"face {f} not previously declared", c.id)
                face = cells[f]
                if face.dim != c.dim - 1:
                    raise ComplexError(
                        f"face {f} has dim {face.dim}, expected {c.dim - 1}", c.id
                    )
                if face.value > c.value:
                    raise ComplexError(
                        f"face {f} enters at {face.value} after cell value {c.value}",
                        c.id,
                    )
        for c in cells:
            if c.dim >= 1:
                dd = column(g for f in c.boundary for g in cells[f].boundary)
                if dd:
                    raise ComplexError("boundary of boundary is nonzero", c.id)

    def cell_vertices(self, cell_id: int) -> frozenset:
        """Vertex ids in the closure of a cell.

        Uses the explicit vertex list when present, otherwise the
        transitive boundary closure (exact for simplicial cells).
        """
        c = self.cells[cell_id]
        if c.vertices is not None:
            return frozenset(c.vertices)
        if c.dim == 0:
            return frozenset((c.id,))
        out: set[int] = set()
        stack = list(c.boundary)
        seen = set(stack)
        while stack:
            f = stack.pop()
            fc = self.cells[f]
            if fc.dim == 0:
                out.add(f)
            for g in fc.boundary:
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        return frozenset(out)

    def sublevel(self, a: float) -> "FilteredComplex":
        """Subcomplex of cells with value <= a (a prefix, by the ordering)."""
        return FilteredComplex(c for c in self.cells if c.value <= a)

    def euler_characteristic(self) -> int:
        return sum((-1) ** c.dim for c in self.cells)

    def boundary_matrix(self, k: int) -> SparseZ2Matrix:
        """Matrix of the boundary map from k-cells to (k-1)-cells.

        Rows index (k-1)-cells and columns index k-cells, each in
        filtration order.
        """
        rows = [c.id for c in self.cells if c.dim == k - 1]
        row_of = {cid: i for i, cid in enumerate(rows)}
        cols = tuple(
            tuple(sorted(row_of[f] for f in c.boundary))
            for c in self.cells
            if c.dim == k
        )
        return SparseZ2Matrix(len(rows), cols)

    def num_cells(self, k: int) -> int:
        return sum(1 for c in self.cells if c.dim == k)

    def critical_values(self) -> tuple[float, ...]:
        return tuple(sorted({c.value for c in self.cells}))


def sort_filtration(cells: Sequence[Cell]) -> FilteredComplex:
    """Re-sort cells by (value, dim, id) and renumber ids accordingly."""
    order = sorted(cells, key=lambda c: (c.value, c.dim, c.id))
    new_id = {c.id: i for i, c in enumerate(order)}
    out = [
        replace(
            c,
            id=i,
            boundary=tuple(new_id[f] for f in c.boundary),
            vertices=None
            if c.vertices is None
            else tuple(new_id[v] for v in c.vertices),
        )
        for i, c in enumerate(order)
    ]
    return FilteredComplex(out)


def lower_star(skeleton: FilteredComplex, f: VertexFunction) -> FilteredComplex:
    """Sublevel filtration of a vertex function: each cell enters at the
    maximum of f over its vertices."""
    valued = []
    for c in skeleton.cells:
        verts = skeleton.cell_vertices(c.id)
        if not verts:
            raise ComplexError("cell has no vertices in its closure", c.id)
        valued.append(replace(c, value=max(f(v) for v in verts)))
    fc = sort_filtration(valued)
    fc.validate()
    return fc


def upper_star_entry(skeleton: FilteredComplex, f: VertexFunction, cell_id: int) -> float:
    """Minimum of f over a cell's vertices (superlevel entry height)."""
    verts = skeleton.cell_vertices(cell_id)
    if not verts:
        raise ComplexError("cell has no vertices in its closure", cell_id)
    return min(f(v) for v in verts)


# ---------------------------------------------------------------------------
# built-in generators


def ng_cw(g: int) -> FilteredComplex:
    """CW structure on the non-orientable genus-g surface: one vertex,
    g one-cells, one two-cell, all mod-2 boundary maps zero."""
    if g < 1:
        raise ValueError("genus must be >= 1")
    cells = [Cell(0, 0, 0.0, name="v")]
    for i in range(g):
        cells.append(Cell(1 + i, 1, 0.0, vertices=(0,), name=f"a{i}"))
    cells.append(Cell(1 + g, 2, 0.0, vertices=(0,), name="F"))
    return FilteredComplex(cells)


def klein_delta() -> FilteredComplex:
    """Delta-complex Klein bottle: one vertex, edges a,b,c, triangles U,L
    with boundary a+b+c each; edge boundaries vanish mod 2."""
    return FilteredComplex(
        [
            Cell(0, 0, 0.0, name="v"),
            Cell(1, 1, 0.0, vertices=(0,), name="a"),
            Cell(2, 1, 0.0, vertices=(0,), name="b"),
            Cell(3, 1, 0.0, vertices=(0,), name="c"),
            Cell(4, 2, 0.0, boundary=(1, 2, 3), vertices=(0,), name="U"),
            Cell(5, 2, 0.0, boundary=(1, 2, 3), vertices=(0,), name="L"),
        ]
    )


def torus_delta() -> FilteredComplex:
    """Delta-complex torus; over Z/2 its chain complex coincides with the
    Klein bottle's (orientation signs vanish)."""
    return FilteredComplex(
        [
            Cell(0, 0, 0.0, name="v"),
            Cell(1, 1, 0.0, vertices=(0,), name="a"),
            Cell(2, 1, 0.0, vertices=(0,), name="b"),
            Cell(3, 1, 0.0, vertices=(0,), name="c"),
            Cell(4, 2, 0.0, boundary=(1, 2, 3), vertices=(0,), name="U"),
            Cell(5, 2, 0.0, boundary=(1, 2, 3), vertices=(0,), name="L"),
        ]
    )


def klein_height_skeleton(M: float, A: float) -> tuple[FilteredComplex, VertexFunction]:
    """Klein bottle with a height function: vertices at heights -M, -A, M.

    A homology-level CW model of the immersed bottle: sublevel sets run
    point -> circle (extra loop at height -A) -> closed bottle at M, and
    the superlevel sets seen by the descending phase are a disk-like cap
    carrying the one-cycle born at M.
    """
    if not (0 < A < M):
        raise ValueError("need 0 < A < M")
    cells = [
        Cell(0, 0, 0.0, name="v0"),
        Cell(1, 0, 0.0, name="v1"),
        Cell(2, 0, 0.0, name="v2"),
        Cell(3, 1, 0.0, boundary=(0, 1), vertices=(0, 1), name="p"),
        Cell(4, 1, 0.0, vertices=(1,), name="a"),
        Cell(5, 1, 0.0, boundary=(1, 2), vertices=(1, 2), name="q"),
        Cell(6, 1, 0.0, vertices=(2,), name="b"),
        Cell(7, 1, 0.0, boundary=(1, 2), vertices=(1, 2), name="c"),
        Cell(8, 2, 0.0, boundary=(4, 5, 6, 7), vertices=(1, 2), name="U"),
        Cell(9, 2, 0.0, boundary=(4, 5, 6, 7), vertices=(0, 1, 2), name="L"),
    ]
    f = VertexFunction({0: -M, 1: -A, 2: M}, bound_M=M)
    return FilteredComplex(cells), f


def klein_height(M: float, A: float) -> FilteredComplex:
    """Height filtration of the Klein bottle model (lower-star of the
    height function)."""
    skeleton, f = klein_height_skeleton(M, A)
    return lower_star(skeleton, f)


def torus_height_skeleton(M: float, A: float) -> tuple[FilteredComplex, VertexFunction]:
    """Vertical torus with heights -M, -A, A, M: the hole opens at -A and
    closes at A; sublevels run point -> circle -> two circles -> torus."""
    if not (0 < A < M):
        raise ValueError("need 0 < A < M")
    cells = [
        Cell(0, 0, 0.0, name="w0"),
        Cell(1, 0, 0.0, name="w1"),
        Cell(2, 0, 0.0, name="w2"),
        Cell(3, 0, 0.0, name="w3"),
        Cell(4, 1, 0.0, boundary=(0, 1), vertices=(0, 1), name="p01"),
        Cell(5, 1, 0.0, vertices=(1,), name="alpha"),
        Cell(6, 1, 0.0, boundary=(1, 2), vertices=(1, 2), name="p12"),
        Cell(7, 1, 0.0, vertices=(2,), name="beta"),
        Cell(8, 1, 0.0, boundary=(2, 3), vertices=(2, 3), name="p23"),
        Cell(9, 2, 0.0, vertices=(0, 1, 2, 3), name="T"),
    ]
    f = VertexFunction({0: -M, 1: -A, 2: A, 3: M}, bound_M=M)
    return FilteredComplex(cells), f


GENERATORS = ("ng_cw", "klein_delta", "torus_delta", "klein_height", "torus_height")


def generate(name: str, *params: float) -> FilteredComplex:
    """Dispatch to a named fixture generator."""
    if name == "ng_cw":
        return ng_cw(int(params[0]))
    if name == "klein_delta":
        return klein_delta()
    if name == "torus_delta":
        return torus_delta()
    if name == "klein_height":
        M, A = params
        return klein_height(M, A)
    if name == "torus_height":
        M, A = params
        skeleton, f = torus_height_skeleton(M, A)
        return lower_star(skeleton, f)
    raise ValueError(f"unknown fixture {name!r}")


# ---------------------------------------------------------------------------
# text formats


def format_value(x: float) -> str:
    if x == math.inf:
        return "inf"
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def write_fcx(fc: FilteredComplex) -> str:
    """FCX v1: one `cell <id> <dim> <value> [<face>...]` line per cell."""
    lines = []
    for c in fc.cells:
        parts = ["cell", str(c.id), str(c.dim), format_value(c.value)]
        parts.extend(str(f) for f in c.boundary)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_fcx(text: str) -> FilteredComplex:
    cells = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "cell" or len(parts) < 4:
            raise ComplexError(f"line {lineno}: expected `cell <id> <dim> <value> ...`")
        try:
            cid, dim = int(parts[1]), int(parts[2])
            value = float(parts[3])
            faces = tuple(int(p) for p in parts[4:])
        except ValueError:
            raise ComplexError(f"line {lineno}: malformed number") from None
        if len(set(faces)) != len(faces):
            raise ComplexError(f"line {lineno}: repeated face id")
        cells.append(Cell(cid, dim, value, boundary=faces))
    fc = FilteredComplex(cells)
    fc.validate()
    return fc


def _simplices_to_complex(valued: dict, vertex_values: Optional[dict] = None) -> FilteredComplex:
    """Close a set of valued simplices and build the filtered complex.

    Missing faces get the minimum value over the declared cofaces that
    contain them; with vertex_values the filtration is the lower-star one
    instead.
    """
    simplices = dict(valued)
    for simplex in sorted(valued, key=len, reverse=True):
        stack = [simplex]
        while stack:
            s = stack.pop()
            if len(s) == 1:
                continue
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                v = simplices[s]
                if face not in simplices or simplices[face] > v:
                    simplices[face] = v
                    stack.append(face)
    cells = []
    ids: dict[tuple, int] = {}
    order = sorted(simplices.items(), key=lambda kv: (kv[1], len(kv[0]), kv[0]))
    for simplex, value in order:
        cid = len(cells)
        ids[simplex] = cid
        bdry = ()
        if len(simplex) > 1:
            bdry = tuple(
                ids[simplex[:i] + simplex[i + 1 :]] for i in range(len(simplex))
            )
        verts = tuple(ids[(v,)] for v in simplex)
        cells.append(
            Cell(cid, len(simplex) - 1, value, boundary=bdry, vertices=verts,
                 name="-".join(str(v) for v in simplex))
        )
    fc = FilteredComplex(cells)
    if vertex_values is not None:
        f = VertexFunction(
            {ids[(v,)]: x for v, x in vertex_values.items() if (v,) in ids},
            bound_M=max((abs(x) for x in vertex_values.values()), default=1.0) + 1.0,
        )
        fc = lower_star(fc, f)
    else:
        fc = sort_filtration(fc.cells)
    fc.validate()
    return fc


def parse_spx(text: str, vertex_values: Optional[dict] = None) -> FilteredComplex:
    """SPX v1: one `<value> <v1> ... <vk>` top simplex per line; in vertexfn
    mode lines hold bare vertex lists and values come from vertex_values."""
    valued: dict[tuple, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if vertex_values is None:
                value = float(parts[0])
                verts = tuple(sorted(int(p) for p in parts[1:]))
            else:
                value = 0.0
                verts = tuple(sorted(int(p) for p in parts))
        except (ValueError, IndexError):
            raise ComplexError(f"line {lineno}: malformed simplex line") from None
        if not verts or len(set(verts)) != len(verts):
            raise ComplexError(f"line {lineno}: bad vertex list")
        if verts not in valued or valued[verts] > value:
            valued[verts] = value
    if not valued:
        raise ComplexError("no simplices in input")
    if vertex_values is not None:
        for verts in valued:
            for v in verts:
                if v not in vertex_values:
                    raise ComplexError("no function value for vertex", v)
    return _simplices_to_complex(valued, vertex_values)


def parse_vertex_values(text: str) -> dict:
    """`<vertex-id> <value>` lines."""
    out: dict[int, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            out[int(parts[0])] = float(parts[1])
        except (ValueError, IndexError):
            raise ComplexError(f"line {lineno}: expected `<vertex-id> <value>`") from None
    return out
