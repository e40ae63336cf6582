"""Cellular Z2 chain complexes on identified square and cubic lattices.

Cells are addressed in *doubled* coordinates: a cell of the unit grid with
base vertex ``(i, j, ...)`` and orientation bits ``(o_x, o_y, ...)`` sits at
``(2i + o_x, 2j + o_y, ...)``. The number of odd coordinates is the cell
dimension, and the boundary of a cell is the set of its neighbours at
``+-1`` along each odd axis. Identifications (periodic wrap, the Klein
reflection, the antipodal ℝP² gluing) are applied by canonicalising
doubled coordinates, so twisted seams come out of the same code path as
the plain torus.

Cell ordering inside each dimension: by base vertex, row-major with x
fastest, then orientation with x-pointing cells first. For the 2-D lattices
that puts the horizontal edge at ``(i, j)`` right before the vertical one.

Klein convention: crossing the x-seam maps vertex row ``j`` to
``ly - 1 - j`` (doubled ``Y -> 2*ly - 2 - Y``); the y-direction is plain
periodic. With this choice no vertex row is fixed by the reflection when
``ly`` is even, which is what makes the shortest seam-crossing primal loop
one edge longer than on the torus.

ℝP²: the closed ``lx x ly`` square with boundary points glued to their
antipodes, ``(x, 0) ~ (lx - x, ly)`` and ``(0, y) ~ (lx, ly - y)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .gf2 import GF2Matrix

TOPOLOGIES = ("torus", "klein", "rp2", "torus3")


@dataclass(frozen=True)
class SurfaceSpec:
    """Square lattice with opposite sides identified.

    ``(twist_x, twist_y)``: ``(False, False)`` torus, one flag set Klein
    bottle (the flagged seam reverses), both set ℝP².
    """

    lx: int
    ly: int
    twist_x: bool = False
    twist_y: bool = False

    @property
    def topology(self) -> str:
        if self.twist_x and self.twist_y:
            return "rp2"
        if self.twist_x or self.twist_y:
            return "klein"
        return "torus"

    @classmethod
    def of(cls, topology: str, lx: int, ly: Optional[int] = None) -> "SurfaceSpec":
        ly = lx if ly is None else ly
        twists = {"torus": (False, False), "klein": (True, False), "rp2": (True, True)}
        if topology not in twists:
            raise ValueError(f"unknown surface topology {topology!r}")
        return cls(lx, ly, *twists[topology])


@dataclass(frozen=True)
class CubicSpec:
    """Periodic ``nx x ny x nz`` cubic lattice (the 3-torus)."""

    nx: int
    ny: int
    nz: int

    @property
    def topology(self) -> str:
        return "torus3"


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """A finite Z2 chain complex.

    ``boundary[k]`` maps k-chains to (k-1)-chains and has shape
    ``cell_count[k-1] x cell_count[k]``; ``boundary[0]`` is unused (None).
    ``geometry[k]`` holds the doubled coordinates of every k-cell when the
    complex comes from a lattice builder, otherwise it is empty.
    """

    cell_count: tuple[int, ...]
    boundary: tuple[Optional[GF2Matrix], ...]
    geometry: tuple[np.ndarray, ...] = ()
    spec: object = None
    name: str = "complex"
    _index: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.cell_count) - 1

    def boundary_map(self, k: int) -> GF2Matrix:
        """``boundary[k]`` with the zero maps at both ends of the complex filled in."""
        if k <= 0:
            return GF2Matrix.zeros(0, self.cell_count[0])
        if k > self.dim:
            return GF2Matrix.zeros(self.cell_count[self.dim], 0)
        return self.boundary[k]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.cell_count))

    def cell_index(self, k: int, coord) -> int:
        """Index of the k-cell at the given doubled coordinate (after canonicalisation)."""
        return self._index[k][self._canon(tuple(int(c) for c in coord))]

    def cell_coords(self, k: int, idx) -> list[tuple[int, ...]]:
        g = self.geometry[k]
        return [tuple(int(c) for c in g[i]) for i in np.atleast_1d(idx)]

    @property
    def _canon(self) -> Callable:
        return self._index["canon"]

    @classmethod
    def from_boundaries(cls, boundaries: list, name: str = "complex") -> "ChainComplex":
        """Wrap explicit boundary matrices ``[d1, d2, ...]`` (dense or GF2Matrix)."""
        mats = [m if isinstance(m, GF2Matrix) else GF2Matrix.from_dense(m) for m in boundaries]
        if not mats:
            raise ValueError("need at least one boundary matrix")
        counts = [mats[0].rows] + [m.cols for m in mats]
        for k, m in enumerate(mats, start=1):
            if m.rows != counts[k - 1]:
                raise ValueError(f"boundary[{k}] has {m.rows} rows, expected {counts[k - 1]}")
        return cls(tuple(counts), (None, *mats), name=name)


def _assemble(points: dict[int, list[tuple[int, ...]]], canon: Callable,
              ndim: int, spec, name: str) -> ChainComplex:
    def order_key(p):
        base = tuple(c // 2 for c in reversed(p))
        orient = tuple(-(c % 2) for c in p)
        return (base, orient)

    geometry = []
    index: dict = {"canon": canon}
    for k in range(ndim + 1):
        cells = sorted(set(points[k]), key=order_key)
        geometry.append(np.array(cells, dtype=np.int64).reshape(len(cells), ndim))
        index[k] = {c: i for i, c in enumerate(cells)}

    boundaries: list[Optional[GF2Matrix]] = [None]
    for k in range(1, ndim + 1):
        rows = len(geometry[k - 1])
        cols = len(geometry[k])
        dense = np.zeros((rows, cols), dtype=np.uint8)
        for col, cell in enumerate(geometry[k]):
            for axis in range(ndim):
                if cell[axis] % 2 == 0:
                    continue
                for delta in (-1, 1):
                    nb = list(cell)
                    nb[axis] += delta
                    dense[index[k - 1][canon(tuple(nb))], col] ^= 1
        boundaries.append(GF2Matrix.from_dense(dense))
    counts = tuple(len(g) for g in geometry)
    return ChainComplex(counts, tuple(boundaries), tuple(geometry), spec, name, index)


def _periodic_canon(sizes: tuple[int, ...], twist_x: bool, twist_y: bool) -> Callable:
    periods = tuple(2 * s for s in sizes)

    def canon(p: tuple[int, ...]) -> tuple[int, ...]:
        q = list(p)
        if len(q) == 2:
            X, Y = q
            # reflections commute with the other axis' wrap, so wrap one axis at a time
            kx, X = divmod(X, periods[0])
            if twist_x and kx % 2:
                Y = periods[1] - 2 - Y
            ky, Y = divmod(Y, periods[1])
            if twist_y and ky % 2:
                X = (periods[0] - 2 - X) % periods[0]
            return (X, Y % periods[1])
        return tuple(c % P for c, P in zip(q, periods))

    return canon


def _rp2_canon(lx: int, ly: int) -> Callable:
    X2, Y2 = 2 * lx, 2 * ly

    def canon(p: tuple[int, ...]) -> tuple[int, ...]:
        X, Y = p
        if X in (0, X2) or Y in (0, Y2):
            a = (X2 - X, Y2 - Y)
            # representative with the smaller (Y, X) in row-major order
            if (a[1], a[0]) < (Y, X):
                return a
        return (X, Y)

    return canon


def build_surface(spec: SurfaceSpec) -> ChainComplex:
    """2-complex of an identified ``lx x ly`` square lattice."""
    if spec.lx < 2 or spec.ly < 2:
        raise ValueError(f"lattice sides must be >= 2, got {spec.lx}x{spec.ly}")
    if spec.twist_x and spec.twist_y:
        canon = _rp2_canon(spec.lx, spec.ly)
        xs, ys = range(2 * spec.lx + 1), range(2 * spec.ly + 1)
    else:
        canon = _periodic_canon((spec.lx, spec.ly), spec.twist_x, spec.twist_y)
        xs, ys = range(2 * spec.lx), range(2 * spec.ly)
    points: dict[int, list] = {0: [], 1: [], 2: []}
    for X in xs:
        for Y in ys:
            points[X % 2 + Y % 2].append(canon((X, Y)))
    name = f"{spec.topology}-{spec.lx}x{spec.ly}"
    return _assemble(points, canon, 2, spec, name)


def build_cubic(spec: CubicSpec) -> ChainComplex:
    """3-complex of the periodic cubic lattice."""
    sizes = (spec.nx, spec.ny, spec.nz)
    if min(sizes) < 2:
        raise ValueError(f"lattice sides must be >= 2, got {sizes}")
    canon = _periodic_canon(sizes, False, False)
    points: dict[int, list] = {k: [] for k in range(4)}
    for p in itertools.product(*(range(2 * s) for s in sizes)):
        points[sum(c % 2 for c in p)].append(p)
    name = f"torus3-{spec.nx}x{spec.ny}x{spec.nz}"
    return _assemble(points, canon, 3, spec, name)


def build(spec) -> ChainComplex:
    if isinstance(spec, SurfaceSpec):
        return build_surface(spec)
    if isinstance(spec, CubicSpec):
        return build_cubic(spec)
    raise TypeError(f"no builder for {type(spec).__name__}")


def coboundary(x: ChainComplex, k: int) -> GF2Matrix:
    """``delta^k : C^{k-1} -> C^k``, the transpose of ``boundary[k]``."""
    if not 1 <= k <= x.dim:
        raise ValueError(f"coboundary index {k} outside 1..{x.dim}")
    return x.boundary[k].T


@dataclass(frozen=True)
class CellGraph:
    """Unit-weight multigraph whose links are qubit-carrying cells.

    ``link_a[e]``, ``link_b[e]`` are the endpoints of link ``e``; the link
    index is the index of the cell it stands for.
    """

    n_nodes: int
    link_a: np.ndarray
    link_b: np.ndarray

    @property
    def n_links(self) -> int:
        return len(self.link_a)

    def degrees(self) -> np.ndarray:
        return np.bincount(np.concatenate([self.link_a, self.link_b]), minlength=self.n_nodes)


def graph_from_incidence(inc: GF2Matrix) -> CellGraph:
    """Graph whose nodes are the rows and links the columns of a 2-per-column incidence."""
    dense = inc.to_dense()
    weights = dense.sum(axis=0)
    if dense.shape[1] and not np.all(weights == 2):
        bad = int(np.flatnonzero(weights != 2)[0])
        raise ValueError(f"column {bad} has {int(weights[bad])} ones; not a graph incidence")
    rows = np.argsort(dense.T, axis=1, kind="stable")[:, -2:] if dense.shape[1] else np.zeros((0, 2), int)
    ends = np.sort(rows, axis=1)
    return CellGraph(dense.shape[0], ends[:, 0].astype(np.int32), ends[:, 1].astype(np.int32))


def adjacency_graph(x: ChainComplex, dual: bool = False) -> CellGraph:
    """Primal graph (vertices, edges) or dual graph (top cells, codimension-1 cells)."""
    if x.dim not in (2, 3):
        raise ValueError(f"adjacency graphs are defined for 2- and 3-complexes, not dim {x.dim}")
    if dual:
        return graph_from_incidence(x.boundary[x.dim].T)
    return graph_from_incidence(x.boundary[1])


def seam_cochain(x: ChainComplex, axis: int = 0) -> np.ndarray:
    """1-cochain marking the edges that cross the periodic seam along ``axis``.

    Pairing a 1-cycle with it counts (mod 2) how many times the cycle wraps
    around that direction. Lattice complexes only.
    """
    spec = x.spec
    if isinstance(spec, SurfaceSpec):
        if spec.twist_x and spec.twist_y:
            raise ValueError("ℝP² has no periodic seam")
        size = (spec.lx, spec.ly)[axis]
    elif isinstance(spec, CubicSpec):
        size = (spec.nx, spec.ny, spec.nz)[axis]
    else:
        raise ValueError("seam cochains need a lattice complex")
    g = x.geometry[1]
    mask = (g[:, axis] == 2 * size - 1)
    return mask.astype(np.uint8)


def coordinate_sheets(x: ChainComplex, k: int, cochain: bool) -> list[np.ndarray]:
    """Flat coordinate sheets on the cubic lattice, one per axis.

    ``cochain=False, k=2``: faces lying in the plane ``axis = 0`` (closed
    2-cycles). ``cochain=True, k=1``: edges pointing along ``axis`` with
    base coordinate 0 on that axis (closed 1-cocycles, the dual sheet).
    Each sheet has ``N_b * N_c`` cells.
    """
    if not isinstance(x.spec, CubicSpec):
        return []
    g = x.geometry[k]
    sheets = []
    for axis in range(3):
        if k == 2 and not cochain:
            mask = (g[:, axis] == 0) & (np.sum(g % 2, axis=1) == 2)
        elif k == 1 and cochain:
            mask = (g[:, axis] == 1)
        else:
            return []
        sheets.append(mask.astype(np.uint8))
    return sheets


def dump_complex(x: ChainComplex) -> str:
    """Plain-text listing of every boundary matrix.

    Format::

        % homqec chain complex <name>
        dim <n>
        cells <c0> <c1> ... <cn>
        boundary <k> <rows> <cols> <nnz>
        <row> <col>          (one line per nonzero, 0-based, column-major order)
        ...
    """
    lines = [f"% homqec chain complex {x.name}", f"dim {x.dim}",
             "cells " + " ".join(str(c) for c in x.cell_count)]
    for k in range(1, x.dim + 1):
        dense = x.boundary[k].to_dense()
        cols, rows = np.nonzero(dense.T)
        lines.append(f"boundary {k} {dense.shape[0]} {dense.shape[1]} {len(rows)}")
        lines.extend(f"{r} {c}" for r, c in zip(rows, cols))
    return "\n".join(lines) + "\n"


__all__ = [
    "TOPOLOGIES",
    "SurfaceSpec",
    "CubicSpec",
    "ChainComplex",
    "CellGraph",
    "build",
    "build_surface",
    "build_cubic",
    "coboundary",
    "adjacency_graph",
    "graph_from_incidence",
    "seam_cochain",
    "coordinate_sheets",
    "dump_complex",
]
