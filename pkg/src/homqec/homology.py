"""Z2 homology and cohomology of finite chain complexes.

Cycle representatives live on k-cells and are killed by ``boundary[k]``;
cocycle representatives are k-cochains killed by ``boundary[k+1]``
transposed. Cochains are evaluated on chains by the parity of their
shared support, which is the combinatorial form of the intersection
pairing.

Bases returned by :func:`homology_basis` are canonical: cocycle ``i``
pairs to 1 with cycle ``i`` and to 0 with every other cycle. Whenever the
relevant side is graph-like (1-cycles on the primal graph, or
codimension-1 cocycles on the dual graph) the representatives are also of
minimum weight in their class, found by the covering-graph search in
:func:`class_minima`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import gf2
from ._kernels import bfs_all_pairs
from .complexes import CellGraph, ChainComplex, coordinate_sheets, graph_from_incidence
from .gf2 import GF2Matrix, as_bits


@dataclass(frozen=True)
class HomologyBasis:
    k: int
    betti: int
    cycle_reps: tuple[np.ndarray, ...]
    cocycle_reps: tuple[np.ndarray, ...]

    def cycle_matrix(self) -> np.ndarray:
        n = len(self.cycle_reps[0]) if self.cycle_reps else 0
        return np.array(self.cycle_reps, dtype=np.uint8).reshape(self.betti, n)

    def cocycle_matrix(self) -> np.ndarray:
        n = len(self.cocycle_reps[0]) if self.cocycle_reps else 0
        return np.array(self.cocycle_reps, dtype=np.uint8).reshape(self.betti, n)

    def classify_cycle(self, c) -> tuple[int, ...]:
        """Class of a k-cycle as its pairing signature against the cocycle reps."""
        return tuple(int(v) for v in (self.cocycle_matrix().astype(np.int64) @ as_bits(c)) & 1)

    def classify_cocycle(self, c) -> tuple[int, ...]:
        """Class of a k-cocycle as its pairing signature against the cycle reps."""
        return tuple(int(v) for v in (self.cycle_matrix().astype(np.int64) @ as_bits(c)) & 1)


def _check_degree(x: ChainComplex, k: int) -> None:
    if not 0 <= k <= x.dim:
        raise ValueError(f"degree {k} outside 0..{x.dim}")


def betti(x: ChainComplex, k: int) -> int:
    """``dim ker boundary[k] - rank boundary[k+1]``."""
    _check_degree(x, k)
    return (x.cell_count[k] - gf2.rank(x.boundary_map(k))
            - gf2.rank(x.boundary_map(k + 1)))


def betti_numbers(x: ChainComplex) -> list[int]:
    return [betti(x, k) for k in range(x.dim + 1)]


def _quotient_reps(kernel_of: GF2Matrix, image_of: GF2Matrix, length: int) -> list[np.ndarray]:
    """Kernel vectors of ``kernel_of`` independent modulo the column space of ``image_of``."""
    zs = gf2.kernel_basis(kernel_of)
    bs = gf2.image_basis(image_of)
    picked = gf2.extend_basis(bs, zs, length)
    return [zs[i] for i in picked]


def raw_cycles(x: ChainComplex, k: int) -> list[np.ndarray]:
    return _quotient_reps(x.boundary_map(k), x.boundary_map(k + 1), x.cell_count[k])


def raw_cocycles(x: ChainComplex, k: int) -> list[np.ndarray]:
    return _quotient_reps(x.boundary_map(k + 1).T, x.boundary_map(k).T, x.cell_count[k])


def _as_graph(inc: GF2Matrix) -> Optional[CellGraph]:
    if inc.rows == 0 or inc.cols == 0:
        return None
    if not np.all(inc.col_weights() == 2):
        return None
    return graph_from_incidence(inc)


def primal_graph(x: ChainComplex, k: int) -> Optional[CellGraph]:
    """Graph carrying k-cycles as closed walks (only exists for k = 1)."""
    return _as_graph(x.boundary[1]) if k == 1 and x.dim >= 1 else None


def dual_graph(x: ChainComplex, k: int) -> Optional[CellGraph]:
    """Graph carrying k-cocycles as closed dual walks (only exists for k = dim - 1)."""
    if k != x.dim - 1 or k < 0:
        return None
    return _as_graph(x.boundary[x.dim].T)


def class_minima(graph: CellGraph, labels: np.ndarray) -> dict[int, tuple[int, np.ndarray]]:
    """Minimum-weight closed chain in every nonzero class, keyed by signature bitmask.

    ``labels`` has shape ``(b, n_links)``: row ``i`` is the functional
    whose pairing with a chain gives bit ``i`` of its class signature.

    A connected cycle is a closed walk, so its class is reached by a walk
    from ``(v, 0)`` to ``(v, s)`` in the ``2**b``-sheeted cover where link
    ``e`` shifts the sheet by its label. The shortest such walk over all
    ``v`` bounds the class minimum over connected cycles exactly; a
    min-plus closure over class sums then accounts for cycles made of
    several disjoint components.
    """
    b = labels.shape[0]
    nsig = 1 << b
    lab = np.zeros(graph.n_links, dtype=np.int64)
    for i in range(b):
        lab |= labels[i].astype(np.int64) << i
    sheets = np.arange(nsig, dtype=np.int64)
    la = (graph.link_a.astype(np.int64)[:, None] * nsig + sheets[None, :]).ravel()
    lb = (graph.link_b.astype(np.int64)[:, None] * nsig + (sheets[None, :] ^ lab[:, None])).ravel()
    n_cover = graph.n_nodes * nsig
    dist, step = bfs_all_pairs(n_cover, la, lb)

    best: dict[int, tuple[int, np.ndarray]] = {}
    for v in range(graph.n_nodes):
        root = v * nsig
        for s in range(1, nsig):
            node = v * nsig + s
            if dist[root, node] < 0:
                continue
            chain = np.zeros(graph.n_links, dtype=np.uint8)
            cur = node
            while cur != root:
                e = int(step[root, cur])
                chain[e // nsig] ^= 1
                a, bb = int(la[e]), int(lb[e])
                cur = bb if a == cur else a
            w = int(chain.sum())
            if s not in best or w < best[s][0]:
                best[s] = (w, chain)

    changed = True
    while changed:
        changed = False
        for s1 in list(best):
            for s2 in list(best):
                s = s1 ^ s2
                if s == 0 or s1 >= s2:
                    continue
                w = best[s1][0] + best[s2][0]
                if s not in best or w < best[s][0]:
                    best[s] = (w, best[s1][1] ^ best[s2][1])
                    changed = True
    return best


def _greedy_basis(minima: dict[int, tuple[int, np.ndarray]], b: int) -> list[int]:
    """Signatures of a minimum-weight set of ``b`` independent classes."""
    order = sorted(minima, key=lambda s: (minima[s][0], s))
    chosen: list[int] = []
    span = {0}
    for s in order:
        if s in span:
            continue
        chosen.append(s)
        span |= {t ^ s for t in span}
        if len(chosen) == b:
            break
    return chosen


def _match_signatures(candidates: list[np.ndarray], conj: np.ndarray) -> list[np.ndarray]:
    """For each unit signature e_i, a combination of candidates pairing to e_i with ``conj``."""
    b = conj.shape[0]
    cand = np.array(candidates, dtype=np.uint8)
    sig = (conj.astype(np.int64) @ cand.T.astype(np.int64)) & 1  # b x n_cand
    out = []
    weights = cand.sum(axis=1)
    for i in range(b):
        target = np.zeros(b, dtype=np.uint8)
        target[i] = 1
        singles = [j for j in range(len(candidates)) if np.array_equal(sig[:, j], target)]
        if singles:
            j = min(singles, key=lambda j: (weights[j], j))
            out.append(cand[j].copy())
            continue
        combo = gf2.solve(GF2Matrix.from_dense(sig), target)
        if combo is None:
            raise ArithmeticError("pairing is degenerate; cannot canonicalise the basis")
        out.append(((combo.astype(np.int64) @ cand.astype(np.int64)) & 1).astype(np.uint8))
    return out


def homology_basis(x: ChainComplex, k: int) -> HomologyBasis:
    """Canonical cycle and cocycle representatives in degree ``k``."""
    _check_degree(x, k)
    b = betti(x, k)
    if b == 0:
        return HomologyBasis(k, 0, (), ())
    cyc = raw_cycles(x, k)
    coc = raw_cocycles(x, k)
    pg = primal_graph(x, k)
    dg = dual_graph(x, k)

    if pg is not None:
        minima = class_minima(pg, np.array(coc, dtype=np.uint8))
        cycles = [minima[s][1] for s in _greedy_basis(minima, b)]
        conj = np.array(cycles, dtype=np.uint8)
        if dg is not None:
            dmin = class_minima(dg, conj)
            cocycles = [dmin[1 << i][1] for i in range(b)]
        else:
            cands = coordinate_sheets(x, k, cochain=True) + coc
            cocycles = _match_signatures(cands, conj)
    elif dg is not None:
        minima = class_minima(dg, np.array(cyc, dtype=np.uint8))
        cocycles = [minima[s][1] for s in _greedy_basis(minima, b)]
        conj = np.array(cocycles, dtype=np.uint8)
        cands = coordinate_sheets(x, k, cochain=False) + cyc
        cycles = _match_signatures(cands, conj)
    else:
        cycles = cyc
        cocycles = _match_signatures(coc, np.array(cycles, dtype=np.uint8))

    return HomologyBasis(k, b, tuple(as_bits(c) for c in cycles),
                         tuple(as_bits(c) for c in cocycles))


def pairing(x: ChainComplex, basis_k: HomologyBasis,
            basis_codim: Optional[HomologyBasis] = None) -> GF2Matrix:
    """``entries[i, j]`` = parity of shared support of cocycle i and cycle j."""
    other = basis_k if basis_codim is None else basis_codim
    if other.k != basis_k.k:
        raise ValueError(f"cannot pair degree-{other.k} cochains with degree-{basis_k.k} chains")
    if basis_k.betti == 0 or other.betti == 0:
        return GF2Matrix.zeros(other.betti, basis_k.betti)
    p = other.cocycle_matrix().astype(np.int64) @ basis_k.cycle_matrix().T.astype(np.int64)
    return GF2Matrix.from_dense(p & 1)


def is_nontrivial_cycle(x: ChainComplex, k: int, c) -> bool:
    """True iff ``c`` is a k-cycle that is not a boundary."""
    _check_degree(x, k)
    c = as_bits(c)
    if c.shape != (x.cell_count[k],):
        raise ValueError(f"chain has length {c.shape[0]}, expected {x.cell_count[k]}")
    if x.boundary_map(k).matvec(c).any():
        return False
    return gf2.solve(x.boundary_map(k + 1), c) is None


def min_weight_class_representatives(x: ChainComplex, basis: HomologyBasis,
                                     cochains: bool = False) -> dict[tuple[int, ...], int]:
    """Minimum weight of every nonzero 1-cycle class (or codimension-1 cocycle class).

    Keys are pairing signatures against the conjugate representatives of
    ``basis``. Raises ``ValueError`` when the requested side is not
    graph-like, since then no exact search is available.
    """
    if cochains:
        g = dual_graph(x, basis.k)
        conj = basis.cycle_matrix()
    else:
        g = primal_graph(x, basis.k)
        conj = basis.cocycle_matrix()
    if g is None:
        side = "cocycles" if cochains else "cycles"
        raise ValueError(f"degree-{basis.k} {side} of a {x.dim}-complex are not graph-like")
    if basis.betti == 0:
        return {}
    minima = class_minima(g, conj)
    b = basis.betti
    return {tuple((s >> i) & 1 for i in range(b)): w for s, (w, _) in sorted(minima.items())}


__all__ = [
    "HomologyBasis",
    "betti",
    "betti_numbers",
    "raw_cycles",
    "raw_cocycles",
    "primal_graph",
    "dual_graph",
    "class_minima",
    "homology_basis",
    "pairing",
    "is_nontrivial_cycle",
    "min_weight_class_representatives",
]
