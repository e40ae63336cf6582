import itertools

import numpy as np
import pytest

from homqec.complexes import ChainComplex


def octahedron() -> ChainComplex:
    """Boundary of the octahedron: a 2-sphere with 6 vertices, 12 edges, 8 triangles."""
    verts = [(a, s) for a in range(3) for s in (1, -1)]
    vid = {v: i for i, v in enumerate(verts)}
    edges = [(u, v) for u, v in itertools.combinations(verts, 2) if u[0] != v[0]]
    eid = {frozenset(e): i for i, e in enumerate(edges)}
    faces = list(itertools.product(*[[(a, 1), (a, -1)] for a in range(3)]))
    d1 = np.zeros((len(verts), len(edges)), dtype=np.uint8)
    for j, (u, v) in enumerate(edges):
        d1[vid[u], j] = d1[vid[v], j] = 1
    d2 = np.zeros((len(edges), len(faces)), dtype=np.uint8)
    for j, f in enumerate(faces):
        for u, v in itertools.combinations(f, 2):
            d2[eid[frozenset((u, v))], j] = 1
    return ChainComplex.from_boundaries([d1, d2], name="octahedron")


def all_vectors(n: int) -> np.ndarray:
    """Every length-``n`` bit vector, one per row."""
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def brute_min_pairing(cost: np.ndarray) -> int:
    """Minimum perfect-matching weight by DP over subsets."""
    n = len(cost)
    memo = {0: 0}

    def go(mask):
        if mask in memo:
            return memo[mask]
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        best = None
        m = rest
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            w = int(cost[i, j]) + go(rest & ~(1 << j))
            best = w if best is None or w < best else best
        memo[mask] = best
        return best

    return go((1 << n) - 1)


@pytest.fixture
def sphere():
    return octahedron()
