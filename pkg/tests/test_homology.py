
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from homqec import gf2
from homqec.complexes import CubicSpec, SurfaceSpec, build, graph_from_incidence, seam_cochain
from homqec.gf2 import GF2Matrix
from homqec.homology import (betti, betti_numbers, class_minima, homology_basis, is_nontrivial_cycle,
                             min_weight_class_representatives, pairing)

from conftest import all_vectors, octahedron

def surf(topology, L):
    return build(SurfaceSpec.of(topology, L))

def span(vectors):
    """Every element of the GF(2) span of ``vectors``."""
    basis = np.array(vectors, dtype=np.uint8)
    coeffs = all_vectors(len(basis))
    return ((coeffs.astype(np.int64) @ basis) & 1).astype(np.uint8)

def brute_betti(x, k):
    n = x.cell_count[k]
    chains = all_vectors(n)
    dk = x.boundary_map(k).to_dense().astype(np.int64)
    cycles = chains[~((chains @ dk.T) & 1).any(axis=1)] if dk.shape[0] else chains
    up = x.boundary_map(k + 1).to_dense().astype(np.int64)
    if up.shape[1]:
        bounds = {tuple(v) for v in ((all_vectors(up.shape[1]) @ up.T) & 1).tolist()}
    else:
        bounds = {(0,) * n}
    return int(round(np.log2(len(cycles) / len(bounds))))

def brute_class_minima(x, k, conj, cochains=False):
    """Per-class minimum weight by enumerating the whole (co)cycle space."""
    if cochains:
        ker = gf2.kernel_basis(x.boundary_map(k + 1).T)
    else:
        ker = gf2.kernel_basis(x.boundary_map(k))
    elems = span(ker)
    sig = (elems.astype(np.int64) @ np.asarray(conj, dtype=np.int64).T) & 1
    weights = elems.sum(axis=1)
    best = {}
    for s, w in zip(map(tuple, sig.tolist()), weights.tolist()):
        if any(s) and (s not in best or w < best[s]):
            best[s] = w
    return best

@pytest.mark.parametrize("topology,L,b1", [
    ("torus", 4, 2), ("torus", 5, 2), ("torus", 8, 2),
    ("klein", 4, 2), ("klein", 5, 2), ("klein", 8, 2),
    ("rp2", 4, 1), ("rp2", 5, 1),
])
def test_surface_betti(topology, L, b1):
    x = surf(topology, L)
    assert betti(x, 1) == b1
    assert betti(x, 0) == 1
    # Z2 coefficients: every closed surface has b2 = 1, orientable or not
    assert betti(x, 2) == 1

@pytest.mark.parametrize("N", [2, 3])
def test_cubic_betti(N):
    assert betti_numbers(build(CubicSpec(N, N, N))) == [1, 3, 3, 1]

def test_betti_range():
    x = surf("torus", 3)
    with pytest.raises(ValueError):
        betti(x, 3)
    with pytest.raises(ValueError):
        betti(x, -1)

def test_octahedron_is_a_sphere(sphere):
    assert sphere.cell_count == (6, 12, 8)
    assert betti_numbers(sphere) == [1, 0, 1]
    basis = homology_basis(sphere, 1)
    assert basis.betti == 0 and basis.cycle_reps == () and basis.cocycle_reps == ()

@pytest.mark.parametrize("make", [
    lambda: surf("torus", 2), lambda: surf("klein", 2), lambda: surf("rp2", 2),
    octahedron,
])
def test_betti_matches_enumeration(make):
    x = make()
    for k in range(x.dim + 1):
        assert betti(x, k) == brute_betti(x, k)

@pytest.mark.parametrize("L", range(2, 8))
def test_betti_refinement_invariant(L):
    assert betti_numbers(surf("torus", L)) == [1, 2, 1]
    assert betti_numbers(surf("klein", L)) == [1, 2, 1]
    assert betti_numbers(surf("rp2", L)) == [1, 1, 1]

def test_torus_basis_wraps():
    x = surf("torus", 4)
    basis = homology_basis(x, 1)
    assert basis.betti == 2
    for r in basis.cycle_reps:
        assert int(r.sum()) == 4
        assert not x.boundary[1].matvec(r).any()
        assert gf2.solve(x.boundary[2], r) is None
    for s in basis.cocycle_reps:
        assert not x.boundary[2].T.matvec(s).any()
        assert gf2.solve(x.boundary[1].T, s) is None

def test_cubic_sheets():
    x = build(CubicSpec(2, 2, 2))
    basis = homology_basis(x, 2)
    assert basis.betti == 3
    for r in basis.cycle_reps:
        assert int(r.sum()) == 4
        assert not x.boundary[2].matvec(r).any()
        assert is_nontrivial_cycle(x, 2, r)
    assert pairing(x, basis) == GF2Matrix.identity(3)

CASES = [("torus", 4), ("klein", 4), ("klein", 5), ("rp2", 4), ("rp2", 5), ("torus", 6)]

@pytest.mark.parametrize("topology,L", CASES)
def test_pairing_is_identity(topology, L):
    x = surf(topology, L)
    basis = homology_basis(x, 1)
    assert pairing(x, basis) == GF2Matrix.identity(basis.betti)

@pytest.mark.parametrize("N,k", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_cubic_pairing_is_identity(N, k):
    x = build(CubicSpec(N, N, N))
    basis = homology_basis(x, k)
    assert gf2.rank(pairing(x, basis)) == 3
    assert pairing(x, basis) == GF2Matrix.identity(3)

def test_pairing_degree_mismatch():
    x = build(CubicSpec(2, 2, 2))
    with pytest.raises(ValueError):
        pairing(x, homology_basis(x, 1), homology_basis(x, 2))

@pytest.mark.parametrize("topology", ["torus", "klein", "rp2"])
def test_cocycles_vanish_on_boundaries(topology):
    x = surf(topology, 5)
    basis = homology_basis(x, 1)
    d2 = x.boundary[2].to_dense().astype(np.int64)
    assert not ((basis.cocycle_matrix().astype(np.int64) @ d2) & 1).any()

@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["torus", "klein", "rp2"]), st.integers(3, 6), st.integers(0, 2**32 - 1))
def test_pairing_invariant_under_boundaries(topology, L, seed):
    x = surf(topology, L)
    basis = homology_basis(x, 1)
    rng = np.random.default_rng(seed)
    faces = rng.integers(0, 2, size=x.cell_count[2], dtype=np.uint8)
    shift = x.boundary[2].matvec(faces)
    for i, r in enumerate(basis.cycle_reps):
        assert basis.classify_cycle(r ^ shift) == basis.classify_cycle(r)
        assert is_nontrivial_cycle(x, 1, r ^ shift)

def test_is_nontrivial_cycle_examples():
    x = surf("torus", 4)
    face = x.boundary[2].to_dense()[:, 0]
    assert not is_nontrivial_cycle(x, 1, face)
    wrap = np.zeros(x.cell_count[1], dtype=np.uint8)
    for i in range(4):
        wrap[x.cell_index(1, (2 * i + 1, 0))] = 1
    assert is_nontrivial_cycle(x, 1, wrap)
    shifted = np.zeros_like(wrap)
    for i in range(4):
        shifted[x.cell_index(1, (2 * i + 1, 2))] = 1
    assert is_nontrivial_cycle(x, 1, shifted)
    assert not is_nontrivial_cycle(x, 1, wrap ^ shifted)
    with pytest.raises(ValueError):
        is_nontrivial_cycle(x, 1, wrap[:-1])

def test_open_path_is_not_a_cycle():
    x = surf("torus", 4)
    c = np.zeros(x.cell_count[1], dtype=np.uint8)
    c[0] = 1
    assert not is_nontrivial_cycle(x, 1, c)

def test_class_weight_examples():
    w = min_weight_class_representatives(surf("torus", 5), homology_basis(surf("torus", 5), 1))
    assert w[(1, 0)] == 5 and w[(0, 1)] == 5

def seam_minima(x):
    """Minimum cycle weight keyed by (wraps along x, wraps along y) parity."""
    g = graph_from_incidence(x.boundary[1])
    labels = np.array([seam_cochain(x, 0), seam_cochain(x, 1)])
    for lab in labels:
        assert not x.boundary[2].T.matvec(lab).any()
    return {s: w for s, (w, _) in class_minima(g, labels).items()}

@pytest.mark.parametrize("L", [4, 5, 6, 7, 8])
def test_klein_twisted_class(L):
    m = seam_minima(surf("klein", L))
    twisted = min(m[1], m[3])  # odd number of passes through the twisted seam
    assert twisted == (L + 1 if L % 2 == 0 else L)
    assert m[2] == L
    t = seam_minima(surf("torus", L))
    assert t == {1: L, 2: L, 3: 2 * L}

@pytest.mark.parametrize("topology,L", [("torus", 3), ("klein", 3), ("rp2", 3), ("torus", 4),
                                        ("klein", 4), ("rp2", 4)])
def test_class_minima_match_enumeration(topology, L):
    x = surf(topology, L)
    basis = homology_basis(x, 1)
    fast = min_weight_class_representatives(x, basis)
    assert fast == brute_class_minima(x, 1, basis.cocycle_matrix())
    fast_c = min_weight_class_representatives(x, basis, cochains=True)
    assert fast_c == brute_class_minima(x, 1, basis.cycle_matrix(), cochains=True)

def test_cubic_loop_minima_match_enumeration():
    x = build(CubicSpec(2, 2, 2))
    b1 = homology_basis(x, 1)
    assert min_weight_class_representatives(x, b1) == brute_class_minima(x, 1, b1.cocycle_matrix())
    b2 = homology_basis(x, 2)
    assert min_weight_class_representatives(x, b2, cochains=True) == \
        brute_class_minima(x, 2, b2.cycle_matrix(), cochains=True)

def test_non_graph_side_rejected():
    x = build(CubicSpec(2, 2, 2))
    with pytest.raises(ValueError):
        min_weight_class_representatives(x, homology_basis(x, 1), cochains=True)
    with pytest.raises(ValueError):
        min_weight_class_representatives(x, homology_basis(x, 2))

def test_basis_reps_are_class_minimal():
    for topology, L in CASES:
        x = surf(topology, L)
        basis = homology_basis(x, 1)
        w = min_weight_class_representatives(x, basis)
        for i, r in enumerate(basis.cycle_reps):
            sig = tuple(int(i == j) for j in range(basis.betti))
            assert int(r.sum()) == w[sig]
