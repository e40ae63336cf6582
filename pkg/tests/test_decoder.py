import itertools

import numpy as np
import pytest

from homqec.codes import build_code
from homqec.complexes import CubicSpec, SurfaceSpec, build
from homqec.matching import (Decoder, DecodingError, build_matching_graph, judge, match_defects,
                             mwpm_decode)
from homqec.noise import (NoiseModel, PauliFrame, detection_events, extract_syndrome, sample_error,
                          sample_history)

from conftest import brute_min_pairing


def code_of(topology, L):
    return build_code(build(SurfaceSpec.of(topology, L)), 1)


def test_noise_model_validation():
    with pytest.raises(ValueError):
        NoiseModel("capacity", 1.5)
    with pytest.raises(ValueError):
        NoiseModel("capacity", 0.1, rounds=3)
    with pytest.raises(ValueError):
        NoiseModel("depolarizing", 0.1)
    with pytest.raises(ValueError):
        NoiseModel("phenomenological", 0.1, rounds=0)


def test_sample_error_extremes():
    code = code_of("torus", 4)
    rng = np.random.default_rng(0)
    assert sample_error(code, NoiseModel("capacity", 0.0), rng).weight() == 0
    full = sample_error(code, NoiseModel("capacity", 1.0), rng, side="z")
    assert full.x_support.all() and not full.z_support.any()
    zside = sample_error(code, NoiseModel("capacity", 1.0), rng, side="x")
    assert zside.z_support.all() and not zside.x_support.any()


def test_sample_error_binomial():
    code = code_of("torus", 4)
    rng = np.random.default_rng(1)
    w = np.array([sample_error(code, NoiseModel("capacity", 0.1), rng).weight() for _ in range(5000)])
    sd = np.sqrt(32 * 0.1 * 0.9 / 5000)
    assert abs(w.mean() - 3.2) <= 3 * sd


def test_frame_composition():
    a = PauliFrame(np.array([1, 0, 1], np.uint8), np.array([0, 1, 1], np.uint8))
    b = PauliFrame(np.array([1, 1, 0], np.uint8), np.array([0, 1, 0], np.uint8))
    c = a ^ b
    assert c.x_support.tolist() == [0, 1, 1] and c.z_support.tolist() == [0, 0, 1]
    assert a.weight() == 3


def test_extract_syndrome():
    code = code_of("torus", 4)
    x = code.complex
    s = extract_syndrome(code, PauliFrame.empty(code.n))
    assert len(s.z_check_defects) == 0 and len(s.x_check_defects) == 0
    e = x.cell_index(1, (3, 2))
    s = extract_syndrome(code, PauliFrame.on_side("z", np.eye(code.n, dtype=np.uint8)[e]))
    assert set(s.z_check_defects) == {x.cell_index(0, (2, 2)), x.cell_index(0, (4, 2))}
    # an X stabilizer applied as an X error is invisible to the Z checks, and vice versa
    for row in code.h_x.to_dense():
        assert len(extract_syndrome(code, PauliFrame.on_side("z", row)).z_check_defects) == 0
    for row in code.h_z.to_dense():
        assert len(extract_syndrome(code, PauliFrame.on_side("x", row)).x_check_defects) == 0


def test_matching_graph_distances():
    code = code_of("torus", 4)
    g = build_matching_graph(code, "z")
    x = code.complex
    assert g.distance(x.cell_index(0, (0, 0)), x.cell_index(0, (0, 4))) == 2
    assert g.distance(x.cell_index(0, (0, 0)), x.cell_index(0, (6, 6))) == 2
    gx = build_matching_graph(code, "x")
    assert gx.n_checks == 16


def test_klein_seam_distance():
    code = code_of("klein", 4)
    x = code.complex
    g = build_matching_graph(code, "z")
    # crossing the twisted seam: (3, 0) is adjacent to (0, 3)
    assert g.distance(x.cell_index(0, (6, 0)), x.cell_index(0, (0, 6))) == 1
    assert g.distance(x.cell_index(0, (6, 0)), x.cell_index(0, (0, 0))) == 2


def test_space_time_graph():
    code = code_of("torus", 3)
    g = build_matching_graph(code, "z", NoiseModel("phenomenological", 0.01, 3))
    assert g.n_nodes == 27
    assert g.distance((0, 0), (0, 2)) == 2
    assert g.distance((0, 0), (1, 1)) == 2
    with pytest.raises(ValueError):
        build_matching_graph(code, "z", NoiseModel("phenomenological", 0.01, 1))


def test_unsupported_side():
    x = build(CubicSpec(3, 3, 3))
    with pytest.raises(ValueError):
        build_matching_graph(build_code(x, 1), "x")
    with pytest.raises(ValueError):
        build_matching_graph(build_code(x, 2), "z")
    build_matching_graph(build_code(x, 1), "z")
    build_matching_graph(build_code(x, 2), "x")


def test_decode_basic():
    code = code_of("torus", 4)
    g = build_matching_graph(code, "z")
    assert not mwpm_decode(g, []).any()
    x = code.complex
    a, b = x.cell_index(0, (0, 0)), x.cell_index(0, (4, 0))
    corr = mwpm_decode(g, [a, b])
    assert corr.sum() == 2
    assert set(np.flatnonzero(code.h_z.matvec(corr))) == {a, b}
    with pytest.raises(DecodingError):
        mwpm_decode(g, [a])


def test_four_defects_optimal():
    code = code_of("klein", 6)
    g = build_matching_graph(code, "z")
    rng = np.random.default_rng(4)
    for _ in range(100):
        d = rng.choice(g.n_checks, 4, replace=False)
        _, total = match_defects(g, d)
        options = [g.distance(d[0], d[1]) + g.distance(d[2], d[3]),
                   g.distance(d[0], d[2]) + g.distance(d[1], d[3]),
                   g.distance(d[0], d[3]) + g.distance(d[1], d[2])]
        assert total == min(options)
        corr = mwpm_decode(g, d)
        assert set(np.flatnonzero(code.h_z.matvec(corr))) == set(d.tolist())
        assert corr.sum() <= total


@pytest.mark.parametrize("topology,side", [("torus", "z"), ("klein", "x"), ("rp2", "z"), ("rp2", "x")])
def test_random_syndromes_reproduced(topology, side):
    code = code_of(topology, 6)
    g = build_matching_graph(code, side)
    h = code.h_z if side == "z" else code.h_x
    rng = np.random.default_rng(8)
    for _ in range(100):
        err = (rng.random(code.n) < 0.1).astype(np.uint8)
        syn = h.matvec(err)
        corr = mwpm_decode(g, np.flatnonzero(syn))
        assert np.array_equal(h.matvec(corr), syn)
        n = int(syn.sum())
        if 0 < n <= 8:
            _, total = match_defects(g, np.flatnonzero(syn))
            assert total == brute_min_pairing(g.cost_matrix(np.flatnonzero(syn)))


def test_judge():
    code = code_of("torus", 4)
    err = np.zeros(code.n, dtype=np.uint8)
    err[[0, 5]] = 1
    assert judge(code, "z", err, err).success
    stab = code.h_x.to_dense()[3]
    out = judge(code, "z", stab, np.zeros(code.n, dtype=np.uint8))
    assert out.success
    out = judge(code, "z", code.logical_x[0], np.zeros(code.n, dtype=np.uint8))
    assert out.failed.tolist() == [True, False]
    out = judge(code, "x", code.logical_z[1], np.zeros(code.n, dtype=np.uint8))
    assert out.failed.tolist() == [False, True]
    with pytest.raises(DecodingError):
        judge(code, "z", err, np.zeros(code.n, dtype=np.uint8))


def test_detection_events():
    assert detection_events(np.zeros((4, 9), dtype=np.uint8)).shape == (0, 2)
    m = np.zeros((4, 9), dtype=np.uint8)
    m[1, 5] = 1  # readout flip at round 1
    assert detection_events(m).tolist() == [[5, 1], [5, 2]]


def test_persistent_data_error_events():
    code = code_of("torus", 3)
    x = code.complex
    h = code.h_z.to_dense().astype(int)
    e = np.zeros(code.n, dtype=np.uint8)
    e[x.cell_index(1, (1, 2))] = 1  # edge between vertices (0,1) and (1,1)
    R, t = 3, 1
    measured = np.zeros((R, 9), dtype=np.uint8)
    for r in range(t, R):
        measured[r] = (h @ e) & 1
    ev = detection_events(measured)
    assert sorted(map(tuple, ev.tolist())) == sorted([(x.cell_index(0, (0, 2)), 1), (x.cell_index(0, (2, 2)), 1)])


def test_event_parity_even():
    code = code_of("klein", 5)
    rng = np.random.default_rng(3)
    model = NoiseModel("phenomenological", 0.05, 5)
    for _ in range(200):
        hist = sample_history(code, model, rng)
        assert len(detection_events(hist.measured)) % 2 == 0


def test_final_round_is_perfect():
    code = code_of("torus", 4)
    rng = np.random.default_rng(5)
    h = code.h_z.to_dense().astype(int)
    for _ in range(50):
        hist = sample_history(code, NoiseModel("phenomenological", 0.2, 4), rng)
        assert np.array_equal(hist.measured[-1], (h @ hist.accumulated) & 1)


@pytest.mark.parametrize("topology,L", [("torus", 4), ("klein", 4), ("torus", 5), ("klein", 5)])
@pytest.mark.parametrize("side", ["z", "x"])
def test_half_distance_exhaustive(topology, L, side):
    from homqec.codes import distances
    code = code_of(topology, L)
    p = distances(code)
    d = p.d_x if side == "z" else p.d_z
    dec = Decoder(code, side, NoiseModel())
    t = (d - 1) // 2
    for w in range(1, t + 1):
        for support in itertools.combinations(range(code.n), w):
            err = np.zeros(code.n, dtype=np.uint8)
            err[list(support)] = 1
            assert not dec.failures(err ^ dec.decode_support(err)).any(), support


def test_trial_deterministic():
    code = code_of("klein", 5)
    for kind, rounds in (("capacity", 1), ("phenomenological", 5)):
        dec = Decoder(code, "z", NoiseModel(kind, 0.0, rounds))
        a = [dec.trial(0.08, np.random.default_rng(i)).tolist() for i in range(30)]
        b = [dec.trial(0.08, np.random.default_rng(i)).tolist() for i in range(30)]
        assert a == b
