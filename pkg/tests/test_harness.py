import csv
import json
import math

import pytest

from homqec.complexes import CubicSpec, SurfaceSpec
from homqec.harness import CSV_COLUMNS, ExperimentConfig, compare, render, run_point, sweep


def cfg(topology="torus", L=4, **kw):
    kw.setdefault("trials", 300)
    kw.setdefault("master_seed", 11)
    return ExperimentConfig(SurfaceSpec.of(topology, L), **kw)


def test_config_validation():
    with pytest.raises(ValueError):
        cfg(p_values=(0.1, 1.2))
    with pytest.raises(ValueError):
        cfg(trials=0)
    with pytest.raises(ValueError):
        cfg(side="y")
    with pytest.raises(ValueError):
        cfg(noise="capacity", rounds=3)
    with pytest.raises(ValueError):
        cfg(master_seed=-1)


def test_zero_noise():
    r = run_point(cfg(), 0.0)
    assert r.failures_any == 0 and r.logical_rate == 0.0 and r.sigma == 0.0


def test_sigma_formula():
    r = run_point(cfg(), 0.1)
    rate = r.failures_any / r.trials
    assert r.logical_rate == rate
    assert r.sigma == math.sqrt(rate * (1 - rate) / r.trials)
    assert 0 <= r.logical_rate <= 1
    assert r.failures_any <= sum(r.failures_per_logical)
    assert r.failures_any >= max(r.failures_per_logical)


def test_sub_physical_rate():
    r = run_point(cfg(L=5, trials=5000), 0.01)
    assert r.logical_rate < 0.01


def test_larger_lattice_better():
    small = run_point(cfg(L=4, trials=5000), 0.05)
    large = run_point(cfg(L=8, trials=5000), 0.05)
    z = (small.logical_rate - large.logical_rate) / math.hypot(small.sigma, large.sigma)
    assert z >= 3


def test_reproducible_and_worker_independent(tmp_path):
    c = cfg(p_values=(0.05, 0.09), trials=200)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    sweep(c, out=str(a))
    sweep(ExperimentConfig(**{**c.__dict__, "workers": 2}), out=str(b))
    assert a.read_bytes() == b.read_bytes()


def test_env_workers(monkeypatch):
    c = cfg(p_values=(0.07,), trials=120)
    ref = sweep(c)
    monkeypatch.setenv("HOMQEC_WORKERS", "3")
    assert [r.failures_per_logical for r in sweep(c)] == [r.failures_per_logical for r in ref]


def test_csv_schema(tmp_path):
    out = tmp_path / "o.csv"
    recs = sweep(cfg(p_values=(0.03, 0.06, 0.1)), out=str(out))
    rows = list(csv.reader(out.open()))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == 4
    first = dict(zip(rows[0], rows[1]))
    assert first["topology"] == "torus" and first["p"] == "0.03"
    assert first["failures_q2"] == ""
    assert "e" not in first["sigma"].lower()
    assert float(first["sigma"]) == pytest.approx(recs[0].sigma, rel=0, abs=0)


def test_cubic_has_three_logical_columns():
    c = ExperimentConfig(CubicSpec(3, 3, 3), encode_dim=1, side="z", p_values=(0.1,), trials=100)
    text = render(sweep(c))
    row = dict(zip(CSV_COLUMNS, text.splitlines()[1].split(",")))
    assert row["topology"] == "torus3" and row["failures_q2"] != ""


def test_json_mirrors_csv():
    recs = sweep(cfg(p_values=(0.05,), trials=100))
    data = json.loads(render(recs, "json"))
    assert list(data[0]) == list(CSV_COLUMNS)
    assert data[0]["failures_q2"] is None


def test_empty_grid(tmp_path):
    out = tmp_path / "e.csv"
    assert sweep(cfg(), out=str(out)) == []
    assert out.read_text().splitlines() == [",".join(CSV_COLUMNS)]


def test_unwritable_output(tmp_path):
    with pytest.raises(OSError):
        sweep(cfg(p_values=(0.1,)), out=str(tmp_path / "missing" / "x.csv"))


def test_compare():
    a = sweep(cfg(p_values=(0.05, 0.08)))
    assert compare(a, a) == [0.0, 0.0]
    b = sweep(cfg(topology="klein", p_values=(0.05, 0.08)))
    z = compare(a, b)
    for ra, rb, zz in zip(a, b, z):
        assert zz == pytest.approx((ra.logical_rate - rb.logical_rate) / math.hypot(ra.sigma, rb.sigma))
    with pytest.raises(ValueError):
        compare(a, sweep(cfg(p_values=(0.01, 0.02))))


def test_phenomenological_point():
    r = run_point(cfg(L=4, noise="phenomenological", rounds=4, trials=200), 0.03)
    assert r.config.rounds == 4 and 0 <= r.logical_rate <= 1


def test_monotone_in_p():
    recs = sweep(cfg(L=5, p_values=(0.02, 0.05, 0.08, 0.11), trials=1500))
    for lo, hi in zip(recs, recs[1:]):
        assert hi.logical_rate >= lo.logical_rate - 2 * math.hypot(lo.sigma, hi.sigma)
