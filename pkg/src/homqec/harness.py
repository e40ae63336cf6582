"""Monte Carlo sweeps over physical error rates, with CSV/JSON emission.

Trial ``t`` of point ``j`` draws from its own counter-based stream seeded
by ``(master_seed, j, t)``. Results therefore do not depend on how trials
are chunked across worker processes. The stream also does not depend on
the topology, so two complexes of equal size share random numbers trial
by trial.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .codes import build_code
from .complexes import CubicSpec, SurfaceSpec, build
from .matching import Decoder
from .noise import NOISE_KINDS, NoiseModel

CSV_COLUMNS = (
    "topology", "lx_or_n", "ly", "twist_x", "twist_y", "encode_dim", "side",
    "noise_model", "rounds", "p", "trials", "failures_any", "failures_q0",
    "failures_q1", "failures_q2", "logical_rate", "sigma", "master_seed",
)

Spec = Union[SurfaceSpec, CubicSpec]


@dataclass(frozen=True)
class ExperimentConfig:
    spec: Spec
    encode_dim: int = 1
    side: str = "z"
    noise: str = "capacity"
    rounds: int = 1
    p_values: tuple[float, ...] = ()
    trials: int = 5000
    master_seed: int = 0
    workers: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "p_values", tuple(float(p) for p in self.p_values))
        if self.side not in ("x", "z"):
            raise ValueError(f"side must be 'x' or 'z', got {self.side!r}")
        if self.noise not in NOISE_KINDS:
            raise ValueError(f"noise must be one of {NOISE_KINDS}, got {self.noise!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(not 0.0 <= p <= 1.0 for p in self.p_values):
            raise ValueError("every p must lie in [0, 1]")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned value")
        NoiseModel(self.noise, 0.0, self.rounds)

    def model(self, p: float) -> NoiseModel:
        return NoiseModel(self.noise, p, self.rounds)


@dataclass(frozen=True)
class ExperimentRecord:
    config: ExperimentConfig
    p: float
    trials: int
    failures_any: int
    failures_per_logical: tuple[int, ...]
    wall_time: float = field(default=0.0, compare=False)

    @property
    def logical_rate(self) -> float:
        return self.failures_any / self.trials

    @property
    def sigma(self) -> float:
        r = self.logical_rate
        return math.sqrt(r * (1.0 - r) / self.trials)

    def row(self) -> dict[str, object]:
        c = self.config
        s = c.spec
        if isinstance(s, SurfaceSpec):
            geo = (s.topology, s.lx, s.ly, int(s.twist_x), int(s.twist_y))
        else:
            geo = ("torus3", s.nx, s.ny, 0, 0)
        per = list(self.failures_per_logical[:3]) + [None] * (3 - min(3, len(self.failures_per_logical)))
        values = (*geo, c.encode_dim, c.side, c.noise, c.rounds, self.p, self.trials,
                  self.failures_any, *per, self.logical_rate, self.sigma, c.master_seed)
        return dict(zip(CSV_COLUMNS, values))


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return np.format_float_positional(v, trim="-")
    return str(v)


def trial_rng(master_seed: int, point_index: int, trial_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([master_seed, point_index, trial_index])))


@lru_cache(maxsize=16)
def _decoder(spec: Spec, encode_dim: int, side: str, noise: str, rounds: int) -> Decoder:
    code = build_code(build(spec), encode_dim)
    return Decoder(code, side, NoiseModel(noise, 0.0, rounds))


def _run_chunk(config: ExperimentConfig, p: float, point_index: int, start: int, stop: int) -> np.ndarray:
    dec = _decoder(config.spec, config.encode_dim, config.side, config.noise, config.rounds)
    k = dec.code.k
    counts = np.zeros(k + 1, dtype=np.int64)  # per-logical, then any
    if p == 0.0:
        return counts
    for t in range(start, stop):
        flags = dec.trial(p, trial_rng(config.master_seed, point_index, t))
        counts[:k] += flags
        counts[k] += flags.any()
    return counts


def resolve_workers(config: ExperimentConfig) -> int:
    if config.workers is not None:
        return max(1, int(config.workers))
    env = os.environ.get("HOMQEC_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"HOMQEC_WORKERS must be an integer, got {env!r}") from None
    return 1


def run_point(config: ExperimentConfig, p: float, point_index: int = 0) -> ExperimentRecord:
    """Run ``config.trials`` decode trials at physical error rate ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    t0 = time.perf_counter()
    workers = min(resolve_workers(config), config.trials)
    if workers == 1:
        counts = _run_chunk(config, p, point_index, 0, config.trials)
    else:
        edges = np.linspace(0, config.trials, workers + 1).astype(int)
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_run_chunk, [config] * workers, [p] * workers, [point_index] * workers,
                             edges[:-1].tolist(), edges[1:].tolist())
            counts = sum(parts)
    return ExperimentRecord(config, float(p), config.trials, int(counts[-1]),
                            tuple(int(c) for c in counts[:-1]), time.perf_counter() - t0)


def render(records: Sequence[ExperimentRecord], fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow([_fmt(v) for v in r.row().values()])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([r.row() for r in records], indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".homqec-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def sweep(config: ExperimentConfig, out: Optional[str] = None, fmt: str = "csv",
          progress: Optional[Callable[[ExperimentRecord, int, int], None]] = None) -> list[ExperimentRecord]:
    """Run every point of ``config.p_values`` in order.

    With ``out`` set, the file is rewritten atomically after each point, so
    it always holds a complete header plus the finished rows.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    if out is not None:
        directory = os.path.dirname(os.path.abspath(out))
        if not os.path.isdir(directory) or not os.access(directory, os.W_OK):
            raise OSError(f"cannot write to {out!r}")
        _atomic_write(out, render([], fmt))
    records: list[ExperimentRecord] = []
    for j, p in enumerate(config.p_values):
        records.append(run_point(config, p, j))
        if out is not None:
            _atomic_write(out, render(records, fmt))
        if progress is not None:
            progress(records[-1], j, len(config.p_values))
    return records


def compare(records_a: Sequence[ExperimentRecord], records_b: Sequence[ExperimentRecord]) -> list[float]:
    """Per-point z-scores ``(r_a - r_b) / sqrt(sigma_a**2 + sigma_b**2)``."""
    pa = [r.p for r in records_a]
    pb = [r.p for r in records_b]
    if pa != pb:
        raise ValueError(f"p grids differ: {pa} vs {pb}")
    z = []
    for a, b in zip(records_a, records_b):
        diff = a.logical_rate - b.logical_rate
        s = math.hypot(a.sigma, b.sigma)
        if s == 0.0:
            z.append(0.0 if diff == 0 else math.copysign(math.inf, diff))
        else:
            z.append(diff / s)
    return z


def print_progress(record: ExperimentRecord, j: int, total: int, stream=None) -> None:
    stream = sys.stderr if stream is None else stream
    print(f"[{j + 1}/{total}] p={_fmt(record.p)} rate={_fmt(record.logical_rate)} "
          f"({record.failures_any}/{record.trials}) {record.wall_time:.1f}s", file=stream, flush=True)


__all__ = [
    "CSV_COLUMNS",
    "ExperimentConfig",
    "ExperimentRecord",
    "trial_rng",
    "run_point",
    "sweep",
    "compare",
    "render",
    "resolve_workers",
    "print_progress",
]
