"""Compiled kernels vs the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Times each kernel on both backends, then an end-to-end sweep point in a
subprocess per backend (``HOMQEC_PURE=1`` selects the fallback).
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from homqec._kernels import _pure
from homqec.complexes import SurfaceSpec, adjacency_graph, build
from homqec.gf2 import GF2Matrix

try:
    from homqec._kernels import _core
except ImportError:
    _core = None

TRIALS_SNIPPET = """
import time
from homqec import BACKEND
from homqec.complexes import SurfaceSpec
from homqec.harness import ExperimentConfig, run_point
c = ExperimentConfig(SurfaceSpec.of("klein", 8), trials=400, master_seed=1)
run_point(c, 0.06)
t = time.perf_counter()
run_point(c, 0.06)
print(BACKEND, time.perf_counter() - t)
"""


def random_cost(rng, n):
    c = np.triu(rng.integers(0, 30, size=(n, n)), 1)
    return (c + c.T).astype(np.int64)


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = [("python", _pure)] + ([("cython", _core)] if _core is not None else [])
    rng = np.random.default_rng(0)

    cases = []
    for n in (16, 48, 96):
        cost = random_cost(rng, n)
        cases.append((f"matching n={n}", lambda m, c=cost: m.min_weight_perfect_matching(c)))
    g = adjacency_graph(build(SurfaceSpec.of("klein", 12)))
    cases.append(("bfs all-pairs 144 nodes", lambda m: m.bfs_all_pairs(g.n_nodes, g.link_a, g.link_b)))
    words = GF2Matrix.from_dense(rng.integers(0, 2, size=(300, 600), dtype=np.uint8)).words
    cases.append(("rref 300x600", lambda m: m.gf2_rref(words.copy(), 600)))

    print(f"{'kernel':<26}" + "".join(f"{name:>12}" for name, _ in impls) + "     speedup")
    for label, fn in cases:
        times = [best_of(lambda m=m: fn(m), args.repeat) for _, m in impls]
        speed = f"{times[0] / times[-1]:10.1f}x" if len(times) > 1 else ""
        print(f"{label:<26}" + "".join(f"{t * 1e3:10.2f}ms" for t in times) + speed)

    print("\nend to end: 400 code-capacity trials, Klein L=8, p=0.06")
    for pure in ("1", "0"):
        env = dict(os.environ, HOMQEC_PURE=pure)
        out = subprocess.run([sys.executable, "-c", TRIALS_SNIPPET], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"  {out[0]:<8} {float(out[1]):.2f}s")


if __name__ == "__main__":
    main()
