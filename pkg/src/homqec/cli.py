"""``homqec`` command line.

Exit codes: 0 success, 1 runtime or invariant failure, 2 usage error.
Data goes to ``--out`` or stdout, progress to stderr.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .codes import NoLogicalQubitsError, build_code, check_weights, code_invariants, distances
from .complexes import CubicSpec, SurfaceSpec, build, dump_complex
from .gf2 import rank
from .harness import ExperimentConfig, print_progress, render, sweep
from .homology import (betti_numbers, homology_basis, min_weight_class_representatives, pairing)

TOPOLOGIES = ("torus", "klein", "rp2", "torus3")


class UsageError(Exception):
    pass


def parse_size(topology: str, text: str):
    parts = [int(v) for v in re.split(r"[xX]", text.strip())] if re.fullmatch(r"\d+([xX]\d+)*", text.strip()) else None
    if not parts:
        raise UsageError(f"cannot parse --size {text!r}; use L, LxL or NxNxN")
    if min(parts) < 2:
        raise UsageError(f"every side of --size must be at least 2, got {text!r}")
    if topology == "torus3":
        if len(parts) == 1:
            parts *= 3
        if len(parts) != 3:
            raise UsageError("torus3 needs --size N or NxNxN")
        return CubicSpec(*parts)
    if len(parts) == 1:
        parts *= 2
    if len(parts) != 2:
        raise UsageError(f"{topology} needs --size L or LxL")
    return SurfaceSpec.of(topology, parts[0], parts[1])


def _spec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--topology", choices=TOPOLOGIES, required=True)
    p.add_argument("--size", required=True, help="L, LxL or NxNxN")


def _code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--encode-dim", type=int, default=1, help="cell dimension carrying qubits")


def _sim_args(p: argparse.ArgumentParser, grid: bool) -> None:
    _code_args(p)
    p.add_argument("--side", choices=("x", "z"), default="z",
                   help="z: X errors vs Z checks; x: Z errors vs X checks")
    p.add_argument("--noise", choices=("capacity", "phenomenological"), default="capacity")
    p.add_argument("--rounds", type=int, default=None, help="measurement rounds (default: distance)")
    if grid:
        p.add_argument("--p-min", type=float, required=True)
        p.add_argument("--p-max", type=float, required=True)
        p.add_argument("--p-steps", type=int, required=True)
    else:
        p.add_argument("--p", type=float, required=True)
    p.add_argument("--trials", type=int, default=5000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None, help="worker processes (env HOMQEC_WORKERS)")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homqec", description="Homological CSS codes on closed manifolds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="Betti numbers, pairing rank, minimal class weights")
    _spec_args(p)
    p = sub.add_parser("code-info", help="code parameters and check weights")
    _spec_args(p)
    _code_args(p)
    p = sub.add_parser("verify", help="run the structural invariant suite")
    _spec_args(p)
    p = sub.add_parser("dump", help="write the chain complex as text")
    _spec_args(p)
    p.add_argument("--out", default=None)
    p = sub.add_parser("simulate", help="logical error rate at one p")
    _spec_args(p)
    _sim_args(p, grid=False)
    p = sub.add_parser("sweep", help="logical error rate over a p grid")
    _spec_args(p)
    _sim_args(p, grid=True)
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _describe(spec) -> str:
    if isinstance(spec, CubicSpec):
        return f"torus3 {spec.nx}x{spec.ny}x{spec.nz}"
    return f"{spec.topology} {spec.lx}x{spec.ly}"


def cmd_homology(spec) -> int:
    x = build(spec)
    bs = betti_numbers(x)
    print(f"complex: {_describe(spec)}")
    print("cells: " + " ".join(str(c) for c in x.cell_count))
    print(f"euler characteristic: {x.euler_characteristic()}")
    for k, b in enumerate(bs):
        print(f"b{k} = {b}")
    for k in range(1, x.dim):
        if bs[k] == 0:
            continue
        basis = homology_basis(x, k)
        print(f"degree {k}: pairing rank {rank(pairing(x, basis))}")
        for label, cochains in (("cycle", False), ("cocycle", True)):
            try:
                w = min_weight_class_representatives(x, basis, cochains=cochains)
            except ValueError:
                reps = basis.cocycle_reps if cochains else basis.cycle_reps
                print(f"  {label} representative weights (upper bounds): "
                      + " ".join(str(int(r.sum())) for r in reps))
                continue
            units = [w[tuple(int(i == j) for j in range(bs[k]))] for i in range(bs[k])]
            print(f"  minimal {label} weights per basis class: " + " ".join(map(str, units)))
            for sig, weight in w.items():
                print(f"    class {''.join(map(str, sig))}: {weight}")
    return 0


def cmd_code_info(spec, encode_dim: int) -> int:
    code = build_code(build(spec), encode_dim)
    params = distances(code)
    print(f"complex: {_describe(spec)}, qubits on {encode_dim}-cells")
    print(params.label())
    for name, hist in check_weights(code).items():
        print(f"{name} row weights: " + ", ".join(f"{w}x{c}" for w, c in hist.items()))
    x = code.complex
    for name, reps in (("X", code.logical_x), ("Z", code.logical_z)):
        for j, v in enumerate(reps):
            cells = " ".join("(" + ",".join(map(str, c)) + ")" for c in x.cell_coords(encode_dim, np.flatnonzero(v)))
            print(f"logical {name}{j} weight {int(v.sum())}: {cells}")
    return 0


def verify_suite(spec) -> list[tuple[str, bool]]:
    x = build(spec)
    checks: list[tuple[str, bool]] = []
    for k in range(2, x.dim + 1):
        dd = (x.boundary[k - 1].to_dense().astype(np.int64) @ x.boundary[k].to_dense().astype(np.int64)) & 1
        checks.append((f"boundary[{k - 1}] boundary[{k}] = 0", not dd.any()))
    bs = betti_numbers(x)
    for i in range(1, x.dim):
        if bs[i] == 0:
            continue
        code = build_code(x, i)
        checks += [(f"i={i}: {name}", ok) for name, ok in code_invariants(code)]
        checks.append((f"i={i}: pairing full rank", rank(pairing(x, code.basis)) == bs[i]))
        checks.append((f"i={i}: k equals b{i}", code.k == bs[i]))
        for name, h in (("h_z", code.h_z), ("h_x", code.h_x)):
            checks.append((f"i={i}: every {name} syndrome has even size", bool(np.all(h.col_weights() % 2 == 0))))
    return checks


def cmd_verify(spec) -> int:
    failed = None
    for name, ok in verify_suite(spec):
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        if not ok and failed is None:
            failed = name
    if failed is not None:
        print(f"verify failed: {failed}", file=sys.stderr)
        return 1
    return 0


def _graph_like(spec, encode_dim: int, side: str) -> bool:
    if isinstance(spec, SurfaceSpec):
        return True
    return side == ("z" if encode_dim == 1 else "x")


def _sim_config(args, spec) -> ExperimentConfig:
    dim = 3 if isinstance(spec, CubicSpec) else 2
    if not 1 <= args.encode_dim <= dim - 1:
        raise UsageError(f"--encode-dim must lie in 1..{dim - 1}")
    if not _graph_like(spec, args.encode_dim, args.side):
        raise UsageError(f"--side {args.side} is not matchable for qubits on {args.encode_dim}-cells of torus3")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must be a 64-bit unsigned value")
    if args.workers is not None and args.workers < 1:
        raise UsageError("--workers must be >= 1")
    if args.command == "sweep":
        if args.p_steps < 0:
            raise UsageError("--p-steps must be >= 0")
        if not 0 <= args.p_min <= args.p_max <= 1:
            raise UsageError("need 0 <= --p-min <= --p-max <= 1")
        if args.p_steps == 1 and args.p_min != args.p_max:
            raise UsageError("--p-steps 1 needs --p-min equal to --p-max")
        ps = tuple(round(float(v), 12) for v in np.linspace(args.p_min, args.p_max, args.p_steps))
    else:
        if not 0 <= args.p <= 1:
            raise UsageError("--p must lie in [0, 1]")
        ps = (args.p,)
    rounds = args.rounds
    if args.noise == "capacity":
        if rounds not in (None, 1):
            raise UsageError("--rounds only applies to --noise phenomenological")
        rounds = 1
    elif rounds is None:
        params = distances(build_code(build(spec), args.encode_dim))
        rounds = params.d_x if args.side == "z" else params.d_z
    if args.noise == "phenomenological" and rounds < 2:
        raise UsageError("phenomenological noise needs --rounds >= 2")
    return ExperimentConfig(spec, args.encode_dim, args.side, args.noise, rounds, ps,
                            args.trials, args.seed, args.workers)


def cmd_simulate(args, spec) -> int:
    config = _sim_config(args, spec)
    print(f"{_describe(spec)} side={config.side} noise={config.noise} rounds={config.rounds} "
          f"trials={config.trials} seed={config.master_seed}", file=sys.stderr)
    records = sweep(config, out=args.out, fmt=args.format, progress=print_progress)
    if args.out is None:
        sys.stdout.write(render(records, args.format))
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        spec = parse_size(args.topology, args.size)
        if args.command == "homology":
            return cmd_homology(spec)
        if args.command == "code-info":
            return cmd_code_info(spec, args.encode_dim)
        if args.command == "verify":
            return cmd_verify(spec)
        if args.command == "dump":
            _emit(dump_complex(build(spec)), args.out)
            return 0
        return cmd_simulate(args, spec)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"homqec: error: {exc}", file=sys.stderr)
        return 2
    except NoLogicalQubitsError as exc:
        print(f"homqec: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, RuntimeError, ArithmeticError) as exc:
        print(f"homqec: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
