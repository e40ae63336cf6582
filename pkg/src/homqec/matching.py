"""Minimum-weight perfect matching decoder on primal, dual and space-time graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._kernels import apply_paths, bfs_all_pairs, min_weight_perfect_matching
from .codes import CssCode
from .complexes import CellGraph, graph_from_incidence
from .noise import (NoiseModel, PauliFrame, check_matrix, conjugate_logicals,
                    detection_events, sample_history)


class DecodingError(RuntimeError):
    """A decoder contract was violated (odd defect set, syndrome mismatch)."""


@dataclass(frozen=True, eq=False)
class MatchingGraph:
    """Checks of one side as nodes, qubits as unit-weight links.

    ``rounds > 1`` makes it the space-time graph: nodes are
    ``(check, round)`` pairs, space links join the same qubit's checks
    within a round and time links join one check in consecutive rounds,
    all of weight 1. Distances are then ``dist[c1, c2] + |t1 - t2|``.
    """

    side: str
    graph: CellGraph
    dist: np.ndarray
    step: np.ndarray
    rounds: int = 1

    @property
    def n_checks(self) -> int:
        return self.graph.n_nodes

    @property
    def n_nodes(self) -> int:
        return self.graph.n_nodes * self.rounds

    def distance(self, a, b) -> int:
        """Distance between two nodes (check indices, or ``(check, round)`` pairs)."""
        if self.rounds == 1 and np.ndim(a) == 0:
            return int(self.dist[int(a), int(b)])
        (ca, ta), (cb, tb) = a, b
        return int(self.dist[ca, cb]) + abs(int(ta) - int(tb))

    def cost_matrix(self, defects: np.ndarray) -> np.ndarray:
        defects = np.asarray(defects, dtype=np.int64)
        if defects.ndim == 1:
            return self.dist[np.ix_(defects, defects)].astype(np.int64)
        c, t = defects[:, 0], defects[:, 1]
        return self.dist[np.ix_(c, c)].astype(np.int64) + np.abs(t[:, None] - t[None, :])


def build_matching_graph(code: CssCode, side: str, model: Optional[NoiseModel] = None) -> MatchingGraph:
    model = NoiseModel() if model is None else model
    h = check_matrix(code, side)
    weights = h.col_weights()
    if not np.all(weights == 2):
        raise ValueError(
            f"side {side!r} of a code on {code.encode_dim}-cells of {code.complex.name} is not "
            f"graph-like (qubits trigger {sorted(set(int(w) for w in weights))} checks); "
            "matching needs exactly 2")
    if model.kind == "phenomenological" and model.rounds < 2:
        raise ValueError("phenomenological matching needs at least 2 rounds")
    g = graph_from_incidence(h)
    dist, step = bfs_all_pairs(g.n_nodes, g.link_a, g.link_b)
    return MatchingGraph(side, g, dist, step, model.rounds)


def match_defects(graph: MatchingGraph, defects) -> tuple[np.ndarray, int]:
    """Optimal pairing of ``defects``; returns ``(mate, total_weight)``."""
    defects = np.asarray(defects, dtype=np.int64)
    n = len(defects)
    if n % 2:
        raise DecodingError(f"odd number of defects ({n}); a closed complex always gives an even count")
    if n == 0:
        return np.zeros(0, dtype=np.int64), 0
    cost = graph.cost_matrix(defects)
    if (cost < 0).any():
        raise DecodingError("defects lie in different components of the matching graph")
    mate = min_weight_perfect_matching(cost)
    total = int(cost[np.arange(n), mate].sum()) // 2
    return mate, total


def mwpm_decode(graph: MatchingGraph, defects) -> np.ndarray:
    """Qubit correction flipping a shortest path between every matched pair.

    ``defects`` are check indices (code capacity) or ``(check, round)``
    rows (space-time). Time-like pairs on the same check need no flips.
    """
    defects = np.asarray(defects, dtype=np.int64)
    mate, _ = match_defects(graph, defects)
    out = np.zeros(graph.graph.n_links, dtype=np.uint8)
    if len(defects) == 0:
        return out
    checks = defects if defects.ndim == 1 else defects[:, 0]
    apply_paths(graph.step, graph.graph.link_a, graph.graph.link_b,
                np.ascontiguousarray(checks), mate, out)
    return out


@dataclass(frozen=True)
class DecodeOutcome:
    correction: PauliFrame
    residual_class: np.ndarray
    failed: np.ndarray

    @property
    def success(self) -> bool:
        return not self.failed.any()


def judge(code: CssCode, side: str, error, correction) -> DecodeOutcome:
    """Compare a correction to the error it was meant to undo.

    ``error`` and ``correction`` are supports of the side's error type (or
    :class:`PauliFrame` objects). Failure flag ``i`` is the pairing parity
    of the residual with conjugate logical ``i``.
    """
    if isinstance(error, PauliFrame):
        error = error.support(side)
    if isinstance(correction, PauliFrame):
        correction = correction.support(side)
    residual = np.asarray(error, dtype=np.uint8) ^ np.asarray(correction, dtype=np.uint8)
    if check_matrix(code, side).matvec(residual).any():
        raise DecodingError("correction does not reproduce the error's syndrome")
    cls = ((conjugate_logicals(code, side).astype(np.int64) @ residual) & 1).astype(np.uint8)
    return DecodeOutcome(PauliFrame.on_side(side, correction), cls, cls.astype(bool))


class Decoder:
    """Everything needed to run sample -> syndrome -> decode -> judge trials fast."""

    def __init__(self, code: CssCode, side: str, model: NoiseModel):
        self.code = code
        self.side = side
        self.rounds = model.rounds
        self.kind = model.kind
        self.graph = build_matching_graph(code, side, model)
        self.conj = conjugate_logicals(code, side).astype(np.int64)
        self._a = self.graph.graph.link_a.astype(np.int64)
        self._b = self.graph.graph.link_b.astype(np.int64)
        self.n_checks = self.graph.n_checks

    def syndrome(self, support: np.ndarray) -> np.ndarray:
        idx = np.flatnonzero(support)
        counts = (np.bincount(self._a[idx], minlength=self.n_checks)
                  + np.bincount(self._b[idx], minlength=self.n_checks))
        return (counts & 1).astype(np.uint8)

    def decode_support(self, support: np.ndarray) -> np.ndarray:
        return mwpm_decode(self.graph, np.flatnonzero(self.syndrome(support)))

    def failures(self, residual: np.ndarray) -> np.ndarray:
        return ((self.conj @ residual.astype(np.int64)) & 1).astype(bool)

    def trial(self, p: float, rng: np.random.Generator) -> np.ndarray:
        """Per-logical failure flags of one sampled trial."""
        if self.kind == "capacity":
            err = (rng.random(self.code.n) < p).astype(np.uint8)
            corr = self.decode_support(err)
        else:
            hist = sample_history(self.code, NoiseModel("phenomenological", p, self.rounds), rng, self.side)
            err = hist.accumulated
            corr = mwpm_decode(self.graph, detection_events(hist.measured))
        residual = err ^ corr
        if self.syndrome(residual).any():
            raise DecodingError("correction does not reproduce the error's syndrome")
        return self.failures(residual)


__all__ = [
    "DecodingError",
    "MatchingGraph",
    "DecodeOutcome",
    "Decoder",
    "build_matching_graph",
    "match_defects",
    "mwpm_decode",
    "judge",
]
