"""Pauli frames, syndromes and the two noise models.

X- and Z-type noise are simulated as separate experiments. The *side*
names the check family doing the decoding:

* ``"z"``: X errors, detected by the Z-type checks ``h_z``; a logical
  failure is a residual cycle with odd pairing against some logical Z.
* ``"x"``: Z errors, detected by the X-type checks ``h_x``; a logical
  failure is a residual cocycle with odd pairing against some logical X.

Phenomenological noise runs ``rounds`` cycles. Each cycle every qubit
flips with probability ``p`` and then every check is read out, the readout
itself flipping with probability ``p``. The last cycle's readout is
perfect so the history closes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import CssCode
from .gf2 import as_bits

SIDES = ("x", "z")
NOISE_KINDS = ("capacity", "phenomenological")


def check_matrix(code: CssCode, side: str):
    if side == "z":
        return code.h_z
    if side == "x":
        return code.h_x
    raise ValueError(f"side must be 'x' or 'z', got {side!r}")


def conjugate_logicals(code: CssCode, side: str) -> np.ndarray:
    """Logicals whose pairing with a residual flags a failure on this side."""
    return code.logical_z_matrix() if side == "z" else code.logical_x_matrix()


@dataclass(frozen=True)
class PauliFrame:
    """X and Z supports over the qubits; a qubit in both carries Y."""

    x_support: np.ndarray
    z_support: np.ndarray

    @classmethod
    def empty(cls, n: int) -> "PauliFrame":
        return cls(np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8))

    @classmethod
    def on_side(cls, side: str, support) -> "PauliFrame":
        """Frame carrying the error type that ``side``'s checks detect."""
        support = as_bits(support)
        zero = np.zeros_like(support)
        return cls(support, zero) if side == "z" else cls(zero, support)

    def support(self, side: str) -> np.ndarray:
        return self.x_support if side == "z" else self.z_support

    def __xor__(self, other: "PauliFrame") -> "PauliFrame":
        return PauliFrame(self.x_support ^ other.x_support, self.z_support ^ other.z_support)

    def weight(self) -> int:
        return int(np.count_nonzero(self.x_support | self.z_support))


@dataclass(frozen=True)
class Syndrome:
    """Indices of violated Z-type checks (from X errors) and X-type checks (from Z errors)."""

    z_check_defects: np.ndarray
    x_check_defects: np.ndarray

    def on_side(self, side: str) -> np.ndarray:
        return self.z_check_defects if side == "z" else self.x_check_defects


@dataclass(frozen=True)
class NoiseModel:
    kind: str = "capacity"
    p: float = 0.0
    rounds: int = 1

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"noise kind must be one of {NOISE_KINDS}, got {self.kind!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")
        if self.kind == "capacity" and self.rounds != 1:
            raise ValueError("code-capacity noise has exactly one perfect round")


def sample_error(code: CssCode, model: NoiseModel, rng: np.random.Generator,
                 side: str = "z") -> PauliFrame:
    """One round of independent flips with probability ``p`` on every qubit."""
    check_matrix(code, side)
    flips = (rng.random(code.n) < model.p).astype(np.uint8)
    return PauliFrame.on_side(side, flips)


def extract_syndrome(code: CssCode, frame: PauliFrame) -> Syndrome:
    sz = code.h_z.matvec(frame.x_support)
    sx = code.h_x.matvec(frame.z_support)
    return Syndrome(np.flatnonzero(sz), np.flatnonzero(sx))


@dataclass(frozen=True)
class SyndromeHistory:
    """Per-round qubit flips and measured syndromes of one phenomenological run."""

    qubit_flips: np.ndarray  # rounds x n
    measured: np.ndarray  # rounds x m, already including readout flips

    @property
    def accumulated(self) -> np.ndarray:
        return np.bitwise_xor.reduce(self.qubit_flips, axis=0)


def sample_history(code: CssCode, model: NoiseModel, rng: np.random.Generator,
                   side: str = "z") -> SyndromeHistory:
    h = check_matrix(code, side).to_dense().astype(np.int64)
    R = model.rounds
    flips = (rng.random((R, code.n)) < model.p).astype(np.uint8)
    readout = (rng.random((R, h.shape[0])) < model.p).astype(np.uint8)
    readout[R - 1] = 0
    true = (np.bitwise_xor.accumulate(flips, axis=0).astype(np.int64) @ h.T) & 1
    return SyndromeHistory(flips, (true.astype(np.uint8) ^ readout))


def detection_events(measured: np.ndarray) -> np.ndarray:
    """Space-time defects ``(check, round)`` where a readout differs from the previous one.

    The round before the first counts as all-clear. Returned as an
    ``(n_events, 2)`` int64 array sorted by round, then check.
    """
    measured = np.atleast_2d(as_bits(measured))
    prev = np.vstack([np.zeros((1, measured.shape[1]), dtype=np.uint8), measured[:-1]])
    t, c = np.nonzero(measured ^ prev)
    return np.stack([c, t], axis=1).astype(np.int64)


__all__ = [
    "SIDES",
    "NOISE_KINDS",
    "PauliFrame",
    "Syndrome",
    "NoiseModel",
    "SyndromeHistory",
    "check_matrix",
    "conjugate_logicals",
    "sample_error",
    "sample_history",
    "extract_syndrome",
    "detection_events",
]
