"""CSS codes read off a chain complex.

Qubits sit on the ``i``-cells. Z-type checks are indexed by the
``(i-1)``-cells (row ``c`` of ``h_z`` is the coboundary of ``c``), X-type
checks by the ``(i+1)``-cells (row ``c`` of ``h_x`` is the boundary of
``c``). Logical X operators are cycle representatives and logical Z
operators cocycle representatives, taken from the canonical homology basis
so that ``logical_z[i]`` anticommutes with ``logical_x[j]`` exactly when
``i == j``.

Every cell keeps its check, including the one linearly dependent check per
family on a closed complex, so check indices stay equal to cell indices.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .complexes import ChainComplex
from .gf2 import GF2Matrix, as_bits
from .homology import HomologyBasis, dual_graph, homology_basis, min_weight_class_representatives, primal_graph


class NoLogicalQubitsError(ValueError):
    """The chosen homology group is trivial, so nothing can be encoded."""


@dataclass(frozen=True, eq=False)
class CssCode:
    n: int
    encode_dim: int
    h_z: GF2Matrix
    h_x: GF2Matrix
    logical_x: tuple[np.ndarray, ...]
    logical_z: tuple[np.ndarray, ...]
    basis: HomologyBasis = field(repr=False)
    complex: ChainComplex = field(repr=False)

    @property
    def k(self) -> int:
        return len(self.logical_x)

    def logical_x_matrix(self) -> np.ndarray:
        return self.basis.cycle_matrix()

    def logical_z_matrix(self) -> np.ndarray:
        return self.basis.cocycle_matrix()


@dataclass(frozen=True)
class CodeParameters:
    """``[[n, k, d_x, d_z]]``; a distance with ``exact=False`` is an upper bound."""

    n: int
    k: int
    d_x: int
    d_z: int
    d_x_exact: bool
    d_z_exact: bool
    x_class_weights: Optional[dict] = None
    z_class_weights: Optional[dict] = None

    @property
    def d(self) -> int:
        return min(self.d_x, self.d_z)

    def label(self) -> str:
        dx = f"{self.d_x}" if self.d_x_exact else f"<={self.d_x}"
        dz = f"{self.d_z}" if self.d_z_exact else f"<={self.d_z}"
        return f"[[{self.n},{self.k}]] d_x={dx} d_z={dz}"


def build_code(x: ChainComplex, i: int) -> CssCode:
    """CSS code with qubits on the ``i``-cells of ``x``."""
    if not 1 <= i <= x.dim - 1:
        raise ValueError(f"encode dimension must lie in 1..{x.dim - 1}, got {i}")
    basis = homology_basis(x, i)
    if basis.betti == 0:
        raise NoLogicalQubitsError(
            f"H_{i}({x.name}; Z2) is trivial: the number of encoded qubits equals "
            f"its rank, which is 0")
    h_z = x.boundary[i]
    h_x = x.boundary[i + 1].T
    return CssCode(x.cell_count[i], i, h_z, h_x, basis.cycle_reps, basis.cocycle_reps, basis, x)


def check_weights(code: CssCode) -> dict[str, dict[int, int]]:
    """Histogram ``{weight: count}`` of the rows of ``h_z`` and ``h_x``."""
    return {
        "h_z": dict(sorted(Counter(int(w) for w in code.h_z.row_weights()).items())),
        "h_x": dict(sorted(Counter(int(w) for w in code.h_x.row_weights()).items())),
    }


def distances(code: CssCode, x: Optional[ChainComplex] = None) -> CodeParameters:
    """Code distances, exact on graph-like sides and a representative bound otherwise."""
    x = code.complex if x is None else x
    i = code.encode_dim
    if primal_graph(x, i) is not None:
        xw = min_weight_class_representatives(x, code.basis)
        d_x, d_x_exact = min(xw.values()), True
    else:
        xw = None
        d_x, d_x_exact = min(int(v.sum()) for v in code.logical_x), False
    if dual_graph(x, i) is not None:
        zw = min_weight_class_representatives(x, code.basis, cochains=True)
        d_z, d_z_exact = min(zw.values()), True
    else:
        zw = None
        d_z, d_z_exact = min(int(v.sum()) for v in code.logical_z), False
    return CodeParameters(code.n, code.k, d_x, d_z, d_x_exact, d_z_exact, xw, zw)


def syndrome_of(code: CssCode, pauli: str, support) -> np.ndarray:
    """Violated-check indicator for an X- or Z-type error with the given support."""
    support = as_bits(support)
    if pauli.upper() == "X":
        return code.h_z.matvec(support)
    if pauli.upper() == "Z":
        return code.h_x.matvec(support)
    raise ValueError(f"pauli must be 'X' or 'Z', got {pauli!r}")


def single_error_defect_count(code: CssCode, pauli: str, qubit: int) -> int:
    if not 0 <= qubit < code.n:
        raise IndexError(f"qubit {qubit} outside 0..{code.n - 1}")
    e = np.zeros(code.n, dtype=np.uint8)
    e[qubit] = 1
    return int(syndrome_of(code, pauli, e).sum())


def code_invariants(code: CssCode) -> list[tuple[str, bool]]:
    """Named structural checks that must hold for every code built from a closed complex."""
    hz = code.h_z.to_dense().astype(np.int64)
    hx = code.h_x.to_dense().astype(np.int64)
    lx = code.logical_x_matrix().astype(np.int64)
    lz = code.logical_z_matrix().astype(np.int64)
    return [
        ("stabilizers commute (h_x h_z^T = 0)", not ((hx @ hz.T) & 1).any()),
        ("product of Z checks is identity", not (hz.sum(axis=0) & 1).any()),
        ("product of X checks is identity", not (hx.sum(axis=0) & 1).any()),
        ("logical X commute with Z checks", not ((hz @ lx.T) & 1).any()),
        ("logical Z commute with X checks", not ((hx @ lz.T) & 1).any()),
        ("logical pairing is identity", np.array_equal((lz @ lx.T) & 1, np.eye(code.k, dtype=np.int64))),
    ]


__all__ = [
    "CssCode",
    "CodeParameters",
    "NoLogicalQubitsError",
    "build_code",
    "check_weights",
    "distances",
    "syndrome_of",
    "single_error_defect_count",
    "code_invariants",
]
