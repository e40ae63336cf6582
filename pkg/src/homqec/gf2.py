"""Dense linear algebra over GF(2).

Matrices are stored bit-packed, 64 columns per machine word, row-major.
Vectors are plain 1-D ``uint8`` numpy arrays holding 0/1; that is what the
rest of the package passes around.

Elimination always pivots on the first nonzero row of the leftmost
available column, so every basis returned here is reproducible.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from ._kernels import gf2_rref


def as_bits(v: Iterable[int] | np.ndarray) -> np.ndarray:
    """Coerce anything array-like to a 0/1 ``uint8`` vector."""
    return (np.asarray(v, dtype=np.int64) & 1).astype(np.uint8)


def _pack(dense: np.ndarray) -> np.ndarray:
    rows, cols = dense.shape
    nwords = max(1, (cols + 63) // 64)
    padded = np.zeros((rows, nwords * 64), dtype=np.uint8)
    padded[:, :cols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64).reshape(rows, nwords).copy()


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    rows = words.shape[0]
    if rows == 0:
        return np.zeros((0, cols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(words).view(np.uint8).reshape(rows, -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :cols].copy()


class GF2Matrix:
    """An immutable ``rows x cols`` matrix over GF(2).

    Build one with :meth:`from_dense`, :meth:`zeros` or :meth:`identity`.
    Zero-sized shapes are legal and act as rank-0 maps.
    """

    __slots__ = ("rows", "cols", "_words", "_dense")

    def __init__(self, words: np.ndarray, rows: int, cols: int):
        self.rows = int(rows)
        self.cols = int(cols)
        self._words = words
        self._words.setflags(write=False)
        self._dense: Optional[np.ndarray] = None

    @classmethod
    def from_dense(cls, a) -> "GF2Matrix":
        dense = np.asarray(a)
        if dense.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {dense.shape}")
        dense = (dense.astype(np.int64) & 1).astype(np.uint8)
        return cls(_pack(dense), *dense.shape)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GF2Matrix":
        return cls.from_dense(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def words(self) -> np.ndarray:
        """Read-only packed storage, shape ``(rows, ceil(cols / 64))``."""
        return self._words

    def to_dense(self) -> np.ndarray:
        if self._dense is None:
            self._dense = _unpack(self._words, self.cols)
            self._dense.setflags(write=False)
        return self._dense

    @property
    def T(self) -> "GF2Matrix":
        return GF2Matrix.from_dense(self.to_dense().T)

    def __matmul__(self, other):
        if isinstance(other, GF2Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            prod = self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64)
            return GF2Matrix.from_dense(prod & 1)
        return self.matvec(other)

    def matvec(self, v) -> np.ndarray:
        v = np.asarray(v)
        if v.shape[0] != self.cols:
            raise ValueError(f"vector of length {v.shape[0]} does not fit {self.shape}")
        return ((self.to_dense().astype(np.int64) @ v.astype(np.int64)) & 1).astype(np.uint8)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GF2Matrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._words, other._words))

    def __hash__(self):
        return hash((self.shape, self._words.tobytes()))

    def is_zero(self) -> bool:
        return not self._words.any()

    def nnz(self) -> int:
        return int(self.to_dense().sum())

    def row_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=1).astype(np.int64)

    def col_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=0).astype(np.int64)

    def __repr__(self) -> str:
        return f"GF2Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def _rref(m: GF2Matrix) -> tuple[np.ndarray, list[int]]:
    words = np.array(m.words, dtype=np.uint64, order="C", copy=True)
    pivots = gf2_rref(words, m.cols)
    return words, pivots


def rank(m: GF2Matrix) -> int:
    """Row rank over GF(2)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref(m)[1])


def kernel_basis(m: GF2Matrix) -> list[np.ndarray]:
    """A basis of ``{v : m v = 0}``, one free column per vector."""
    if m.rows == 0:
        return [np.eye(m.cols, dtype=np.uint8)[i] for i in range(m.cols)]
    words, pivots = _rref(m)
    reduced = _unpack(words[: len(pivots)], m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = np.zeros(m.cols, dtype=np.uint8)
        v[free] = 1
        for r, p in enumerate(pivots):
            if reduced[r, free]:
                v[p] = 1
        basis.append(v)
    return basis


def image_basis(m: GF2Matrix) -> list[np.ndarray]:
    """The pivot columns of ``m``; they span its column space."""
    if m.rows == 0 or m.cols == 0:
        return []
    _, pivots = _rref(m)
    dense = m.to_dense()
    return [dense[:, p].copy() for p in pivots]


def solve(m: GF2Matrix, b) -> Optional[np.ndarray]:
    """Some ``x`` with ``m x = b``, or ``None`` when ``b`` is not in the image."""
    b = as_bits(b)
    if b.shape != (m.rows,):
        raise ValueError(f"right-hand side has length {b.shape[0]}, matrix has {m.rows} rows")
    if m.rows == 0:
        return np.zeros(m.cols, dtype=np.uint8)
    aug = GF2Matrix.from_dense(np.hstack([m.to_dense(), b[:, None]]))
    words, pivots = _rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    reduced = _unpack(words[: len(pivots)], m.cols + 1)
    x = np.zeros(m.cols, dtype=np.uint8)
    for r, p in enumerate(pivots):
        x[p] = reduced[r, m.cols]
    return x


def stack_rows(vectors: list[np.ndarray], length: int) -> GF2Matrix:
    if not vectors:
        return GF2Matrix.zeros(0, length)
    return GF2Matrix.from_dense(np.vstack(vectors))


def inverse(m: GF2Matrix) -> GF2Matrix:
    """Inverse of a square invertible matrix."""
    n = m.rows
    if m.cols != n:
        raise ValueError("only square matrices have inverses")
    aug = GF2Matrix.from_dense(np.hstack([m.to_dense(), np.eye(n, dtype=np.uint8)]))
    words, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular over GF(2)")
    return GF2Matrix.from_dense(_unpack(words, 2 * n)[:, n:])


def extend_basis(base: list[np.ndarray], candidates: list[np.ndarray],
                 length: int) -> list[int]:
    """Indices of ``candidates`` that extend ``span(base)`` independently, in order."""
    chosen: list[int] = []
    # incremental elimination against an echelon form of the span so far
    echelon: list[tuple[int, np.ndarray]] = []

    def reduce(v: np.ndarray) -> np.ndarray:
        v = v.copy()
        for p, row in echelon:
            if v[p]:
                v ^= row
        return v

    def insert(v: np.ndarray) -> bool:
        v = reduce(v)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        echelon.append((int(nz[0]), v))
        return True

    for v in base:
        insert(as_bits(v))
    for i, v in enumerate(candidates):
        if insert(as_bits(v)):
            chosen.append(i)
    return chosen


__all__ = [
    "GF2Matrix",
    "as_bits",
    "rank",
    "kernel_basis",
    "image_basis",
    "solve",
    "inverse",
    "stack_rows",
    "extend_basis",
]
