"""Dense bit-packed GF(2) matrices.

Rows are packed little-endian into ``uint64`` words: column ``j`` lives in word
``j // 64`` at bit ``j % 64``. Bit-vectors at the API boundary are ``uint8``
arrays of zeros and ones.
"""

from __future__ import annotations

import functools
import struct
from pathlib import Path
from typing import Sequence

import numpy as np

from .ring import RingPoly

WORD = 64


def n_words(cols: int) -> int:
    return max(1, (cols + WORD - 1) // WORD)


def pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array into ``(rows, words)`` uint64."""
    dense = np.atleast_2d(np.asarray(dense, dtype=np.uint8))
    rows, cols = dense.shape
    nbytes = n_words(cols) * 8
    packed = np.packbits(dense, axis=1, bitorder="little")
    if packed.shape[1] < nbytes:
        packed = np.pad(packed, ((0, 0), (0, nbytes - packed.shape[1])))
    return np.ascontiguousarray(packed).view("<u8").reshape(rows, -1)


def unpack_rows(words: np.ndarray, cols: int) -> np.ndarray:
    words = np.ascontiguousarray(np.atleast_2d(words), dtype="<u8")
    as_bytes = words.view(np.uint8).reshape(words.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :cols]


def pack_vec(v: np.ndarray) -> np.ndarray:
    return pack_rows(np.asarray(v, dtype=np.uint8).reshape(1, -1))[0]


def popcount(words: np.ndarray, axis=-1) -> np.ndarray:
    return np.bitwise_count(words).sum(axis=axis, dtype=np.int64)


def rref(data: np.ndarray, cols: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of packed rows; returns (nonzero rows, pivot columns)."""
    R = data.copy()
    rows = R.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        w = c >> 6
        b = np.uint64(c & 63)
        below = np.flatnonzero((R[r:, w] >> b) & np.uint64(1))
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        hit = ((R[:, w] >> b) & np.uint64(1)).astype(bool)
        hit[r] = False
        R[hit] ^= R[r]
        pivots.append(c)
        r += 1
    return R[:r], pivots


class BitMatrix:
    """Immutable GF(2) matrix stored as packed rows."""

    def __init__(self, data: np.ndarray, cols: int):
        data = np.asarray(data, dtype=np.uint64)
        if data.ndim != 2:
            raise ValueError("packed data must be 2-D")
        if data.shape[1] != n_words(cols):
            raise ValueError(f"expected {n_words(cols)} words per row, got {data.shape[1]}")
        data.setflags(write=False)
        self.data = data
        self.rows = data.shape[0]
        self.cols = cols

    @classmethod
    def from_dense(cls, dense) -> BitMatrix:
        dense = np.asarray(dense, dtype=np.uint8)
        if dense.ndim != 2:
            raise ValueError("dense matrix must be 2-D")
        if dense.shape[0] == 0:
            return cls(np.zeros((0, n_words(dense.shape[1])), dtype=np.uint64), dense.shape[1])
        return cls(pack_rows(dense & 1), dense.shape[1])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(np.zeros((rows, n_words(cols)), dtype=np.uint64), cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def dense(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        return unpack_rows(self.data, self.cols)

    def row(self, i: int) -> np.ndarray:
        return unpack_rows(self.data[i : i + 1], self.cols)[0]

    @property
    def T(self) -> BitMatrix:
        return BitMatrix.from_dense(self.dense().T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch: {self.shape} @ {other.shape}")
        prod = (self.dense().astype(np.int64) @ other.dense().astype(np.int64)) & 1
        return BitMatrix.from_dense(prod.astype(np.uint8))

    def is_zero(self) -> bool:
        return not self.data.any()

    def row_weights(self) -> np.ndarray:
        return popcount(self.data, axis=1)

    @functools.cached_property
    def echelon(self) -> tuple[np.ndarray, tuple[int, ...]]:
        """Cached reduced row echelon form: (packed nonzero rows, pivot columns)."""
        R, piv = rref(self.data, self.cols)
        R.setflags(write=False)
        return R, tuple(piv)


def hstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
    return BitMatrix.from_dense(np.hstack([b.dense() for b in blocks]))


def vstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
    cols = {b.cols for b in blocks}
    if len(cols) != 1:
        raise ValueError("column counts differ")
    return BitMatrix(np.vstack([b.data for b in blocks]), cols.pop())


def circulant(a: RingPoly) -> BitMatrix:
    """n x n circulant whose row ``i`` is the coefficient vector of ``x^i a(x)``."""
    return first_rows(a, a.n)


def first_rows(g: RingPoly, s: int) -> BitMatrix:
    """The first ``s`` rows of ``circulant(g)``."""
    n = g.n
    if n is None:
        raise ValueError("circulant needs a ring element")
    if not 1 <= s <= n:
        raise ValueError(f"row count {s} outside [1, {n}]")
    dense = np.zeros((s, n), dtype=np.uint8)
    supp = np.array(g.support(), dtype=np.int64)
    if supp.size:
        i = np.arange(s)[:, None]
        dense[np.broadcast_to(i, (s, supp.size)), (supp[None, :] + i) % n] = 1
    return BitMatrix.from_dense(dense)


def rank(M: BitMatrix) -> int:
    return len(M.echelon[1])


def _as_vec(M: BitMatrix, v) -> np.ndarray:
    v = np.asarray(v, dtype=np.uint8).ravel()
    if v.size != M.cols:
        raise ValueError(f"vector length {v.size} != {M.cols} columns")
    return v


def in_row_space(M: BitMatrix, v) -> bool:
    """True iff ``v`` is a GF(2) combination of the rows of ``M``."""
    v = _as_vec(M, v)
    R, piv = M.echelon
    if not piv:
        return not v.any()
    sel = v[list(piv)].astype(bool)
    combo = np.bitwise_xor.reduce(R[sel], axis=0) if sel.any() else np.zeros(R.shape[1], np.uint64)
    return bool(np.array_equal(combo, pack_vec(v)))


def kernel_basis(M: BitMatrix) -> np.ndarray:
    """Basis of the right null space as rows of a ``uint8`` array, ``cols - rank`` of them."""
    R, piv = M.echelon
    pivset = set(piv)
    free = [c for c in range(M.cols) if c not in pivset]
    basis = np.zeros((len(free), M.cols), dtype=np.uint8)
    if not free:
        return basis
    Rd = unpack_rows(R, M.cols) if len(piv) else np.zeros((0, M.cols), np.uint8)
    basis[np.arange(len(free)), free] = 1
    if len(piv):
        basis[:, list(piv)] = Rd[:, free].T
    return basis


def mat_vec(M: BitMatrix, v) -> np.ndarray:
    v = _as_vec(M, v)
    if M.rows == 0:
        return np.zeros(0, dtype=np.uint8)
    return (popcount(M.data & pack_vec(v)[None, :], axis=1) & 1).astype(np.uint8)


def write_alist(M: BitMatrix, path: str | Path) -> None:
    """Write ``M`` in MacKay's alist format."""
    dense = M.dense()
    col_idx = [np.flatnonzero(dense[:, j]) + 1 for j in range(M.cols)]
    row_idx = [np.flatnonzero(dense[i]) + 1 for i in range(M.rows)]
    max_c = max((len(c) for c in col_idx), default=0)
    max_r = max((len(r) for r in row_idx), default=0)
    lines = [f"{M.cols} {M.rows}", f"{max_c} {max_r}"]
    lines.append(" ".join(str(len(c)) for c in col_idx))
    lines.append(" ".join(str(len(r)) for r in row_idx))
    for idx, width in ((col_idx, max_c), (row_idx, max_r)):
        for entries in idx:
            padded = list(entries) + [0] * (width - len(entries))
            lines.append(" ".join(str(int(e)) for e in padded))
    Path(path).write_text("\n".join(lines) + "\n")


def read_alist(path: str | Path) -> BitMatrix:
    tokens = [int(t) for t in Path(path).read_text().split()]
    cols, rows = tokens[0], tokens[1]
    max_c = tokens[2]
    pos = 4 + cols + rows
    dense = np.zeros((rows, cols), dtype=np.uint8)
    for j in range(cols):
        for e in tokens[pos : pos + max_c]:
            if e:
                dense[e - 1, j] = 1
        pos += max_c
    return BitMatrix.from_dense(dense)


_PCHK_MAGIC = b"GF2M"


def write_pchk(M: BitMatrix, path: str | Path) -> None:
    """Dense binary dump: ``b"GF2M"``, rows and cols as little-endian uint32, then
    row-major bits packed MSB-first, each row padded to a whole byte."""
    body = np.packbits(M.dense(), axis=1).tobytes() if M.rows else b""
    Path(path).write_bytes(_PCHK_MAGIC + struct.pack("<II", M.rows, M.cols) + body)


def read_pchk(path: str | Path) -> BitMatrix:
    raw = Path(path).read_bytes()
    if raw[:4] != _PCHK_MAGIC:
        raise ValueError("not a GF2M matrix dump")
    rows, cols = struct.unpack("<II", raw[4:12])
    per_row = (cols + 7) // 8
    buf = np.frombuffer(raw[12:], dtype=np.uint8).reshape(rows, per_row)
    return BitMatrix.from_dense(np.unpackbits(buf, axis=1)[:, :cols])
