"""Explicit logical bases of UB codes in the divisor case ``a | x^n - 1``.

With the row convention ``circulant(a)[i] = x^i a``, the stabilizer spaces are

    rs(H_X)  = {(a s, b s)},           ker(H_Z) = {(u, v) : b u + a v = 0}
    rs(H_Z)  = {(b~ s, a~ s)},         ker(H_X) = {(u, v) : a~ u + b~ v = 0}

where ``p~ = p(x^-1)``. Writing ``f = a^(t-1)``, every logical Z class has a
unique representative ``(alpha, f alpha + h beta)`` and every logical X class a
unique representative ``(f~ alpha + h~ beta, alpha)``, with ``deg alpha, deg beta < r``.
``f~`` and ``h~`` are the reciprocals ``f*``, ``h*`` up to a power of ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gf2linalg as gf2
from .code import CssCode
from .ring import RingPoly, gcd_with_modulus, poly_pow, shift, transpose


class UnsupportedCodeError(ValueError):
    """The explicit basis only exists when ``a`` divides ``x^n - 1``."""

    def __init__(self, code: CssCode):
        g = gcd_with_modulus(code.a, code.n)
        self.r = code.r
        self.gcd = g
        super().__init__(
            f"logical basis requires a | x^{code.n}-1; gcd(a, x^n-1) = {g} (degree {g.degree}), r = {code.r}"
        )


@dataclass(frozen=True)
class PauliVector:
    """``(u | v)`` in R_n^2, i.e. a length-2n bit-vector."""

    u: RingPoly
    v: RingPoly

    def __post_init__(self):
        if self.u.n != self.v.n:
            raise ValueError("halves live in different rings")

    @property
    def n(self) -> int:
        return self.u.n

    @property
    def weight(self) -> int:
        return self.u.weight + self.v.weight

    def bits(self) -> np.ndarray:
        return np.concatenate([self.u.coeffs, self.v.coeffs]).astype(np.uint8)

    @classmethod
    def from_bits(cls, bits) -> PauliVector:
        bits = np.asarray(bits, dtype=np.uint8).ravel()
        n = bits.size // 2
        return cls(
            RingPoly.from_exponents(np.flatnonzero(bits[:n]).tolist(), n),
            RingPoly.from_exponents(np.flatnonzero(bits[n:]).tolist(), n),
        )

    def __add__(self, other: PauliVector) -> PauliVector:
        return PauliVector(self.u + other.u, self.v + other.v)

    def supports(self) -> tuple[list[int], list[int]]:
        return self.u.support(), self.v.support()


def coeff_poly(coeffs, r: int, n: int) -> RingPoly:
    """Polynomial of degree < r from a length-r bit sequence (or pass a RingPoly through)."""
    if isinstance(coeffs, RingPoly):
        if coeffs.degree >= r:
            raise ValueError(f"coefficient polynomial must have degree < {r}")
        return coeffs.in_ring(n)
    coeffs = list(coeffs)
    if len(coeffs) != r:
        raise ValueError(f"expected {r} coefficients, got {len(coeffs)}")
    return RingPoly.from_exponents([i for i, c in enumerate(coeffs) if c], n)


@dataclass(frozen=True, eq=False)
class LogicalBasis:
    code: CssCode
    r: int
    t: int
    f: RingPoly
    fstar: RingPoly
    h: RingPoly
    hstar: RingPoly
    z1: tuple[PauliVector, ...]
    z2: tuple[PauliVector, ...]
    x1: tuple[PauliVector, ...]
    x2: tuple[PauliVector, ...]

    @property
    def z_vectors(self) -> list[PauliVector]:
        return list(self.z1) + list(self.z2)

    @property
    def x_vectors(self) -> list[PauliVector]:
        return list(self.x1) + list(self.x2)

    def z_matrix(self) -> np.ndarray:
        return np.array([p.bits() for p in self.z_vectors], dtype=np.uint8)

    def x_matrix(self) -> np.ndarray:
        return np.array([p.bits() for p in self.x_vectors], dtype=np.uint8)

    def to_dict(self) -> dict:
        def dump(vs):
            return [list(p.supports()) for p in vs]

        return {
            "r": self.r,
            "z1": dump(self.z1),
            "z2": dump(self.z2),
            "x1": dump(self.x1),
            "x2": dump(self.x2),
        }


def _rank_gain(stab: gf2.BitMatrix, reps: np.ndarray) -> int:
    stacked = gf2.BitMatrix.from_dense(np.vstack([stab.dense(), reps]))
    return gf2.rank(stacked) - gf2.rank(stab)


def logical_basis(code: CssCode, *, validate: bool = True) -> LogicalBasis:
    """The 4r representatives ``Z_i^(1), Z_j^(2), X_i^(1), X_j^(2)``.

    Raises UnsupportedCodeError outside the divisor case. With ``validate`` the
    kernel memberships and the rank gain of 2r on each side are checked, and an
    AssertionError is raised on any failure.
    """
    if not code.divisor_case or code.ell is None:
        raise UnsupportedCodeError(code)
    n, r = code.n, code.r
    t = 2**code.ell
    f = poly_pow(code.a, t - 1)
    h = code.h
    fstar, hstar = transpose(f), transpose(h)
    zero = RingPoly.zero(n)
    z1, z2, x1, x2 = [], [], [], []
    for i in range(r):
        xi = RingPoly.monomial(i, n)
        z1.append(PauliVector(xi, shift(f, i)))
        z2.append(PauliVector(zero, shift(h, i)))
        x1.append(PauliVector(shift(fstar, i), xi))
        x2.append(PauliVector(shift(hstar, i), zero))
    basis = LogicalBasis(code, r, t, f, fstar, h, hstar, tuple(z1), tuple(z2), tuple(x1), tuple(x2))
    if validate:
        _validate(basis)
    return basis


def _validate(basis: LogicalBasis) -> None:
    code = basis.code
    zm, xm = basis.z_matrix(), basis.x_matrix()
    if ((code.hz_dense.astype(np.int64) @ zm.T) & 1).any():
        raise AssertionError("a Z representative has nonzero H_Z syndrome")
    if ((code.hx_dense.astype(np.int64) @ xm.T) & 1).any():
        raise AssertionError("an X representative has nonzero H_X syndrome")
    if _rank_gain(code.hx, zm) != 2 * basis.r:
        raise AssertionError("Z representatives are not independent modulo rs(H_X)")
    if _rank_gain(code.hz, xm) != 2 * basis.r:
        raise AssertionError("X representatives are not independent modulo rs(H_Z)")


def lambda_z(basis: LogicalBasis, alpha: Sequence[int] | RingPoly, beta: Sequence[int] | RingPoly) -> PauliVector:
    """``sum alpha_i Z_i^(1) + sum beta_j Z_j^(2) = (alpha, f alpha + h beta)``."""
    n = basis.code.n
    a_ = coeff_poly(alpha, basis.r, n)
    b_ = coeff_poly(beta, basis.r, n)
    return PauliVector(a_, basis.f * a_ + basis.h * b_)


def lambda_x(basis: LogicalBasis, alpha: Sequence[int] | RingPoly, beta: Sequence[int] | RingPoly) -> PauliVector:
    """``sum alpha_i X_i^(1) + sum beta_j X_j^(2) = (f~ alpha + h~ beta, alpha)``."""
    n = basis.code.n
    a_ = coeff_poly(alpha, basis.r, n)
    b_ = coeff_poly(beta, basis.r, n)
    return PauliVector(basis.fstar * a_ + basis.hstar * b_, a_)


def _bits(v) -> np.ndarray:
    return v.bits() if isinstance(v, PauliVector) else np.asarray(v, dtype=np.uint8).ravel()


def is_nontrivial_logical_z(code: CssCode, v) -> bool:
    bits = _bits(v)
    return not gf2.mat_vec(code.hz, bits).any() and not gf2.in_row_space(code.hx, bits)


def is_nontrivial_logical_x(code: CssCode, v) -> bool:
    bits = _bits(v)
    return not gf2.mat_vec(code.hx, bits).any() and not gf2.in_row_space(code.hz, bits)
