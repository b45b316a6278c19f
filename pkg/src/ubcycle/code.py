"""Generalized and univariate bicycle CSS codes.

``H_X = [A | B]`` and ``H_Z = [B^T | A^T]`` with ``A = circulant(a)``,
``B = circulant(b)``. A UB code fixes ``b = a^(2^ell)`` in R_n.
"""

from __future__ import annotations

import functools
import json
import shlex
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from . import gf2linalg as gf2
from .ring import (
    RingPoly,
    format_poly,
    frobenius_power,
    gcd_with_modulus,
    parse_poly,
    poly_divide,
    poly_gcd,
    transpose,
)


class InvalidCodeError(ValueError):
    """The polynomial data does not define a code with k > 0."""


@dataclass(frozen=True)
class UBCodeSpec:
    n: int
    a: RingPoly
    ell: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.ell < 1:
            raise ValueError("ell must be at least 1")
        if self.a.n != self.n:
            object.__setattr__(self, "a", self.a.in_ring(self.n))

    @classmethod
    def parse(cls, n: int, a: str, ell: int) -> UBCodeSpec:
        return cls(n, parse_poly(a, n), ell)

    @property
    def t(self) -> int:
        return 2**self.ell

    @property
    def r(self) -> int:
        g = gcd_with_modulus(self.a, self.n)
        return g.degree if g else 0

    def __str__(self) -> str:
        return f"n={self.n} a={format_poly(self.a)} l={self.ell}"


@dataclass(frozen=True, eq=False)
class CssCode:
    """A GB code with its parity-check matrices and derived parameters.

    ``r = deg gcd(a, b, x^n - 1)`` so that ``k = 2r``. In the divisor case
    (``a | x^n - 1``) ``h = (x^n - 1)/a`` is stored as an element of R_n.
    """

    a: RingPoly
    b: RingPoly
    hx: gf2.BitMatrix = field(repr=False)
    hz: gf2.BitMatrix = field(repr=False)
    r: int
    divisor_case: bool
    h: RingPoly | None
    ell: int | None = None

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def N(self) -> int:
        return 2 * self.a.n

    @property
    def k(self) -> int:
        return 2 * self.r

    @property
    def w(self) -> int:
        return self.a.weight + self.b.weight

    @property
    def rate(self) -> float:
        return self.k / self.N

    @property
    def params(self) -> tuple[int, int]:
        return self.N, self.k

    @functools.cached_property
    def hz_dense(self) -> np.ndarray:
        return self.hz.dense()

    @functools.cached_property
    def hx_dense(self) -> np.ndarray:
        return self.hx.dense()

    @functools.cached_property
    def x_logicals(self) -> np.ndarray:
        """k vectors of ker(H_X) independent modulo rs(H_Z), found by elimination.

        A vector of ker(H_Z) lies in rs(H_X) iff it is orthogonal to all of them.
        """
        return _complete_logicals(self.hx, self.hz, self.k)

    @functools.cached_property
    def z_logicals(self) -> np.ndarray:
        return _complete_logicals(self.hz, self.hx, self.k)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "N": self.N,
            "k": self.k,
            "r": self.r,
            "w": self.w,
            "l": self.ell,
            "rate": round(self.rate, 3),
            "divisor_case": self.divisor_case,
            "a": format_poly(self.a),
            "b": format_poly(self.b),
            "h": format_poly(self.h) if self.h is not None else None,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def __repr__(self) -> str:
        tag = f", l={self.ell}" if self.ell is not None else ""
        return f"CssCode([[{self.N},{self.k}]], a={format_poly(self.a)}{tag})"


def _complete_logicals(check: gf2.BitMatrix, stab: gf2.BitMatrix, k: int) -> np.ndarray:
    kernel = gf2.kernel_basis(check)
    stab_rows = gf2.unpack_rows(stab.echelon[0], stab.cols)
    stacked = np.vstack([stab_rows, kernel])
    # pivots landing in the kernel block mark kernel vectors outside rs(stab)
    _, piv = gf2.rref(gf2.pack_rows(stacked.T), stacked.shape[0])
    picked = [p - stab_rows.shape[0] for p in piv if p >= stab_rows.shape[0]]
    if len(picked) != k:
        raise AssertionError(f"found {len(picked)} logical operators, expected {k}")
    return kernel[picked]


def dimension(a: RingPoly, b: RingPoly) -> int:
    """``k = 2 deg gcd(a, b, x^n - 1)``, computed in F2[x]."""
    if a.n != b.n:
        raise ValueError(f"modulus mismatch: {a.n} vs {b.n}")
    g = poly_gcd(poly_gcd(RingPoly.x_n_minus_1(a.n), a.lift()), b.lift())
    return 2 * g.degree


def _parity_checks(a: RingPoly, b: RingPoly) -> tuple[gf2.BitMatrix, gf2.BitMatrix]:
    A = gf2.circulant(a).dense()
    B = gf2.circulant(b).dense()
    # circulant(transpose(p)) is exactly circulant(p).T
    At = gf2.circulant(transpose(a)).dense()
    Bt = gf2.circulant(transpose(b)).dense()
    hx = gf2.BitMatrix.from_dense(np.hstack([A, B]))
    hz = gf2.BitMatrix.from_dense(np.hstack([Bt, At]))
    return hx, hz


def build_gb(a: RingPoly, b: RingPoly, *, ell: int | None = None) -> CssCode:
    if a.n is None or a.n != b.n:
        raise ValueError(f"modulus mismatch: {a.n} vs {b.n}")
    k = dimension(a, b)
    if k == 0:
        raise InvalidCodeError(f"gcd(a, b, x^{a.n}-1) is constant; k = 0")
    quotient, rem = poly_divide(RingPoly.x_n_minus_1(a.n), a.lift()) if a else (None, a)
    divisor_case = bool(a) and rem.is_zero()
    h = quotient.in_ring(a.n) if divisor_case else None
    hx, hz = _parity_checks(a, b)
    code = CssCode(a=a, b=b, hx=hx, hz=hz, r=k // 2, divisor_case=divisor_case, h=h, ell=ell)
    if not check_css(code):
        raise AssertionError("H_X H_Z^T != 0; circulants failed to commute")
    return code


def build_ub(spec: UBCodeSpec) -> CssCode:
    if spec.r == 0:
        raise InvalidCodeError(f"gcd(a, x^{spec.n}-1) is constant; UB code has k = 0")
    return build_gb(spec.a, frobenius_power(spec.a, spec.ell), ell=spec.ell)


def check_css(code: CssCode) -> bool:
    prod = code.hx.dense().astype(np.int64) @ code.hz.dense().T.astype(np.int64)
    return not (prod & 1).any()


def parse_spec_line(line: str) -> UBCodeSpec:
    """Parse ``n=<int> a=<poly> l=<int>``."""
    fields = {}
    for tok in shlex.split(line):
        key, sep, val = tok.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {tok!r}")
        fields[key] = val
    missing = {"n", "a", "l"} - fields.keys()
    if missing:
        raise ValueError(f"code spec missing {sorted(missing)}: {line!r}")
    n = int(fields["n"])
    return UBCodeSpec(n, parse_poly(fields["a"], n), int(fields["l"]))


def read_spec_file(path: str | Path) -> Iterator[UBCodeSpec]:
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield parse_spec_line(line)
