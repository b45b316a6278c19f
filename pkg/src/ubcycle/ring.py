"""Polynomials over F2, either in F2[x] or in the quotient ring R_n = F2[x]/(x^n - 1).

Coefficients are packed into a Python ``int`` (bit ``i`` is the coefficient of
``x^i``), so addition is XOR and multiplication by ``x^k`` is a shift (or a
rotation inside R_n).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

NEG_INF = float("-inf")

_TERM = re.compile(r"^(?:1|x|x\^(\d+))$")


class PolyParseError(ValueError):
    """Raised when polynomial text contains a malformed token."""

    def __init__(self, token: str, text: str):
        super().__init__(f"malformed polynomial token {token!r} in {text!r}")
        self.token = token


@dataclass(frozen=True)
class RingPoly:
    """Polynomial with coefficients packed in ``bits``.

    ``n`` is the ring modulus length; ``None`` marks a plain F2[x] polynomial.
    Elements of R_n are always stored reduced, so ``bits < 2**n``.
    """

    bits: int
    n: int | None = None

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("bits must be non-negative")
        if self.n is not None:
            if self.n < 1:
                raise ValueError(f"ring length must be positive, got {self.n}")
            if self.bits >> self.n:
                object.__setattr__(self, "bits", _reduce(self.bits, self.n))

    # construction helpers

    @classmethod
    def from_exponents(cls, exps: Iterable[int], n: int | None = None) -> RingPoly:
        bits = 0
        for e in exps:
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if n is not None:
                e %= n
            bits ^= 1 << e
        return cls(bits, n)

    @classmethod
    def monomial(cls, k: int, n: int | None = None) -> RingPoly:
        return cls.from_exponents([k], n)

    @classmethod
    def one(cls, n: int | None = None) -> RingPoly:
        return cls(1, n)

    @classmethod
    def zero(cls, n: int | None = None) -> RingPoly:
        return cls(0, n)

    @classmethod
    def x_n_minus_1(cls, n: int) -> RingPoly:
        """``x^n - 1`` as an F2[x] polynomial (it is zero in R_n)."""
        return cls((1 << n) | 1)

    # views

    @property
    def coeffs(self) -> list[int]:
        length = self.n if self.n is not None else max(self.bits.bit_length(), 1)
        return [(self.bits >> i) & 1 for i in range(length)]

    def support(self) -> list[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    @property
    def degree(self) -> int | float:
        """Largest exponent present; ``NEG_INF`` for the zero polynomial."""
        return self.bits.bit_length() - 1 if self.bits else NEG_INF

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def lift(self) -> RingPoly:
        """Forget the modulus: the canonical representative as an F2[x] element."""
        return RingPoly(self.bits)

    def in_ring(self, n: int) -> RingPoly:
        return RingPoly(self.bits, n)

    def __str__(self) -> str:
        return format_poly(self)

    # operators

    def __add__(self, other: RingPoly) -> RingPoly:
        return poly_add(self, other)

    __sub__ = __add__

    def __mul__(self, other: RingPoly) -> RingPoly:
        return poly_mul(self, other)

    def __pow__(self, e: int) -> RingPoly:
        return poly_pow(self, e)

    def __bool__(self) -> bool:
        return self.bits != 0


def _reduce(bits: int, n: int) -> int:
    mask = (1 << n) - 1
    out = 0
    while bits:
        out ^= bits & mask
        bits >>= n
    return out


def _rotl(bits: int, k: int, n: int) -> int:
    k %= n
    if k == 0:
        return bits
    mask = (1 << n) - 1
    return ((bits << k) | (bits >> (n - k))) & mask


def _check_same_ring(p: RingPoly, q: RingPoly) -> None:
    if p.n != q.n:
        raise ValueError(f"modulus mismatch: {p.n} vs {q.n}")


def _clmul(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def _mulmod(a: int, b: int, n: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= _rotl(b, low.bit_length() - 1, n)
        a ^= low
    return out


def parse_poly(text: str, n: int | None) -> RingPoly:
    """Parse ``"1+x+x^2+x^4"`` or ``"0,1,2,4"`` into a polynomial.

    Exponents are reduced mod ``n`` when ``n`` is given; repeated exponents
    cancel in pairs.
    """
    if n is not None and n <= 0:
        raise ValueError(f"ring length must be positive, got {n}")
    s = text.strip().replace(" ", "")
    if not s:
        raise PolyParseError(text, text)
    exps = []
    # a bare "1" is the symbolic constant, as printed by format_poly
    if "x" not in s and "+" not in s and s != "1":
        for tok in s.split(","):
            if not tok.isdigit():
                if tok == "" and s.endswith(",") and s.count(",") == 1:
                    continue
                raise PolyParseError(tok, text)
            exps.append(int(tok))
    else:
        for tok in s.split("+"):
            m = _TERM.match(tok)
            if m is None:
                raise PolyParseError(tok, text)
            if tok == "1":
                exps.append(0)
            elif tok == "x":
                exps.append(1)
            else:
                exps.append(int(m.group(1)))
    return RingPoly.from_exponents(exps, n)


def format_poly(p: RingPoly) -> str:
    """Canonical symbolic form, exponents ascending.

    The zero polynomial prints as ``"0"``, which parses back as the constant 1
    (exponent-list form), so zero does not round-trip.
    """
    terms = []
    for e in p.support():
        terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
    return "+".join(terms) if terms else "0"


def poly_add(p: RingPoly, q: RingPoly) -> RingPoly:
    _check_same_ring(p, q)
    return RingPoly(p.bits ^ q.bits, p.n)


def poly_mul(p: RingPoly, q: RingPoly) -> RingPoly:
    _check_same_ring(p, q)
    if p.n is None:
        return RingPoly(_clmul(p.bits, q.bits))
    return RingPoly(_mulmod(p.bits, q.bits, p.n), p.n)


def poly_pow(p: RingPoly, e: int) -> RingPoly:
    if e < 0:
        raise ValueError("negative exponent")
    result = RingPoly.one(p.n)
    base = p
    while e:
        if e & 1:
            result = poly_mul(result, base)
        base = poly_mul(base, base)
        e >>= 1
    return result


def poly_divide(p: RingPoly, d: RingPoly) -> tuple[RingPoly, RingPoly]:
    """Long division in F2[x]: returns ``(q, r)`` with ``p = q*d + r``, ``deg r < deg d``.

    Inputs are treated as their F2[x] representatives; the outputs carry no modulus.
    """
    if d.bits == 0:
        raise ZeroDivisionError("polynomial division by zero")
    a, b = p.bits, d.bits
    db = b.bit_length() - 1
    quo = 0
    while a and a.bit_length() - 1 >= db:
        shift = a.bit_length() - 1 - db
        quo |= 1 << shift
        a ^= b << shift
    return RingPoly(quo), RingPoly(a)


def poly_gcd(p: RingPoly, q: RingPoly) -> RingPoly:
    """Euclidean gcd in F2[x] (never in R_n); the result is monic automatically."""
    a, b = p.bits, q.bits
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, poly_divide(RingPoly(a), RingPoly(b))[1].bits
    return RingPoly(a)


def gcd_with_modulus(p: RingPoly, n: int) -> RingPoly:
    """``gcd(p, x^n - 1)`` in F2[x]."""
    return poly_gcd(p.lift(), RingPoly.x_n_minus_1(n))


def frobenius_power(a: RingPoly, ell: int) -> RingPoly:
    """``a(x)^(2^ell)`` in R_n via the exponent map ``i -> 2^ell * i mod n``.

    Colliding exponents cancel. ``ell = 0`` returns ``a``.
    """
    if a.n is None:
        raise ValueError("frobenius_power needs a ring element")
    if ell < 0:
        raise ValueError("ell must be non-negative")
    t = pow(2, ell, a.n)
    return RingPoly.from_exponents([(t * i) % a.n for i in a.support()], a.n)


def reciprocal(p: RingPoly) -> RingPoly:
    """``x^deg(p) * p(1/x)`` using the degree of the stored representative."""
    if p.bits == 0:
        raise ValueError("reciprocal of the zero polynomial")
    d = p.bits.bit_length() - 1
    return RingPoly.from_exponents([d - e for e in p.support()], p.n)


def transpose(p: RingPoly) -> RingPoly:
    """``p(x^-1)`` in R_n: the generator of ``circulant(p).T``.

    Differs from :func:`reciprocal` by the unit ``x^deg(p)``.
    """
    if p.n is None:
        raise ValueError("transpose needs a ring element")
    return RingPoly.from_exponents([(-e) % p.n for e in p.support()], p.n)


def weight(p: RingPoly) -> int:
    return p.weight


def shift(p: RingPoly, k: int) -> RingPoly:
    """``x^k * p`` in R_n."""
    return RingPoly(_rotl(p.bits, k, p.n), p.n)


def divides_x_n_minus_1(a: RingPoly, n: int) -> bool:
    if a.bits == 0:
        return False
    return poly_divide(RingPoly.x_n_minus_1(n), a.lift())[1].bits == 0
