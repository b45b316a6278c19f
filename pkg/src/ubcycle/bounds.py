"""Distance upper bounds from low-weight logical representatives and induced cycles."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Literal

from . import gf2linalg as gf2
from .code import CssCode
from .logical import LogicalBasis, PauliVector, UnsupportedCodeError, lambda_x, lambda_z
from .ring import RingPoly, shift

Side = Literal["X", "Z"]


def _row_ints(M: gf2.BitMatrix) -> list[int]:
    return [int("".join(map(str, row[::-1])), 2) if row.any() else 0 for row in M.dense()]


def rho4_induced(M: gf2.BitMatrix) -> int:
    """Max over row pairs of C(|common support|, 2)."""
    if M.rows < 2:
        raise ValueError("need at least 2 rows")
    rows = _row_ints(M)
    return max(math.comb((x & y).bit_count(), 2) for x, y in itertools.combinations(rows, 2))


def rho6_induced(M: gf2.BitMatrix) -> int:
    """Max over row triples of |N12| |N13| |N23|.

    ``N_ab`` holds the columns hit by rows a and b but not by the third row of the triple.
    """
    if M.rows < 3:
        raise ValueError("need at least 3 rows")
    rows = _row_ints(M)
    best = 0
    for x, y, z in itertools.combinations(rows, 3):
        xy, xz, yz = x & y, x & z, y & z
        n12 = (xy & ~z).bit_count()
        n13 = (xz & ~y).bit_count()
        n23 = (yz & ~x).bit_count()
        best = max(best, n12 * n13 * n23)
    return best


@dataclass(frozen=True)
class CycleDensities:
    matrix_id: str
    rho4: int | None
    rho6: int | None


def cycle_densities(g: RingPoly, r: int, matrix_id: str) -> CycleDensities:
    M = gf2.first_rows(g, r)
    return CycleDensities(
        matrix_id,
        rho4_induced(M) if r >= 2 else None,
        rho6_induced(M) if r >= 3 else None,
    )


def _side_polys(basis: LogicalBasis, side: Side) -> tuple[RingPoly, RingPoly]:
    if side == "Z":
        return basis.f, basis.h
    if side == "X":
        return basis.fstar, basis.hstar
    raise ValueError(f"side must be 'X' or 'Z', got {side!r}")


def u_bound(basis: LogicalBasis, side: Side, q: int) -> tuple[int, tuple[RingPoly, RingPoly]]:
    """Min weight of ``Lambda(alpha, beta)`` over nonzero pairs with wt(alpha)+wt(beta) <= q.

    Returns the value and the first minimising ``(alpha, beta)`` in enumeration order.
    """
    if q not in (1, 2, 3):
        raise ValueError("q must be 1, 2 or 3")
    r, n = basis.r, basis.code.n
    g_f, g_h = _side_polys(basis, side)
    f_rows = [shift(g_f, i).bits for i in range(r)]
    h_rows = [shift(g_h, j).bits for j in range(r)]
    best, witness = None, None
    for total in range(1, q + 1):
        for wa in range(total, -1, -1):
            wb = total - wa
            for ia in itertools.combinations(range(r), wa):
                acc_a = 0
                for i in ia:
                    acc_a ^= f_rows[i]
                for jb in itertools.combinations(range(r), wb):
                    acc = acc_a
                    for j in jb:
                        acc ^= h_rows[j]
                    wt = acc.bit_count() + wa
                    if best is None or wt < best:
                        best = wt
                        witness = (ia, jb)
    alpha = RingPoly.from_exponents(witness[0], n)
    beta = RingPoly.from_exponents(witness[1], n)
    return best, (alpha, beta)


def witness_vector(basis: LogicalBasis, side: Side, alpha: RingPoly, beta: RingPoly) -> PauliVector:
    return (lambda_z if side == "Z" else lambda_x)(basis, alpha, beta)


def _b2_term(w: int, rho4: int | None, offset: int) -> float:
    if rho4 is None:
        return math.inf
    return 2 * w + offset - math.sqrt(1 + 8 * rho4)


def _b3_term(w: int, rho6: int | None, offset: int) -> float:
    if rho6 is None:
        return math.inf
    return 3 * w + offset - 6 * rho6 ** (1 / 3)


@dataclass(frozen=True)
class SideBounds:
    side: str
    U: dict[int, int]
    witnesses: dict[int, tuple[RingPoly, RingPoly]]
    B1: float
    B2: float
    B3: float
    densities: tuple[CycleDensities, CycleDensities]

    @property
    def B(self) -> dict[int, float]:
        return {1: self.B1, 2: self.B2, 3: self.B3}

    def to_dict(self) -> dict:
        def num(x):
            return None if math.isinf(x) else x

        return {
            "U": {str(q): v for q, v in self.U.items()},
            "witnesses": {str(q): [a.support(), b.support()] for q, (a, b) in self.witnesses.items()},
            "B1": num(self.B1),
            "B2": num(self.B2),
            "B3": num(self.B3),
            "densities": [vars(d) for d in self.densities],
        }


@dataclass(frozen=True)
class BoundsReport:
    X: SideBounds
    Z: SideBounds
    frobenius_bound: int
    d_upper: int = field(init=False)

    def __post_init__(self):
        cands = [self.frobenius_bound]
        for s in (self.X, self.Z):
            cands += list(s.U.values())
            cands += [math.floor(b) for b in s.B.values() if not math.isinf(b)]
        object.__setattr__(self, "d_upper", min(cands))

    def side(self, side: Side) -> SideBounds:
        return self.X if side == "X" else self.Z

    def to_dict(self) -> dict:
        return {
            "X": self.X.to_dict(),
            "Z": self.Z.to_dict(),
            "frobenius_bound": self.frobenius_bound,
            "d_upper": self.d_upper,
        }


def side_bounds(basis: LogicalBasis, side: Side) -> SideBounds:
    g_f, g_h = _side_polys(basis, side)
    r = basis.r
    wf, wh = g_f.weight, g_h.weight
    name_f, name_h = ("f", "h") if side == "Z" else ("f*", "h*")
    df = cycle_densities(g_f, r, f"C_{r}({name_f})")
    dh = cycle_densities(g_h, r, f"C_{r}({name_h})")
    U, wit = {}, {}
    for q in (1, 2, 3):
        U[q], wit[q] = u_bound(basis, side, q)
    return SideBounds(
        side=side,
        U=U,
        witnesses=wit,
        B1=min(wf + 1, wh),
        B2=min(_b2_term(wf, df.rho4, 1), _b2_term(wh, dh.rho4, -1)),
        B3=min(_b3_term(wf, df.rho6, 3), _b3_term(wh, dh.rho6, 0)),
        densities=(df, dh),
    )


def frobenius_weight_bound(code: CssCode) -> int:
    """``min(wt(a)^ell + 1, wt(h))``."""
    if not code.divisor_case or code.ell is None:
        raise UnsupportedCodeError(code)
    return min(code.a.weight**code.ell + 1, code.h.weight)


def b_bounds(code: CssCode, basis: LogicalBasis) -> BoundsReport:
    if not code.divisor_case:
        raise UnsupportedCodeError(code)
    return BoundsReport(side_bounds(basis, "X"), side_bounds(basis, "Z"), frobenius_weight_bound(code))
