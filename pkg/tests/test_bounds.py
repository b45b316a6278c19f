import itertools
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ubcycle import gf2linalg as gf2
from ubcycle.bounds import (
    _b2_term,
    _b3_term,
    b_bounds,
    frobenius_weight_bound,
    cycle_densities,
    rho4_induced,
    rho6_induced,
    u_bound,
    witness_vector,
)
from ubcycle.catalog import CATALOGUE
from ubcycle.code import UBCodeSpec, build_ub
from ubcycle.logical import UnsupportedCodeError, is_nontrivial_logical_x, is_nontrivial_logical_z, logical_basis


def chordless_cycle_density(M: np.ndarray, c: int) -> int:
    """Max number of chordless 2c-cycles over check sets of size c, by walking the Tanner graph."""
    rows, cols = M.shape
    edges = {(i, j) for i in range(rows) for j in range(cols) if M[i, j]}
    per_set = Counter()
    seen = set()
    for checks in itertools.permutations(range(rows), c):
        if checks[0] != min(checks):
            continue
        # bit between consecutive checks, closing back to the first
        choices = []
        for a, b in zip(checks, checks[1:] + checks[:1]):
            choices.append([j for j in range(cols) if (a, j) in edges and (b, j) in edges])
        for bits in itertools.product(*choices):
            if len(set(bits)) != c:
                continue
            chords = sum((i, j) in edges for i in checks for j in bits)
            if chords != 2 * c:
                continue
            cyc = frozenset(
                [(checks[k], bits[k]) for k in range(c)] + [(checks[(k + 1) % c], bits[k]) for k in range(c)]
            )
            if cyc not in seen:
                seen.add(cyc)
                per_set[frozenset(checks)] += 1
    return max(per_set.values(), default=0)


small_mats = st.tuples(st.integers(3, 6), st.integers(2, 24)).flatmap(
    lambda s: arrays(np.uint8, s, elements=st.sampled_from([0, 0, 1]))
)


class TestDensities:
    def test_code42(self, code42):
        B = logical_basis(code42)
        Cf, Ch = gf2.first_rows(B.f, 4), gf2.first_rows(B.h, 4)
        assert (rho4_induced(Cf), rho4_induced(Ch)) == (1, 3)
        assert (rho6_induced(Cf), rho6_induced(Ch)) == (4, 27)

    def test_oracle_on_code42(self, code42):
        B = logical_basis(code42)
        for g in (B.f, B.h, B.fstar, B.hstar):
            M = gf2.first_rows(g, 4)
            assert rho4_induced(M) == chordless_cycle_density(M.dense(), 2)
            assert rho6_induced(M) == chordless_cycle_density(M.dense(), 3)

    @settings(max_examples=60, deadline=None)
    @given(small_mats)
    def test_oracle_random(self, M):
        bm = gf2.BitMatrix.from_dense(M)
        assert rho4_induced(bm) == chordless_cycle_density(M, 2)
        assert rho6_induced(bm) == chordless_cycle_density(M, 3)

    def test_trivial(self):
        disjoint = gf2.BitMatrix.from_dense(np.eye(4, 8, dtype=np.uint8))
        assert rho4_induced(disjoint) == 0 and rho6_induced(disjoint) == 0

    def test_too_few_rows(self):
        with pytest.raises(ValueError):
            rho4_induced(gf2.BitMatrix.identity(1))
        with pytest.raises(ValueError):
            rho6_induced(gf2.BitMatrix.zeros(2, 5))

    def test_small_r_reports_none(self, toy):
        d = cycle_densities(logical_basis(toy).f, 1, "C_1(f)")
        assert d.rho4 is None and d.rho6 is None


class TestUBound:
    def test_code42(self, code42):
        B = logical_basis(code42)
        for side in "XZ":
            assert [u_bound(B, side, q)[0] for q in (1, 2, 3)] == [5, 5, 5]

    def test_toy(self, toy):
        assert u_bound(logical_basis(toy), "X", 1)[0] == 3

    def test_bad_q(self, code42):
        with pytest.raises(ValueError):
            u_bound(logical_basis(code42), "X", 4)

    @pytest.mark.parametrize("entry", CATALOGUE[:7], ids=lambda e: e.label)
    def test_witnesses_and_closed_form(self, entry):
        code = entry.build()
        B = logical_basis(code, validate=False)
        for side, check in (("X", is_nontrivial_logical_x), ("Z", is_nontrivial_logical_z)):
            for q in (1, 2, 3):
                val, (alpha, beta) = u_bound(B, side, q)
                v = witness_vector(B, side, alpha, beta)
                assert v.weight == val and check(code, v)
            assert u_bound(B, side, 1)[0] == min(B.f.weight + 1, B.h.weight)


class TestBBounds:
    def test_code42(self, code42):
        rep = b_bounds(code42, logical_basis(code42))
        for s in (rep.X, rep.Z):
            assert s.B1 == 5 and s.B2 == pytest.approx(6.0)
            assert s.B3 == pytest.approx(15 - 6 * 4 ** (1 / 3), abs=1e-9)
            assert s.B3 == pytest.approx(5.4756, abs=1e-3)
        assert rep.frobenius_bound == 5 and rep.d_upper == 5

    def test_code60(self, code60):
        rep = b_bounds(code60, logical_basis(code60))
        assert rep.X.B1 == 15 and rep.X.B2 == pytest.approx(6.0)
        assert rep.X.B3 == pytest.approx(5.0897, abs=1e-3) and math.floor(rep.X.B3) == 5
        assert rep.d_upper == 5

    def test_zero_density_formula(self):
        assert _b2_term(4, 0, 1) == 2 * 4 + 1 - 1
        assert _b2_term(9, 0, -1) == 2 * 9 - 1 - 1
        assert _b3_term(4, 0, 3) == 3 * 4 + 3
        assert _b3_term(9, 0, 0) == 27

    def test_r1_code(self, toy):
        rep = b_bounds(toy, logical_basis(toy))
        assert math.isinf(rep.X.B2) and math.isinf(rep.X.B3)
        assert rep.to_dict()["X"]["B2"] is None
        assert rep.d_upper == 3

    def test_frobenius_weight_bound(self, code42, toy):
        assert frobenius_weight_bound(code42) == 5
        assert frobenius_weight_bound(toy) == 3

    def test_wt_h_dominates(self):
        code = build_ub(UBCodeSpec.parse(7, "1+x", 5))
        assert frobenius_weight_bound(code) == code.h.weight == 7

    def test_non_divisor(self):
        code = build_ub(UBCodeSpec.parse(9, "1+x+x^2+x^4", 1))
        with pytest.raises(UnsupportedCodeError):
            frobenius_weight_bound(code)

    @pytest.mark.parametrize("entry", CATALOGUE, ids=lambda e: e.label)
    def test_ordering(self, entry):
        code = entry.build()
        rep = b_bounds(code, logical_basis(code, validate=False))
        for s in (rep.X, rep.Z):
            U = s.U
            assert U[3] <= U[2] <= U[1] <= s.B1 <= rep.frobenius_bound
            assert U[2] <= s.B2 and U[3] <= s.B3
        # the two sides are mirror images
        assert rep.X.U == rep.Z.U and rep.X.B == rep.Z.B
