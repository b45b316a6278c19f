import json

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import dense_rank
from ubcycle import gf2linalg as gf2
from ubcycle.catalog import CATALOGUE, format_rate
from ubcycle.code import (
    CssCode,
    InvalidCodeError,
    UBCodeSpec,
    build_gb,
    build_ub,
    check_css,
    dimension,
    parse_spec_line,
    read_spec_file,
)
from ubcycle.ring import RingPoly, frobenius_power, gcd_with_modulus, parse_poly


@st.composite
def valid_specs(draw, max_n=40):
    n = draw(st.integers(2, max_n))
    rest = draw(st.lists(st.integers(1, n - 1), max_size=4, unique=True))
    a = RingPoly.from_exponents([0] + rest, n)
    assume(gcd_with_modulus(a, n).degree > 0)
    return UBCodeSpec(n, a, draw(st.integers(1, 6)))


class TestBuild:
    def test_code42(self, code42):
        assert code42.params == (42, 8)
        assert code42.divisor_case and code42.w == 8

    @pytest.mark.parametrize("n,a,ell,N,k,w", [(62, "x^7+x^4+x+1", 3, 124, 14, 8), (126, "x^6+x^5+1", 3, 252, 12, 6)])
    def test_catalogue_rows(self, n, a, ell, N, k, w):
        code = build_ub(UBCodeSpec.parse(n, a, ell))
        assert (code.N, code.k, code.w) == (N, k, w)

    def test_rejects_k_zero(self):
        with pytest.raises(InvalidCodeError):
            build_ub(UBCodeSpec.parse(20, "1+x+x^3", 1))

    def test_gb_equals_ub(self, code42):
        gb = build_gb(code42.a, frobenius_power(code42.a, 1), ell=1)
        for name in ("a", "b", "hx", "hz", "r", "divisor_case", "h", "ell"):
            assert getattr(gb, name) == getattr(code42, name)

    def test_gb_degenerate(self):
        a = parse_poly("1+x", 7)
        code = build_gb(a, a)
        assert code.b == code.a and check_css(code)

    def test_gb_small(self):
        code = build_gb(parse_poly("1+x", 7), parse_poly("1+x^2", 7))
        assert (code.N, code.k) == (14, 2)

    def test_gb_mismatch(self):
        with pytest.raises(ValueError):
            build_gb(parse_poly("1+x", 7), parse_poly("1+x", 8))

    def test_gb_k_zero(self):
        with pytest.raises(InvalidCodeError):
            build_gb(RingPoly.one(7), parse_poly("1+x", 7))


class TestDimension:
    def test_examples(self, code42):
        assert dimension(code42.a, code42.b) == 8
        a = parse_poly("x^18+x^8+x^4+1", 102)
        assert dimension(a, frobenius_power(a, 6)) == 36
        assert dimension(RingPoly.one(9), RingPoly.one(9)) == 0

    @settings(max_examples=200, deadline=None)
    @given(valid_specs())
    def test_css_and_rank_accounting(self, spec):
        code = build_ub(spec)
        assert check_css(code)
        rx, rz = dense_rank(code.hx_dense), dense_rank(code.hz_dense)
        assert rx == rz == code.n - code.r
        assert code.k == 2 * code.n - rx - rz == dimension(code.a, code.b)
        assert code.k % 2 == 0
        assert gf2.kernel_basis(code.hz).shape[0] == code.n + code.r
        assert code.w <= 2 * code.a.weight
        if code.divisor_case:
            assert (code.a * code.h).is_zero()
            assert code.a.degree + code.h.degree == code.n


class TestCss:
    def test_flipped_bit(self, code42):
        hz = code42.hz_dense.copy()
        hz[3, 5] ^= 1
        bad = CssCode(
            a=code42.a,
            b=code42.b,
            hx=code42.hx,
            hz=gf2.BitMatrix.from_dense(hz),
            r=code42.r,
            divisor_case=True,
            h=code42.h,
        )
        assert not check_css(bad)

    def test_layout(self, code42):
        A = gf2.circulant(code42.a).dense()
        B = gf2.circulant(code42.b).dense()
        assert np.array_equal(code42.hx_dense, np.hstack([A, B]))
        assert np.array_equal(code42.hz_dense, np.hstack([B.T, A.T]))


def test_catalogue_params():
    for e in CATALOGUE:
        code = e.build()
        assert (code.N, code.k, code.w) == (e.N, e.k, e.w)
        assert code.divisor_case


def test_format_rate_rounding():
    assert format_rate(8, 42) == "0.190"
    assert format_rate(1, 8) == "0.125"
    assert format_rate(1, 16) == "0.063"  # half-up, not banker's


class TestSpecIO:
    def test_line(self):
        spec = parse_spec_line("n=21 a=1+x+x^2+x^4 l=1")
        assert (spec.n, spec.a.support(), spec.ell) == (21, [0, 1, 2, 4], 1)
        assert str(spec) == "n=21 a=1+x+x^2+x^4 l=1"

    def test_exponent_list(self):
        assert parse_spec_line("n=21 a=0,1,2,4 l=1") == parse_spec_line("n=21 a=1+x+x^2+x^4 l=1")

    def test_missing(self):
        with pytest.raises(ValueError):
            parse_spec_line("n=21 a=1+x")

    def test_file(self, tmp_path):
        p = tmp_path / "codes.txt"
        p.write_text("# two codes\nn=21 a=1+x+x^2+x^4 l=1\n\nn=7 a=1+x l=1  # toy\n")
        assert [s.n for s in read_spec_file(p)] == [21, 7]

    def test_json(self, code42):
        d = json.loads(code42.to_json())
        assert set(d) >= {"n", "N", "k", "r", "w", "divisor_case", "a", "b", "h"}
        assert d["h"] == "1+x+x^3+x^7+x^8+x^10+x^14+x^15+x^17"
