import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import span
from ubcycle import gf2linalg as gf2
from ubcycle.catalog import CATALOGUE
from ubcycle.code import UBCodeSpec, build_ub
from ubcycle.logical import (
    PauliVector,
    UnsupportedCodeError,
    is_nontrivial_logical_x,
    is_nontrivial_logical_z,
    lambda_x,
    lambda_z,
    logical_basis,
)
from ubcycle.ring import RingPoly


def bits_of(k, r):
    return [(k >> i) & 1 for i in range(r)]


class TestBasis:
    def test_code42(self, code42):
        B = logical_basis(code42)
        assert B.r == 4 and len(B.z_vectors) + len(B.x_vectors) == 16
        assert [z.weight for z in B.z1] == [5] * 4
        assert B.f.weight == B.fstar.weight == 4

    def test_toy(self, toy):
        B = logical_basis(toy)
        assert B.r == 1
        assert B.h.support() == list(range(7))
        assert B.z1[0].u == RingPoly.one(7)
        assert B.z2[0].u.is_zero() and B.z2[0].v.weight == 7

    @pytest.mark.parametrize("entry", CATALOGUE[:7], ids=lambda e: e.label)
    def test_independence(self, entry):
        code = entry.build()
        B = logical_basis(code)
        for stab, reps in ((code.hx, B.z_matrix()), (code.hz, B.x_matrix())):
            stacked = gf2.BitMatrix.from_dense(np.vstack([stab.dense(), reps]))
            assert gf2.rank(stacked) - gf2.rank(stab) == 2 * B.r == code.k

    def test_non_divisor(self):
        code = build_ub(UBCodeSpec.parse(9, "1+x+x^2+x^4", 1))
        assert not code.divisor_case
        with pytest.raises(UnsupportedCodeError) as exc:
            logical_basis(code)
        assert exc.value.r == code.r and exc.value.gcd.degree > 0

    def test_json(self, code42):
        B = logical_basis(code42)
        d = B.to_dict()
        assert d["r"] == 4 and len(d["x2"]) == 4
        assert d["z1"][0] == [[0], B.f.support()]
        assert d["x2"][1] == [B.x2[1].u.support(), []]


class TestLambda:
    def test_zero_and_units(self, code42):
        B = logical_basis(code42)
        r = B.r
        assert lambda_z(B, [0] * r, [0] * r).weight == 0
        assert lambda_x(B, [0] * r, [0] * r).weight == 0
        for i in range(r):
            e = [int(j == i) for j in range(r)]
            assert lambda_z(B, e, [0] * r) == B.z1[i]
            assert lambda_x(B, e, [0] * r) == B.x1[i]
            assert lambda_z(B, [0] * r, e) == B.z2[i]
            assert lambda_x(B, [0] * r, e) == B.x2[i]

    def test_length_mismatch(self, code42):
        B = logical_basis(code42)
        with pytest.raises(ValueError):
            lambda_z(B, [1, 0], [0, 0, 0, 0])

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 255))
    def test_kernel_and_weight(self, code42, k):
        B = logical_basis(code42)
        alpha, beta = bits_of(k, 4), bits_of(k >> 4, 4)
        z, x = lambda_z(B, alpha, beta), lambda_x(B, alpha, beta)
        assert not gf2.mat_vec(code42.hz, z.bits()).any()
        assert not gf2.mat_vec(code42.hx, x.bits()).any()
        a_ = RingPoly.from_exponents([i for i in range(4) if alpha[i]], 21)
        assert x.weight == (B.fstar * a_ + B.hstar * RingPoly.from_exponents([i for i in range(4) if beta[i]], 21)).weight + a_.weight
        assert is_nontrivial_logical_z(code42, z) == (k != 0)
        assert is_nontrivial_logical_x(code42, x) == (k != 0)

    def test_bijection_small_codes(self):
        for n, a in ((7, "1+x"), (9, "1+x+x^2"), (7, "1+x+x^3"), (9, "1+x^3")):
            code = build_ub(UBCodeSpec.parse(n, a, 1))
            B = logical_basis(code)
            r = B.r
            reps = [lambda_z(B, bits_of(k, r), bits_of(k >> r, r)).bits() for k in range(4**r)]
            for i, j in itertools.combinations(range(len(reps)), 2):
                assert gf2.in_row_space(code.hx, reps[i] ^ reps[j]) is False


def test_toy_cosets_match_enumeration(toy):
    # brute force: all of F2^14, keep ker(H_Z), group by coset of rs(H_X)
    stab = span(toy.hx_dense)
    H = toy.hz_dense.astype(int)
    kernel = [np.array(v, np.uint8) for v in itertools.product((0, 1), repeat=14) if not (H @ np.array(v) % 2).any()]
    cosets = {min((k ^ np.frombuffer(s, np.uint8)).tobytes() for s in stab) for k in kernel}
    assert len(kernel) == 2**8 and len(cosets) == 4
    B = logical_basis(toy)
    ours = {min((lambda_z(B, [a], [b]).bits() ^ np.frombuffer(s, np.uint8)).tobytes() for s in stab) for a in (0, 1) for b in (0, 1)}
    assert ours == cosets


class TestNontrivial:
    def test_stabilizers(self, code42):
        for i in range(0, 21, 4):
            assert not is_nontrivial_logical_z(code42, code42.hx.row(i))
            assert not is_nontrivial_logical_x(code42, code42.hz.row(i))

    def test_syndrome(self, code42):
        v = np.zeros(42, dtype=np.uint8)
        v[0] = 1
        assert not is_nontrivial_logical_z(code42, v)

    def test_pauli_vector(self, code42):
        v = PauliVector.from_bits(logical_basis(code42).z1[2].bits())
        assert v == logical_basis(code42).z1[2]
        assert is_nontrivial_logical_z(code42, v)
