import itertools
import math

import numpy as np
import pytest

from conftest import span
from ubcycle.bounds import b_bounds
from ubcycle.code import UBCodeSpec, build_ub
from ubcycle.distance import (
    DistanceLimitError,
    SearchConfig,
    capped_distance,
    certify_distance,
    code_search,
    exact_distance,
    exponent_sets,
    low_weight_search,
)
from ubcycle.logical import is_nontrivial_logical_z, lambda_z, logical_basis


def brute_force_distance(code) -> int:
    """Scan all of F2^(2n); only sensible for the n=7 toy code."""
    H = code.hz_dense.astype(np.int64)
    stab = span(code.hx_dense)
    best = math.inf
    for v in itertools.product((0, 1), repeat=code.N):
        v = np.array(v, dtype=np.uint8)
        w = int(v.sum())
        if w == 0 or w >= best or ((H @ v) % 2).any():
            continue
        if v.tobytes() not in stab:
            best = w
    return best


TOY_DISTANCE = 3


class TestExact:
    def test_toy_against_brute_force(self, toy):
        assert brute_force_distance(toy) == TOY_DISTANCE
        res = exact_distance(toy)
        assert res.d_found == TOY_DISTANCE and res.certified

    def test_code42(self, code42):
        res = exact_distance(code42)
        assert res.d_found == 5
        assert res.witness.weight == 5 and is_nontrivial_logical_z(code42, res.witness)

    def test_limit(self, code60):
        with pytest.raises(DistanceLimitError):
            exact_distance(code60)

    def test_below_every_bound(self, code42):
        rep = b_bounds(code42, logical_basis(code42))
        assert exact_distance(code42).d_found <= rep.d_upper

    def test_injected_logical(self, code42):
        # any nontrivial logical bounds d from above
        B = logical_basis(code42)
        v = lambda_z(B, [1, 1, 0, 1], [0, 1, 1, 0])
        assert exact_distance(code42).d_found <= v.weight


class TestCapped:
    def test_code42(self, code42):
        assert capped_distance(code42, 4) is None
        res = capped_distance(code42, 5)
        assert res.d_found == 5 and is_nontrivial_logical_z(code42, res.witness)

    def test_code60_certified(self, code60):
        res = certify_distance(code60)
        assert res.d_found == 5 and res.certified and res.exhausted_weight == 4
        assert is_nontrivial_logical_z(code60, res.witness)

    def test_toy(self, toy):
        assert capped_distance(toy, 5).d_found == TOY_DISTANCE


class TestLowWeightSearch:
    def test_code42(self, code42):
        res = low_weight_search(code42, budget_secs=5, max_iters=200)
        assert res.d_found == 5
        assert res.d_found >= exact_distance(code42).d_found
        assert is_nontrivial_logical_z(code42, res.witness) and res.witness.weight == res.d_found

    def test_124(self):
        code = build_ub(UBCodeSpec.parse(62, "x^7+x^4+x+1", 3))
        res = low_weight_search(code, target=11, budget_secs=120, seed=1)
        assert res.d_found == 11 and is_nontrivial_logical_z(code, res.witness)

    def test_seed_only(self, code42):
        res = low_weight_search(code42, max_iters=0)
        assert res.d_found == 5 and res.iterations == 0


class TestSearch:
    @pytest.mark.parametrize("n,c", [(10, 3), (21, 4), (13, 2)])
    def test_candidate_count(self, n, c):
        sets = [s for s in exponent_sets(n, c) if len(s) == c]
        assert len(sets) == math.comb(n - 1, c - 1)
        assert all(s[0] == 0 for s in sets) and sets == sorted(sets)

    def test_code42_found_first(self):
        cfg = SearchConfig(n_values=[21], ell_values=[1], w=8, require_divisor=True)
        hits = [h for h in code_search(cfg) if h.code.a.weight == 4]
        assert hits[0].code.a.support() == [0, 1, 2, 4]

    def test_catalogue_row_found(self):
        cfg = SearchConfig(n_values=[126], ell_values=[3], w=6, require_divisor=True, min_k=12)
        supports = [h.code.a.support() for h in code_search(cfg)]
        assert [0, 5, 6] in supports

    def test_min_k_too_high(self):
        cfg = SearchConfig(n_values=[15], ell_values=[1], w=6, min_k=100)
        assert list(code_search(cfg)) == []

    def test_bound_filter(self):
        cfg = SearchConfig(n_values=[21], ell_values=[1], w=8, require_divisor=True, min_dupper=5)
        hits = list(code_search(cfg))
        assert hits and all(h.bounds.d_upper >= 5 for h in hits)

    def test_deterministic_order(self):
        cfg = SearchConfig(n_values=[15, 21], ell_values=[1, 2], w=6, require_divisor=True)
        keys = [(tuple(h.code.a.support()), h.spec.ell, h.spec.n) for h in code_search(cfg)]
        assert keys == sorted(keys)
        par = SearchConfig(n_values=[15, 21], ell_values=[1, 2], w=6, require_divisor=True, threads=2)
        assert [(tuple(h.code.a.support()), h.spec.ell, h.spec.n) for h in code_search(par)] == keys

    def test_bad_config(self):
        with pytest.raises(ValueError):
            SearchConfig(n_values=[21], ell_values=[1], w=1)
        with pytest.raises(ValueError):
            SearchConfig(n_values=[], ell_values=[1], w=4)
