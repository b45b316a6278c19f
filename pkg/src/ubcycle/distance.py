"""Minimum distance: exact enumeration, weight-capped certification, and
information-set search; plus the single-polynomial code search.

All routines work on the Z side, ``d_Z = min wt(v)`` over ``v in ker(H_Z) \\ rs(H_X)``.
For GB codes ``H_X`` and ``H_Z`` are permutation equivalent, so ``d = d_Z``.
"""

from __future__ import annotations

import heapq
import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import gf2linalg as gf2
from .bounds import BoundsReport, b_bounds, u_bound, witness_vector
from .code import CssCode, UBCodeSpec, build_ub
from .logical import LogicalBasis, PauliVector, logical_basis
from .ring import RingPoly, divides_x_n_minus_1, gcd_with_modulus

DEFAULT_DIM_LIMIT = 26
_TABLE_BITS = 20


class DistanceLimitError(ValueError):
    """The kernel is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class DistanceResult:
    """``exhausted_weight`` is the largest w for which no nontrivial logical of
    weight <= w exists, as proven by the method (0 when nothing is proven)."""

    method: str
    d_found: int
    witness: PauliVector
    exhausted_weight: int
    elapsed: float
    iterations: int = 0

    @property
    def certified(self) -> bool:
        return self.exhausted_weight >= self.d_found - 1

    def to_dict(self) -> dict:
        u, v = self.witness.supports()
        return {
            "method": self.method,
            "d_found": self.d_found,
            "certified": self.certified,
            "exhausted_weight": self.exhausted_weight,
            "witness": [u, v],
            "elapsed": round(self.elapsed, 3),
            "iterations": self.iterations,
        }


def _signatures(code: CssCode) -> np.ndarray:
    """Per-column logical signature: bit i is column j of the i-th X logical.

    A kernel vector is nontrivial iff the XOR of its columns' signatures is nonzero.
    """
    L = code.x_logicals.astype(np.uint64)
    weights = np.uint64(1) << np.arange(L.shape[0], dtype=np.uint64)
    return (L * weights[:, None]).sum(axis=0, dtype=np.uint64)


def _span_table(rows: np.ndarray) -> np.ndarray:
    """All 2^m combinations of packed rows, built by doubling."""
    table = np.zeros((1, rows.shape[1]), dtype=np.uint64)
    for r in rows:
        table = np.concatenate([table, table ^ r])
    return table


def exact_distance(code: CssCode, dim_limit: int = DEFAULT_DIM_LIMIT) -> DistanceResult:
    """Enumerate all of ker(H_Z) as (logical class) + (stabilizer combination).

    The stabilizer span is tabulated once; logical class representatives are
    visited in Gray-code order so each step is a single XOR against the table.
    """
    dim = code.n + code.r
    if dim > dim_limit:
        raise DistanceLimitError(f"kernel dimension {dim} exceeds limit {dim_limit}")
    t0 = time.perf_counter()
    stab = code.hx.echelon[0]
    logicals = gf2.pack_rows(code.z_logicals)
    inner, outer = stab[:_TABLE_BITS], stab[_TABLE_BITS:]
    table = _span_table(inner)
    gens = np.concatenate([logicals, outer]) if len(outer) else logicals
    n_log = logicals.shape[0]

    best, best_vec = math.inf, None
    cur = np.zeros(stab.shape[1], dtype=np.uint64)
    coeffs = 0
    for step in range(1, 2 ** gens.shape[0]):
        bit = (step & -step).bit_length() - 1
        cur = cur ^ gens[bit]
        coeffs ^= 1 << bit
        if coeffs & ((1 << n_log) - 1) == 0:
            continue
        weights = gf2.popcount(table ^ cur, axis=1)
        i = int(np.argmin(weights))
        if weights[i] < best:
            best = int(weights[i])
            best_vec = table[i] ^ cur
            if best == 1:
                break
    bits = gf2.unpack_rows(best_vec[None, :], code.N)[0]
    return DistanceResult("exact", best, PauliVector.from_bits(bits), best - 1, time.perf_counter() - t0, 2 ** gens.shape[0])


def capped_distance(code: CssCode, max_weight: int) -> DistanceResult | None:
    """Exhaustively test every vector of weight <= ``max_weight``.

    Kernel vectors of weight w are found by a meet-in-the-middle join on the
    syndrome of their first ceil(w/2) and last floor(w/2) positions. Returns the
    lightest nontrivial logical (certified minimal), or None if there is none up
    to the cap.
    """
    t0 = time.perf_counter()
    N = code.N
    hz = code.hz_dense
    col_syn = [int(x) for x in _pack_cols(hz)]
    sig = [int(s) for s in _signatures(code)]
    for w in range(1, max_weight + 1):
        w1, w2 = (w + 1) // 2, w // 2
        right: dict[int, list[tuple[int, tuple[int, ...], int]]] = {}
        for combo in itertools.combinations(range(N), w2):
            s = g = 0
            for j in combo:
                s ^= col_syn[j]
                g ^= sig[j]
            right.setdefault(s, []).append((combo[0] if combo else N, combo, g))
        for combo in itertools.combinations(range(N), w1):
            s = g = 0
            for j in combo:
                s ^= col_syn[j]
                g ^= sig[j]
            for first, rc, rg in right.get(s, ()):
                if first > combo[-1] and g != rg:
                    bits = np.zeros(N, dtype=np.uint8)
                    bits[list(combo + rc)] = 1
                    return DistanceResult(
                        "capped-exact", w, PauliVector.from_bits(bits), w - 1, time.perf_counter() - t0
                    )
    return None


def _pack_cols(dense: np.ndarray) -> list[int]:
    """Columns of a 0/1 matrix as Python ints (bit i = row i)."""
    weights = [1 << i for i in range(dense.shape[0])]
    return [sum(w for w, b in zip(weights, col) if b) for col in dense.T]


def certify_distance(code: CssCode, basis: LogicalBasis | None = None, max_weight: int | None = None) -> DistanceResult:
    """Upper bound from low-weight representatives, closed by the capped search.

    Useful when the kernel is too big for :func:`exact_distance` but the
    distance is small: the best ``U_q`` witness gives ``d <= U``, and exhaustive
    search through weight ``U - 1`` either finds something lighter or proves ``d = U``.
    """
    t0 = time.perf_counter()
    basis = basis or logical_basis(code)
    seed = _seed_from_bounds(basis)
    cap = seed.weight - 1 if max_weight is None else min(max_weight, seed.weight - 1)
    found = capped_distance(code, cap) if cap >= 1 else None
    elapsed = time.perf_counter() - t0
    if found is not None:
        return DistanceResult("capped-exact", found.d_found, found.witness, found.exhausted_weight, elapsed)
    return DistanceResult("capped-exact", seed.weight, seed, cap, elapsed)


def _seed_from_bounds(basis: LogicalBasis) -> PauliVector:
    best = None
    for q in (1, 2, 3):
        _, (alpha, beta) = u_bound(basis, "Z", q)
        v = witness_vector(basis, "Z", alpha, beta)
        if best is None or v.weight < best.weight:
            best = v
    return best


def low_weight_search(
    code: CssCode,
    basis: LogicalBasis | None = None,
    *,
    budget_secs: float = 60.0,
    max_iters: int | None = None,
    target: int | None = None,
    seed: int = 0,
    pairs: bool = True,
) -> DistanceResult:
    """Randomised information-set search for light nontrivial Z logicals.

    Starts from the weight-q representative witnesses (divisor case), then
    repeatedly puts a generator matrix of ker(H_Z) into systematic form on a
    random column order and inspects single rows and pairs of rows. Stops at the
    time budget, the iteration cap, or once ``target`` weight is reached.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    N = code.N
    best_w, best_bits = math.inf, None
    if basis is None and code.divisor_case and code.ell is not None:
        basis = logical_basis(code, validate=False)
    if basis is not None:
        v = _seed_from_bounds(basis)
        best_w, best_bits = v.weight, v.bits()

    G = gf2.kernel_basis(code.hz)
    L = code.x_logicals
    K = G.shape[0]
    it = 0
    while True:
        if target is not None and best_w <= target:
            break
        if max_iters is not None and it >= max_iters:
            break
        if time.perf_counter() - t0 > budget_secs:
            break
        it += 1
        perm = rng.permutation(N)
        R, _ = gf2.rref(gf2.pack_rows(G[:, perm]), N)
        Lp = gf2.pack_rows(L[:, perm])
        sig = (gf2.popcount(R[:, None, :] & Lp[None, :, :], axis=2) & 1).astype(np.uint64)
        sig = (sig << np.arange(sig.shape[1], dtype=np.uint64)).sum(axis=1, dtype=np.uint64)
        wts = gf2.popcount(R, axis=1)
        cand = np.flatnonzero(sig != 0)
        if cand.size:
            i = cand[np.argmin(wts[cand])]
            if wts[i] < best_w:
                best_w, best_bits = int(wts[i]), _unpermute(R[i], perm, N)
        if pairs:
            for lo in range(0, K, 64):
                block = R[lo : lo + 64]
                pw = gf2.popcount(block[:, None, :] ^ R[None, :, :], axis=2)
                ok = (sig[lo : lo + 64, None] != sig[None, :]) & (np.arange(lo, lo + len(block))[:, None] < np.arange(K)[None, :])
                pw = np.where(ok, pw, np.iinfo(np.int64).max)
                flat = int(np.argmin(pw))
                a, b = divmod(flat, K)
                if pw[a, b] < best_w:
                    best_w = int(pw[a, b])
                    best_bits = _unpermute(block[a] ^ R[b], perm, N)
    if best_bits is None:
        raise RuntimeError("no nontrivial logical found within budget")
    return DistanceResult("low-weight-search", best_w, PauliVector.from_bits(best_bits), 0, time.perf_counter() - t0, it)


def _unpermute(row: np.ndarray, perm: np.ndarray, N: int) -> np.ndarray:
    bits_p = gf2.unpack_rows(row[None, :], N)[0]
    out = np.zeros(N, dtype=np.uint8)
    out[perm] = bits_p
    return out


# code search


@dataclass(frozen=True)
class SearchConfig:
    """``w`` is the stabilizer weight budget; candidates have wt(a) <= w/2."""

    n_values: Sequence[int]
    ell_values: Sequence[int]
    w: int
    require_divisor: bool = False
    min_k: int = 0
    min_dupper: int | None = None
    max_dupper: int | None = None
    threads: int = 1

    def __post_init__(self):
        if self.w < 2:
            raise ValueError("weight budget must be at least 2")
        if not self.n_values or not self.ell_values:
            raise ValueError("n and ell ranges must be non-empty")


@dataclass(frozen=True)
class SearchHit:
    spec: UBCodeSpec
    code: CssCode = field(repr=False)
    bounds: BoundsReport | None = field(repr=False)

    def to_dict(self) -> dict:
        out = self.code.to_dict()
        out["bounds"] = self.bounds.to_dict() if self.bounds else None
        out["d_upper"] = self.bounds.d_upper if self.bounds else None
        return out


def exponent_sets(n: int, max_weight: int) -> Iterator[tuple[int, ...]]:
    """Supports containing 0, of weight 2..max_weight, in lexicographic order."""

    def extend(prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(prefix) >= 2:
            yield prefix
        if len(prefix) < max_weight:
            for e in range(prefix[-1] + 1, n):
                yield from extend(prefix + (e,))

    yield from extend((0,))


def _accept(cfg: SearchConfig, n: int, ell: int, exps: tuple[int, ...]) -> SearchHit | None:
    a = RingPoly.from_exponents(exps, n)
    g = gcd_with_modulus(a, n)
    if g.degree < 1 or 2 * g.degree < cfg.min_k:
        return None
    divisor = divides_x_n_minus_1(a, n)
    if cfg.require_divisor and not divisor:
        return None
    spec = UBCodeSpec(n, a, ell)
    code = build_ub(spec)
    report = None
    if divisor:
        report = b_bounds(code, logical_basis(code, validate=False))
        if cfg.min_dupper is not None and report.d_upper < cfg.min_dupper:
            return None
        if cfg.max_dupper is not None and report.d_upper > cfg.max_dupper:
            return None
    elif cfg.min_dupper is not None or cfg.max_dupper is not None:
        return None
    return SearchHit(spec, code, report)


def _stream(cfg: SearchConfig, n: int, ell: int) -> Iterator[tuple[tuple, SearchHit]]:
    for exps in exponent_sets(n, cfg.w // 2):
        hit = _accept(cfg, n, ell, exps)
        if hit is not None:
            yield (exps, ell, n), hit


def _stream_list(args) -> list[tuple[tuple, SearchHit]]:
    cfg, n, ell = args
    return list(_stream(cfg, n, ell))


def code_search(cfg: SearchConfig) -> Iterator[SearchHit]:
    """Yield UB codes in order of (exponent set, ell, n)."""
    pairs = [(n, ell) for n in cfg.n_values for ell in cfg.ell_values]
    if cfg.threads > 1:
        with ProcessPoolExecutor(cfg.threads) as pool:
            streams = list(pool.map(_stream_list, [(cfg, n, ell) for n, ell in pairs]))
    else:
        streams = [_stream(cfg, n, ell) for n, ell in pairs]
    for _, hit in heapq.merge(*streams, key=lambda item: item[0]):
        yield hit
