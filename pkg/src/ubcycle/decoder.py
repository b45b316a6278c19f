"""BP-OSD-0 decoding of X errors on a binary symmetric channel.

Decoding runs on the Tanner graph of H_Z. Belief propagation is serial normalized
min-sum (checks swept in row order, messages updated in place); order-0 OSD runs
only when BP does not reproduce the syndrome.

Trial ``i`` at rate ``p`` draws from ``Philox`` seeded by
``SeedSequence([seed, round(p * 1e12), i])``, so every point is reproducible
bit for bit and independent of how trials are split across workers.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.stats import binomtest

from . import _kernels
from . import gf2linalg as gf2
from .code import CssCode, UBCodeSpec, build_ub

log = logging.getLogger(__name__)

CHUNK = 64


@dataclass(frozen=True)
class SimConfig:
    code: UBCodeSpec
    p_list: tuple[float, ...]
    alpha: float = 0.875
    max_iters: int = 1000
    target_logical_errors: int = 150
    max_trials: int = 10**7
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "p_list", tuple(float(p) for p in self.p_list))
        if not self.p_list:
            raise ValueError("p_list is empty")
        for p in self.p_list:
            if not 0.0 < p < 0.5:
                raise ValueError(f"p must lie in (0, 0.5), got {p}")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.max_iters < 1 or self.target_logical_errors < 1 or self.max_trials < 1:
            raise ValueError("max_iters, target_logical_errors and max_trials must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class SimPoint:
    p: float
    trials: int
    logical_errors: int
    ler: float
    ci_low: float
    ci_high: float
    truncated: bool = False
    syndrome_mismatches: int = field(default=0, compare=False)

    CSV_HEADER = "p,trials,logical_errors,ler,ci_low,ci_high,truncated"

    def csv_row(self) -> str:
        return (
            f"{self.p:.6g},{self.trials},{self.logical_errors},{self.ler:.6g},"
            f"{self.ci_low:.6g},{self.ci_high:.6g},{str(self.truncated).lower()}"
        )

    def to_dict(self) -> dict:
        return asdict(self)


def wilson_interval(k: int, n: int, confidence: float = 0.95) -> tuple[float, float]:
    ci = binomtest(k, n).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def trial_rng(seed: int, p: float, i: int) -> np.random.Generator:
    ss = np.random.SeedSequence([seed, int(round(p * 1e12)), i])
    return np.random.Generator(np.random.Philox(ss))


def sample_error(p: float, n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return (rng.random(n_qubits) < p).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class TannerGraph:
    """CSR adjacency of H_Z plus what the failure check needs."""

    check_ptr: np.ndarray
    check_vars: np.ndarray
    nvars: int
    x_logicals: np.ndarray  # packed rows

    @classmethod
    def of(cls, code: CssCode) -> TannerGraph:
        cached = code.__dict__.get("_tanner")
        if cached is not None:
            return cached
        H = code.hz_dense
        ptr = np.zeros(H.shape[0] + 1, dtype=np.int64)
        ptr[1:] = np.cumsum(H.sum(axis=1))
        cols = np.nonzero(H)[1].astype(np.int64)
        graph = cls(ptr, cols, H.shape[1], gf2.pack_rows(code.x_logicals))
        object.__setattr__(code, "_tanner", graph)
        return graph

    def syndrome(self, e: np.ndarray) -> np.ndarray:
        if e.size != self.nvars:
            raise ValueError(f"error has length {e.size}, expected {self.nvars}")
        hits = e.astype(np.uint8)[self.check_vars]
        return (np.add.reduceat(hits, self.check_ptr[:-1]) & 1).astype(np.uint8)


def syndrome(code: CssCode, e) -> np.ndarray:
    """``H_Z e`` over GF(2)."""
    return TannerGraph.of(code).syndrome(np.asarray(e, dtype=np.uint8).ravel())


def channel_llr(p: float) -> float:
    return math.log((1 - p) / p)


def bp_decode(code: CssCode, s, p: float, alpha: float = 0.875, max_iters: int = 1000):
    """Returns ``(posterior LLRs, hard estimate, converged, iterations)``."""
    g = TannerGraph.of(code)
    s = np.asarray(s, dtype=np.uint8)
    if s.size != g.check_ptr.size - 1:
        raise ValueError("syndrome length does not match H_Z")
    llr0 = np.full(g.nvars, channel_llr(p))
    post, converged, iters = _kernels.bp_min_sum_serial(g.check_ptr, g.check_vars, s, llr0, alpha, max_iters)
    return post, (post < 0).astype(np.uint8), bool(converged), int(iters)


def osd0(code: CssCode, s, soft, hard=None) -> np.ndarray:
    """Order-0 OSD: least reliable columns become pivots, the rest keep ``hard``.

    ``hard`` defaults to the sign of ``soft``.
    """
    g = TannerGraph.of(code)
    soft = np.asarray(soft, dtype=np.float64)
    if hard is None:
        hard = (soft < 0).astype(np.uint8)
    order = np.argsort(np.abs(soft), kind="stable")
    return _kernels.osd0_packed(
        g.check_ptr, g.check_vars, np.asarray(s, dtype=np.uint8), order, np.asarray(hard, dtype=np.uint8), g.nvars
    )


def _residual_is_logical(g: TannerGraph, residual: np.ndarray) -> bool:
    packed = gf2.pack_vec(residual)
    return bool((gf2.popcount(g.x_logicals & packed, axis=1) & 1).any())


def is_logical_failure(code: CssCode, e, e_hat) -> bool:
    """True when ``e + e_hat`` is not a stabilizer, including a syndrome mismatch."""
    g = TannerGraph.of(code)
    residual = np.asarray(e, dtype=np.uint8) ^ np.asarray(e_hat, dtype=np.uint8)
    if g.syndrome(residual).any():
        log.warning("decoder output does not match the syndrome; counted as a failure")
        return True
    return _residual_is_logical(g, residual)


@dataclass
class Decoder:
    code: CssCode
    p: float
    alpha: float = 0.875
    max_iters: int = 1000

    def __post_init__(self):
        self.graph = TannerGraph.of(self.code)
        self.llr0 = np.full(self.graph.nvars, channel_llr(self.p))

    def decode(self, s: np.ndarray) -> tuple[np.ndarray, bool]:
        g = self.graph
        post, converged, _ = _kernels.bp_min_sum_serial(
            g.check_ptr, g.check_vars, s, self.llr0, self.alpha, self.max_iters
        )
        hard = (post < 0).astype(np.uint8)
        if converged:
            return hard, True
        order = np.argsort(np.abs(post), kind="stable")
        return _kernels.osd0_packed(g.check_ptr, g.check_vars, s, order, hard, g.nvars), False

    def trial(self, e: np.ndarray) -> tuple[bool, bool]:
        """Decode one error; returns ``(failed, syndrome_mismatch)``."""
        g = self.graph
        s = g.syndrome(e)
        e_hat, _ = self.decode(s)
        residual = e ^ e_hat
        if g.syndrome(residual).any():
            log.warning("decoder output does not match the syndrome; counted as a failure")
            return True, True
        return _residual_is_logical(g, residual), False


_worker: dict = {}


def _chunk_outcomes(code: CssCode, cfg: SimConfig, p: float, start: int, stop: int) -> np.ndarray:
    dec = Decoder(code, p, cfg.alpha, cfg.max_iters)
    out = np.zeros((stop - start, 2), dtype=bool)
    for j, i in enumerate(range(start, stop)):
        e = sample_error(p, dec.graph.nvars, trial_rng(cfg.seed, p, i))
        out[j] = dec.trial(e)
    return out


def _init_worker(cfg: SimConfig) -> None:
    _worker["cfg"] = cfg
    _worker["code"] = build_ub(cfg.code)


def _worker_chunk(p: float, start: int, stop: int) -> np.ndarray:
    return _chunk_outcomes(_worker["code"], _worker["cfg"], p, start, stop)


def _chunks(max_trials: int):
    start = 0
    while start < max_trials:
        yield start, min(start + CHUNK, max_trials)
        start += CHUNK


def _simulate_point(cfg: SimConfig, p: float, run_chunk, pool=None, window: int = 1) -> SimPoint:
    errors = trials = mismatches = 0
    done = False
    chunks = _chunks(cfg.max_trials)
    while not done:
        batch = [c for _, c in zip(range(window), chunks)]
        if not batch:
            break
        if pool is None:
            results = (run_chunk(p, a, b) for a, b in batch)
        else:
            results = pool.map(_worker_chunk, [p] * len(batch), *zip(*batch))
        for outcome in results:
            for failed, mismatch in outcome:
                trials += 1
                errors += int(failed)
                mismatches += int(mismatch)
                if errors >= cfg.target_logical_errors:
                    done = True
                    break
            if done:
                break
    truncated = errors < cfg.target_logical_errors
    if truncated:
        log.warning("p=%g: reached max_trials=%d with %d logical errors", p, cfg.max_trials, errors)
    lo, hi = wilson_interval(errors, trials)
    return SimPoint(p, trials, errors, errors / trials, lo, hi, truncated, mismatches)


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("UBCYCLE_THREADS", "1"))
    return max(1, threads)


def run_simulation(cfg: SimConfig, threads: int | None = None, code: CssCode | None = None) -> list[SimPoint]:
    """Monte-Carlo logical error rate for every ``p`` in ``cfg.p_list``.

    Each point stops at the first trial whose running error count reaches the
    target, so the result does not depend on ``threads``.
    """
    threads = resolve_threads(threads)
    if threads == 1:
        code = code if code is not None else build_ub(cfg.code)
        return [
            _simulate_point(cfg, p, lambda p_, a, b: _chunk_outcomes(code, cfg, p_, a, b)) for p in cfg.p_list
        ]
    with ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(cfg,)) as pool:
        return [_simulate_point(cfg, p, None, pool, window=2 * threads) for p in cfg.p_list]
