"""Compiled inner loops for the decoder."""

import numpy as np
from numba import njit


@njit(cache=True)
def _hard_matches(check_ptr, check_vars, llr, syndrome):
    m = check_ptr.size - 1
    for c in range(m):
        par = syndrome[c]
        for e in range(check_ptr[c], check_ptr[c + 1]):
            if llr[check_vars[e]] < 0.0:
                par ^= 1
        if par:
            return False
    return True


@njit(cache=True)
def bp_min_sum_serial(check_ptr, check_vars, syndrome, llr0, alpha, max_iters):
    """Check-serial normalized min-sum on a syndrome.

    Returns (posterior LLRs, converged, iterations used). Checks are swept in
    row order and the posterior is updated in place after every check.
    """
    m = check_ptr.size - 1
    post = llr0.copy()
    c2v = np.zeros(check_vars.size, dtype=np.float64)
    tmp = np.empty(check_vars.size, dtype=np.float64)
    for it in range(max_iters + 1):
        if _hard_matches(check_ptr, check_vars, post, syndrome):
            return post, True, it
        if it == max_iters:
            break
        for c in range(m):
            lo = check_ptr[c]
            hi = check_ptr[c + 1]
            min1 = np.inf
            min2 = np.inf
            argmin = -1
            neg = syndrome[c]
            for e in range(lo, hi):
                t = post[check_vars[e]] - c2v[e]
                tmp[e] = t
                a = abs(t)
                if a < min1:
                    min2 = min1
                    min1 = a
                    argmin = e
                elif a < min2:
                    min2 = a
                if t < 0.0:
                    neg ^= 1
            for e in range(lo, hi):
                t = tmp[e]
                mag = alpha * (min2 if e == argmin else min1)
                s = neg
                if t < 0.0:
                    s ^= 1
                msg = -mag if s else mag
                c2v[e] = msg
                post[check_vars[e]] = t + msg
    return post, False, max_iters


@njit(cache=True)
def osd0_packed(check_ptr, check_vars, syndrome, order, hard, nvars):
    """Order-0 OSD on columns visited in ``order`` (least reliable first).

    Pivots are taken greedily along ``order``; non-pivot bits keep ``hard``.
    Returns an estimate e with H e = syndrome whenever the syndrome is in the
    column space of H.
    """
    m = check_ptr.size - 1
    nw = (nvars + 63) // 64
    pos = np.empty(nvars, dtype=np.int64)
    for k in range(nvars):
        pos[order[k]] = k
    rows = np.zeros((m, nw), dtype=np.uint64)
    rhs = np.zeros(m, dtype=np.uint8)
    for c in range(m):
        rhs[c] = syndrome[c]
        for e in range(check_ptr[c], check_ptr[c + 1]):
            k = pos[check_vars[e]]
            rows[c, k >> 6] ^= np.uint64(1) << np.uint64(k & 63)
    pivot_col = np.full(m, -1, dtype=np.int64)
    is_pivot = np.zeros(nvars, dtype=np.uint8)
    r = 0
    for k in range(nvars):
        if r == m:
            break
        w = k >> 6
        bit = np.uint64(1) << np.uint64(k & 63)
        p = -1
        for i in range(r, m):
            if rows[i, w] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(nw):
                x = rows[p, j]
                rows[p, j] = rows[r, j]
                rows[r, j] = x
            x8 = rhs[p]
            rhs[p] = rhs[r]
            rhs[r] = x8
        for i in range(m):
            if i != r and (rows[i, w] & bit):
                for j in range(w, nw):
                    rows[i, j] ^= rows[r, j]
                rhs[i] ^= rhs[r]
        # earlier free columns are already zero in every row from r down, so the
        # XOR may start at the current word
        pivot_col[r] = k
        is_pivot[k] = 1
        r += 1
    est = np.zeros(nvars, dtype=np.uint8)
    fixed = np.zeros(nw, dtype=np.uint64)
    for k in range(nvars):
        if not is_pivot[k] and hard[order[k]]:
            est[order[k]] = 1
            fixed[k >> 6] |= np.uint64(1) << np.uint64(k & 63)
    for i in range(r):
        par = rhs[i]
        for j in range(nw):
            x = rows[i, j] & fixed[j]
            while x:
                x &= x - np.uint64(1)
                par ^= 1
        if par:
            est[order[pivot_col[i]]] = 1
    return est
