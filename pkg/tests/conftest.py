import itertools

import numpy as np
import pytest

from ubcycle.code import UBCodeSpec, build_ub


def dense_rank(M) -> int:
    """Plain uint8 Gaussian elimination, kept apart from the packed implementation."""
    A = np.array(M, dtype=np.uint8) % 2
    rank = 0
    rows, cols = A.shape
    for c in range(cols):
        hits = np.flatnonzero(A[rank:, c])
        if hits.size == 0:
            continue
        p = rank + hits[0]
        A[[rank, p]] = A[[p, rank]]
        below = np.flatnonzero(A[:, c])
        below = below[below != rank]
        A[below] ^= A[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def span(rows) -> set[bytes]:
    """Every GF(2) combination of ``rows``, as bytes keys."""
    rows = np.asarray(rows, dtype=np.uint8)
    out = set()
    for mask in itertools.product((0, 1), repeat=len(rows)):
        v = np.zeros(rows.shape[1], dtype=np.uint8)
        for m, r in zip(mask, rows):
            if m:
                v ^= r
        out.add(v.tobytes())
    return out


@pytest.fixture(scope="session")
def code42():
    return build_ub(UBCodeSpec.parse(21, "1+x+x^2+x^4", 1))


@pytest.fixture(scope="session")
def code60():
    return build_ub(UBCodeSpec.parse(30, "1+x+x^3+x^4", 5))


@pytest.fixture(scope="session")
def toy():
    return build_ub(UBCodeSpec.parse(7, "1+x", 1))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
