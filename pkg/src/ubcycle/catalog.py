"""Catalogued UB code parameters and reference logical-error-rate curves."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .code import CssCode, UBCodeSpec, build_ub
from .ring import parse_poly


@dataclass(frozen=True)
class CodeAtlasEntry:
    a: str
    ell: int
    N: int
    k: int
    d_reported: int
    rate_printed: str
    w: int
    d_found: int | None = None

    @property
    def n(self) -> int:
        return self.N // 2

    @property
    def spec(self) -> UBCodeSpec:
        return UBCodeSpec(self.n, parse_poly(self.a, self.n), self.ell)

    def build(self) -> CssCode:
        return build_ub(self.spec)

    @property
    def label(self) -> str:
        return f"[[{self.N},{self.k},{self.d_reported}]]"


# (a, ell, N, k, d, R as printed, w)
CATALOGUE = (
    CodeAtlasEntry("x^7+x^4+x+1", 3, 124, 14, 11, "0.113", 8),
    CodeAtlasEntry("x^10+x^9+x^2+1", 4, 146, 20, 8, "0.137", 8),
    CodeAtlasEntry("x^12+x^10+x^9+1", 5, 178, 24, 13, "0.135", 8),
    CodeAtlasEntry("x^18+x^8+x^4+1", 6, 204, 36, 8, "0.176", 8),
    CodeAtlasEntry("x^13+x^5+x+1", 5, 234, 26, 14, "0.111", 8),
    CodeAtlasEntry("x^6+x^5+1", 3, 252, 12, 14, "0.048", 6),
    CodeAtlasEntry("x^7+x^4+1", 3, 254, 14, 14, "0.055", 6),
    CodeAtlasEntry("x^7+x^2+1", 5, 372, 14, 12, "0.038", 6),
    CodeAtlasEntry("x^6+x+1", 9, 378, 12, 22, "0.032", 6),
    CodeAtlasEntry("x^9+x^8+1", 7, 730, 18, 20, "0.025", 6),
    CodeAtlasEntry("x^28+x^10+x+1", 4, 1022, 56, 21, "0.057", 8),
)


def find_entry(N: int, k: int | None = None) -> CodeAtlasEntry:
    for e in CATALOGUE:
        if e.N == N and (k is None or e.k == k):
            return e
    raise KeyError(f"no catalogued code with N={N}")


def format_rate(k: int, N: int) -> str:
    """``k/N`` rounded half-up to 3 decimals, using exact rational arithmetic."""
    milli = (Fraction(k, N) * 1000 + Fraction(1, 2)).__floor__()
    return f"{milli / 1000:.3f}"


@dataclass(frozen=True)
class AtlasRow:
    entry: CodeAtlasEntry
    N: int
    k: int
    w: int
    rate: str

    @property
    def mismatches(self) -> list[str]:
        e = self.entry
        out = []
        for name, got, want in (("N", self.N, e.N), ("k", self.k, e.k), ("w", self.w, e.w), ("R", self.rate, e.rate_printed)):
            if got != want:
                out.append(f"{name}: computed {got}, printed {want}")
        return out


def atlas() -> list[AtlasRow]:
    rows = []
    for e in CATALOGUE:
        code = e.build()
        rows.append(AtlasRow(e, code.N, code.k, code.w, format_rate(code.k, code.N)))
    return rows


@dataclass(frozen=True)
class ReferencePoint:
    panel: int
    curve: str
    family: str
    p: float
    ler: float


def reference_curves() -> list[ReferencePoint]:
    """Reference logical-error-rate points for catalogued and comparison codes."""
    text = resources.files("ubcycle.data").joinpath("reference_curves.csv").read_text()
    out = []
    for row in csv.DictReader(text.splitlines()):
        out.append(ReferencePoint(int(row["panel"]), row["curve"], row["family"], float(row["p"]), float(row["ler"])))
    return out
