"""Scans over n (or over family parameters) and resultant growth reports.

Scans only ever describe the range they covered. Work can be spread over
processes with ``workers > 1``; results are merged in input order, so the
report is identical for any worker count.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .abelian import abelianisation_direct, is_perfect, poly_path
from .errors import ConstantPolynomial
from .families import (
    GCD_CONDITION,
    MOD_6B_CONDITION,
    MOD_12B_CONDITION,
    gh_gamma,
    gilbert_howie_filter,
)
from .intpoly import IntPolynomial, mahler_measure, resultant
from .jsonio import decimal_str, digit_count
from .presentation import CyclicPresentation, DefiningWord

DEFAULT_DIGIT_CAP = 10_000


@dataclass(frozen=True)
class ScanRow:
    n: int
    betti: int
    gamma: int | None   # None when gamma has more than the digit cap
    gamma_digits: int
    hit: bool
    m: int | None = None

    def gamma_text(self) -> str:
        return decimal_str(self.gamma) if self.gamma is not None else f"digits:{self.gamma_digits}"


@dataclass
class ScanReport:
    kind: str
    subject: str
    n_range: tuple[int, int]
    hits: tuple
    per_hit: dict = field(default_factory=dict)
    rows: list[ScanRow] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "subject": self.subject,
            "range": list(self.n_range),
            "hits": [list(h) if isinstance(h, tuple) else h for h in self.hits],
            "per_hit": {str(k): v for k, v in self.per_hit.items()},
            "stats": dict(self.stats),
            "elapsed": round(self.elapsed, 6),
            "note": "covers the scanned range only",
        }

    def csv_rows(self) -> list[list[str]]:
        header = ["n", "betti", "gamma_or_digits", "hit"]
        if any(r.m is not None for r in self.rows):
            header.insert(1, "m")
        out = [header]
        for r in self.rows:
            row = [str(r.n), str(r.betti), r.gamma_text(), "1" if r.hit else "0"]
            if len(header) == 5:
                row.insert(1, "" if r.m is None else str(r.m))
            out.append(row)
        return out


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def _capped(gamma: int, cap: int) -> tuple[int | None, int]:
    digits = digit_count(gamma)
    return (gamma if digits <= cap else None), digits


def _structure(word: DefiningWord, n: int) -> tuple[int, int, bool]:
    """(betti, gamma, perfect) for G_n(w)."""
    p = CyclicPresentation(n, word)
    f = p.representer
    if f.is_zero():
        ab = abelianisation_direct(p)
        return ab.betti, ab.gamma, False
    res = poly_path(f, n)
    return res.betti, res.gamma, is_perfect(p)


def _perfect_job(args):
    word, n, cap = args
    betti, gamma, perfect = _structure(word, n)
    return ScanRow(n, betti, *_capped(gamma, cap), hit=perfect)


def _free_job(args):
    word, n, cap = args
    betti, gamma, _ = _structure(word, n)
    return ScanRow(n, betti, *_capped(gamma, cap), hit=gamma == 1)


def _scan_word(kind, job, w: DefiningWord, n_max: int, workers: int, digit_cap: int) -> ScanReport:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    start = time.perf_counter()
    rows = _map(job, [(w, n, digit_cap) for n in range(1, n_max + 1)], workers)
    hits = tuple(r.n for r in rows if r.hit)
    per_hit = {r.n: {"betti": r.betti} for r in rows if r.hit}
    return ScanReport(kind, str(w), (1, n_max), hits, per_hit, rows,
                      {"scanned": len(rows), "hits": len(hits)}, time.perf_counter() - start)


def scan_perfect(w: DefiningWord, n_max: int, *, workers: int = 1,
                 digit_cap: int = DEFAULT_DIGIT_CAP) -> ScanReport:
    """All n <= n_max for which G_n(w) is perfect."""
    return _scan_word("perfect", _perfect_job, w, n_max, workers, digit_cap)


def scan_free_abelian(w: DefiningWord, n_max: int, *, workers: int = 1,
                      digit_cap: int = DEFAULT_DIGIT_CAP) -> ScanReport:
    """All n <= n_max for which G_n(w) has free abelianisation, with its rank."""
    return _scan_word("free-abelian", _free_job, w, n_max, workers, digit_cap)


def _gh_job(args):
    n, m, use_filter, cap = args
    if use_filter:
        verdict = gilbert_howie_filter(n, m)
        if not verdict.passes:
            return verdict.failed_condition, None
    g = gh_gamma(n, m)
    return None, ScanRow(n, g.betti, *_capped(g.gamma, cap), hit=g.gamma == 1, m=m)


def gh_candidates(n_values: Iterable[int]) -> list[tuple[int, int]]:
    """(n, m) with n = 0 mod 6 and m = 2 mod 6, 2 < m < n."""
    return [(n, m) for n in sorted(set(n_values)) if n % 6 == 0 for m in range(8, n, 6)]


def scan_gilbert_howie(n_values: Iterable[int], *, use_filter: bool = True, workers: int = 1,
                       digit_cap: int = DEFAULT_DIGIT_CAP) -> ScanReport:
    """Look for H(n, m) with m != 2 and free abelianisation.

    Candidates are rejected cheapest-first: gcd(m, n) = 2, then the
    congruence modulo 6b or 12b, and only survivors get a full resultant.
    Every hit is a counterexample to "free abelianisation only when m = 2".
    """
    start = time.perf_counter()
    cands = gh_candidates(n_values)
    results = _map(_gh_job, [(n, m, use_filter, digit_cap) for n, m in cands], workers)
    stats = {"candidates": len(cands), f"rejected:{GCD_CONDITION}": 0,
             f"rejected:{MOD_6B_CONDITION}": 0, f"rejected:{MOD_12B_CONDITION}": 0,
             "computed": 0, "eliminated_by_gamma": 0}
    rows = []
    for tag, row in results:
        if tag is not None:
            stats[f"rejected:{tag}"] += 1
            continue
        stats["computed"] += 1
        if not row.hit:
            stats["eliminated_by_gamma"] += 1
        rows.append(row)
    hits = tuple((r.n, r.m) for r in rows if r.hit)
    ns = [n for n, _ in cands] or [0]
    per_hit = {f"{n},{m}": {"betti": r.betti} for r in rows if r.hit for n, m in [(r.n, r.m)]}
    return ScanReport("gilbert-howie", "t^m - t + 1", (min(ns), max(ns)), hits, per_hit, rows,
                      stats, time.perf_counter() - start)


def scan_gilbert_howie_conjecture(n_max: int, *, workers: int = 1, digit_cap: int = DEFAULT_DIGIT_CAP) -> ScanReport:
    """The Gilbert-Howie counterexample hunt over every n = 0 mod 6 up to n_max."""
    if n_max < 6:
        raise ValueError("n_max must be >= 6")
    report = scan_gilbert_howie(range(6, n_max + 1, 6), workers=workers, digit_cap=digit_cap)
    report.kind = "conjecture53"
    report.n_range = (6, n_max)
    return report


# -- growth of Res(h, t^n - 1) -------------------------------------------------

@dataclass(frozen=True)
class GrowthSample:
    n: int
    log_resultant: float
    ratio: float | None   # log Res / (n log mu); None when mu == 1


@dataclass
class GrowthReport:
    polynomial: IntPolynomial
    measure: float
    samples: list[GrowthSample]
    skipped: list[int]

    def to_json(self) -> dict[str, Any]:
        return {
            "polynomial": self.polynomial.to_json(),
            "measure": self.measure,
            "samples": [{"n": s.n, "log_resultant": s.log_resultant, "ratio": s.ratio} for s in self.samples],
            "skipped_zero_resultant": list(self.skipped),
        }


def growth_report(h: IntPolynomial, n_list: Iterable[int], tol: float = 1e-10) -> GrowthReport:
    """Exact log Res(h, t^n - 1) against n log M(h)."""
    if h.degree <= 0:
        raise ConstantPolynomial("growth report needs a nonconstant polynomial")
    mu = mahler_measure(h, tol).measure
    log_mu = math.log(mu)
    samples, skipped = [], []
    for n in n_list:
        res = resultant(h, IntPolynomial.cyclic(n))
        if res == 0:
            skipped.append(n)
            continue
        lr = math.log(res)
        ratio = lr / (n * log_mu) if abs(mu - 1) > tol else None
        samples.append(GrowthSample(n, lr, ratio))
    return GrowthReport(h, mu, samples, skipped)
