import math

import pytest

from cpgroups.errors import ConstantPolynomial
from cpgroups.intpoly import IntPolynomial, cyclotomic
from cpgroups.presentation import parse_word
from cpgroups.search import (
    growth_report,
    scan_free_abelian,
    scan_gilbert_howie,
    scan_gilbert_howie_conjecture,
    scan_perfect,
)

SIERADSKI = parse_word("x0 x2 x1^-1")


def test_scan_perfect_examples():
    assert scan_perfect(SIERADSKI, 12).hits == (1, 5, 7, 11)
    assert scan_perfect(parse_word("x0"), 10).hits == tuple(range(1, 11))
    assert scan_perfect(parse_word("x0 x1 x2^-1"), 6).hits == (1, 2)
    with pytest.raises(ValueError):
        scan_perfect(SIERADSKI, 0)


def test_scan_free_abelian_examples():
    rep = scan_free_abelian(SIERADSKI, 12)
    assert rep.hits == (1, 5, 6, 7, 11, 12)
    assert {n: v["betti"] for n, v in rep.per_hit.items()} == {1: 0, 5: 0, 6: 2, 7: 0, 11: 0, 12: 2}
    rep = scan_free_abelian(parse_word("x0 x1"), 6)
    assert rep.hits == (2, 4, 6) and all(v["betti"] == 1 for v in rep.per_hit.values())
    assert scan_free_abelian(parse_word("x0^2"), 5).hits == ()


def test_free_hits_contain_perfect_hits():
    for w in ("x0 x2 x1^-1", "x0 x1 x2^-1", "x0 x3 x1^-1 x2"):
        free = scan_free_abelian(parse_word(w), 20)
        perfect = scan_perfect(parse_word(w), 20)
        rank0 = {n for n in free.hits if free.per_hit[n]["betti"] == 0}
        assert set(perfect.hits) == rank0


def test_scan_is_deterministic_across_workers():
    w = parse_word("x0 x3 x1^-1")
    one, two = scan_free_abelian(w, 18), scan_free_abelian(w, 18, workers=2)
    assert one.hits == two.hits and one.rows == two.rows and one.per_hit == two.per_hit
    a = scan_gilbert_howie_conjecture(30)
    b = scan_gilbert_howie_conjecture(30, workers=2)
    assert a.hits == b.hits and a.stats == b.stats and a.rows == b.rows


def test_digit_cap():
    rep = scan_free_abelian(parse_word("x0^2"), 40, digit_cap=5)
    row = rep.rows[-1]
    assert row.gamma is None and row.gamma_digits == len(str(2**40))
    assert row.gamma_text() == f"digits:{row.gamma_digits}"


def test_csv_rows():
    rows = scan_perfect(SIERADSKI, 6).csv_rows()
    assert rows[0] == ["n", "betti", "gamma_or_digits", "hit"]
    assert rows[6] == ["6", "2", "1", "0"]
    assert rows[4] == ["4", "0", "3", "0"]


def test_conjecture_scan():
    rep = scan_gilbert_howie_conjecture(36)
    assert rep.hits == ()
    s = rep.stats
    assert s["candidates"] == sum(s[k] for k in s if k.startswith("rejected:")) + s["computed"]
    assert s["computed"] == s["eliminated_by_gamma"]
    with pytest.raises(ValueError):
        scan_gilbert_howie_conjecture(5)


def test_conjecture_scan_at_12():
    rep = scan_gilbert_howie([12])
    assert rep.stats["rejected:gcd(m,n)=2"] == 1 and rep.stats["candidates"] == 1


def test_restricted_shapes_have_no_hits():
    ns = [6 * b for b in (1, 5, 7, 11)] + [12 * b for b in (1, 5, 7, 11)] + [24 * b for b in (1, 5, 7, 11)]
    assert scan_gilbert_howie([n for n in ns if n <= 24]).hits == ()
    assert scan_gilbert_howie(ns, use_filter=False).hits == ()


def test_growth_examples():
    rep = growth_report(IntPolynomial((-1, -1, 0, 1)), [50, 100])
    assert all(0.9 <= s.ratio <= 1.1 for s in rep.samples)
    rep = growth_report(IntPolynomial((-1, -1, 1)), [5])
    assert rep.samples[0].log_resultant == pytest.approx(math.log(11))
    assert rep.samples[0].ratio == pytest.approx(0.997, abs=1e-3)


def test_growth_cyclotomic():
    rep = growth_report(cyclotomic(6), range(1, 13))
    assert abs(rep.measure - 1) < 1e-8
    assert rep.skipped == [6, 12]
    assert {round(math.exp(s.log_resultant)) for s in rep.samples} == {1, 3, 4}
    assert all(s.ratio is None for s in rep.samples)
    with pytest.raises(ConstantPolynomial):
        growth_report(IntPolynomial((3,)), [5])
