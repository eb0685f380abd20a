import pytest
from hypothesis import given, settings, strategies as st

from cpgroups.abelian import (
    abelianisation_direct,
    abelianisation_poly,
    betti_parity,
    infinite_cyclic_test,
    is_free_abelianisation,
    is_infinite_cyclic_ab,
    is_perfect,
    positive_word_class,
    report,
)
from cpgroups.errors import ZeroRepresenter
from cpgroups.intpoly import IntPolynomial
from cpgroups.presentation import CyclicPresentation, DefiningWord, parse_word

SIERADSKI = parse_word("x0 x2 x1^-1")
FIBONACCI = parse_word("x0 x1 x2^-1")

letters = st.tuples(st.integers(0, 7), st.sampled_from((-2, -1, 1, 2)))
words = st.lists(letters, min_size=1, max_size=6).map(lambda ls: DefiningWord(tuple(ls)))


def cp(text, n):
    return CyclicPresentation(n, parse_word(text) if isinstance(text, str) else text)


@pytest.mark.parametrize("n,betti,gamma", [(6, 2, 1), (12, 2, 1), (5, 0, 1), (4, 0, 3), (3, 0, 4)])
def test_sieradski_values(n, betti, gamma):
    p = CyclicPresentation(n, SIERADSKI)
    d, q = abelianisation_direct(p), abelianisation_poly(p)
    assert (d.betti, d.gamma) == (betti, gamma) == (q.betti, q.gamma)


@pytest.mark.parametrize("n,order", [(1, 1), (2, 1), (3, 4), (4, 5), (5, 11), (6, 16)])
def test_fibonacci_orders(n, order):
    p = CyclicPresentation(n, FIBONACCI)
    assert abelianisation_direct(p).gamma == order
    assert is_perfect(p) == (order == 1)


def test_poly_path_pieces():
    q = abelianisation_poly(cp("x0 x2 x1^-1", 6))
    assert q.z == IntPolynomial((1, -1, 1)) and q.F == IntPolynomial((1,))
    assert q.rho == 4


def test_zero_representer():
    p = cp("x0 x0^-1", 4)
    with pytest.raises(ZeroRepresenter):
        abelianisation_poly(p)
    with pytest.raises(ZeroRepresenter):
        is_infinite_cyclic_ab(p)
    ab = abelianisation_direct(p)
    assert ab.betti == 4 and ab.torsion == ()
    rep = report(p)
    assert rep["betti"] == 4 and rep["free_abelian"] and not rep["infinite_cyclic_ab"]


def test_constant_representer_diagnostic():
    res = infinite_cyclic_test(IntPolynomial((2,)), 3)
    assert not res.result and res.witness["diagnostic"] == "ConstantRepresenter"


def test_infinite_cyclic_cases():
    assert is_infinite_cyclic_ab(cp("x0 x1^-1", 5)).case == "a"
    assert is_infinite_cyclic_ab(cp("x0 x1^-1", 4)).case == "b"
    r = is_infinite_cyclic_ab(cp("x0 x7 x14 x21 x9^-1 x2^-1", 10))
    assert r.result and r.case == "c" and r.witness["odd_part_resultant"] == 2
    assert not is_infinite_cyclic_ab(cp("x0 x2", 4)).result


def test_positive_word_classes():
    assert positive_word_class(cp("x3", 5)).kind == "trivial_len1"
    c = positive_word_class(cp("x0 x1", 6))
    assert (c.kind, c.free_rank, c.ab_is_Z) == ("len2", 1, True)
    c = positive_word_class(cp("x0 x2", 6))
    assert (c.gcd_nk, c.z2_copies) == (2, 2)
    assert positive_word_class(cp("x0^2", 4)).z2_copies == 4
    assert positive_word_class(cp("x0 x1 x2", 7)).kind == "not_Z_len3plus"
    assert positive_word_class(cp("x0 x1^-1", 7)).kind == "not_positive"


@pytest.mark.parametrize("n", range(1, 25))
@pytest.mark.parametrize("k", range(0, 6))
def test_length_two_positive_words_match_snf(n, k):
    p = CyclicPresentation(n, DefiningWord(((0, 1), (k, 1))))
    c, ab = positive_word_class(p), abelianisation_direct(p)
    if c.free_rank is not None:
        assert ab.betti == c.free_rank and ab.torsion == ()
    else:
        assert ab.betti == 0 and ab.gamma == 2 ** c.z2_copies


@settings(max_examples=400, deadline=None)
@given(words, st.integers(1, 24))
def test_paths_agree_and_predicates(w, n):
    p = CyclicPresentation(n, w)
    d = abelianisation_direct(p)
    if p.representer.is_zero():
        assert d.betti == n and d.torsion == ()
        return
    q = abelianisation_poly(p)
    assert (q.betti, q.gamma) == (d.betti, d.gamma)
    assert is_perfect(p) == d.is_trivial()
    assert is_free_abelianisation(p) == (d.torsion == ())
    assert is_infinite_cyclic_ab(p).result == (d.betti == 1 and d.torsion == ())
    assert betti_parity(p).odd == (d.betti % 2 == 1)


def test_report_keys_and_matrix():
    rep = report(cp("x0 x2 x1^-1", 12), with_matrix=True)
    assert rep["betti"] == 2 and rep["gamma"] == "1" and rep["torsion"] == []
    assert len(rep["matrix"]) == 12 and rep["matrix"][0][:3] == ["1", "-1", "1"]
