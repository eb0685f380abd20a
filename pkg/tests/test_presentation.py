import random

import pytest
from hypothesis import given, settings, strategies as st

from cpgroups.errors import DanglingReference, EmptyWord, WordSyntaxError
from cpgroups.families import sieradski_log
from cpgroups.intpoly import IntPolynomial
from cpgroups.presentation import (
    LOG,
    CyclicPresentation,
    DefiningWord,
    Edge,
    GenericPresentation,
    exponent_sums,
    gnmk_word,
    log_components,
    log_to_presentation,
    parse_word,
    relation_matrix,
    representer_polynomial,
)

letters = st.tuples(st.integers(0, 20), st.integers(-3, 3).filter(bool))
words = st.lists(letters, min_size=1, max_size=8).map(lambda ls: DefiningWord(tuple(ls)))


def test_parse_word_examples():
    w = parse_word("x0 x2 x1^-1")
    assert w.letters == ((0, 1), (2, 1), (1, -1))
    assert str(w) == "x0 x2 x1^-1"
    assert parse_word("  x3^2   x0 ").letters == ((3, 2), (0, 1))


@pytest.mark.parametrize("bad,pos", [("x0 y1", 3), ("x0x1", 2), ("x", 0), ("x1^0", 3), ("x1^", 2)])
def test_parse_word_errors(bad, pos):
    with pytest.raises(WordSyntaxError) as exc:
        parse_word(bad)
    assert exc.value.position == pos


def test_empty_word():
    with pytest.raises(EmptyWord):
        parse_word("   ")


@given(words)
def test_word_text_roundtrip(w):
    assert parse_word(str(w)) == w


def test_representer_examples():
    assert representer_polynomial(parse_word("x0 x2 x1^-1"), 12) == IntPolynomial((1, -1, 1))
    assert representer_polynomial(gnmk_word(8, 1), 6) == IntPolynomial((1, -1, 1))
    assert exponent_sums(parse_word("x0 x5"), 5) == [2, 0, 0, 0, 0]


def test_relators_shift():
    p = CyclicPresentation(3, parse_word("x0 x1^-1"))
    assert p.relators() == [[(0, 1), (1, -1)], [(1, 1), (2, -1)], [(2, 1), (0, -1)]]
    assert relation_matrix(p).to_rows() == [[1, -1, 0], [0, 1, -1], [-1, 0, 1]]


@given(words, st.integers(1, 30))
def test_representer_at_one_is_total_exponent(w, n):
    assert representer_polynomial(w, n)(1) == w.total_exponent()


@given(words, st.integers(1, 30), st.integers(0, 8), st.integers(0, 20), st.integers(1, 3))
def test_exponent_sums_ignore_free_reduction(w, n, pos, j, e):
    pos = min(pos, len(w.letters))
    ls = list(w.letters)
    ls[pos:pos] = [(j, e), (j, -e)]
    assert exponent_sums(DefiningWord(tuple(ls)), n) == exponent_sums(w, n)


def test_generic_presentation_checks():
    with pytest.raises(DanglingReference):
        GenericPresentation(("a",), ((("b", 1),),))
    free = GenericPresentation(("a", "b"), ())
    assert free.abelianisation().betti == 2
    assert str(GenericPresentation(("a",), ((("a", 2),),))) == "< a | a^2 >"


def test_log_validation_and_io():
    with pytest.raises(DanglingReference):
        LOG(("a",), (Edge("a", "b", "a"),))
    g = LOG(("a", "b"), (Edge("a", "b", "a"),))
    assert LOG.from_json(g.to_json()) == g
    assert g.to_dot() == 'digraph LOG {\n  "a";\n  "b";\n  "a" -> "b" [label="a"];\n}\n'
    rel = log_to_presentation(g).relators[0]
    assert rel == (("b", -1), ("a", -1), ("a", 1), ("a", 1))


def random_log(rng):
    nv = rng.randint(1, 10)
    vs = tuple(f"v{i}" for i in range(nv))
    edges = tuple(Edge(rng.choice(vs), rng.choice(vs), rng.choice(vs)) for _ in range(rng.randint(0, 12)))
    return LOG(vs, edges)


@pytest.mark.parametrize("seed", range(200))
def test_log_groups_abelianise_to_free_on_components(seed):
    g = random_log(random.Random(seed))
    ab = log_to_presentation(g).abelianisation()
    assert ab.torsion == () and ab.betti == log_components(g)


@pytest.mark.parametrize("l", range(1, 9))
def test_sieradski_logs_abelianise_to_z2(l):
    s = sieradski_log(l)
    ab = log_to_presentation(s.log).abelianisation()
    assert log_components(s.log) == 2 and ab.torsion == () and ab.betti == 2
