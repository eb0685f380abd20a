import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from cpgroups.errors import EmptyRow
from cpgroups.exactmat import (
    AbelianStructure,
    IntMatrix,
    abelian_structure_of,
    circulant,
    determinant,
    smith_normal_form,
    smith_with_transforms,
)
from cpgroups.intpoly import IntPolynomial, gcd_with_cyclic, resultant


def matrices(max_dim=8, lo=-9, hi=9):
    return st.tuples(st.integers(1, max_dim), st.integers(1, max_dim)).flatmap(
        lambda rc: st.lists(st.lists(st.integers(lo, hi), min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0])).map(IntMatrix.from_rows)


def minors_gcd(rows, k):
    """gcd of all k x k minors (determinantal divisor)."""
    g = 0
    r, c = len(rows), len(rows[0])
    for ri in itertools.combinations(range(r), k):
        for ci in itertools.combinations(range(c), k):
            sub = IntMatrix.from_rows([[rows[i][j] for j in ci] for i in ri])
            g = math.gcd(g, determinant(sub))
    return g


def test_circulant_rows():
    m = circulant([1, -1, 1, 0])
    assert m.to_rows() == [[1, -1, 1, 0], [0, 1, -1, 1], [1, 0, 1, -1], [-1, 1, 0, 1]]
    with pytest.raises(EmptyRow):
        circulant([])


def test_snf_examples():
    assert smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]])).invariant_factors == (2, 4)
    assert smith_normal_form(IntMatrix.from_rows([[0, 0], [0, 0]])).invariant_factors == ()
    sf = smith_normal_form(circulant([1, -1, 1, 0, 0, 0]))
    assert sf.rank == 4 and sf.gamma == 1
    assert str(abelian_structure_of(circulant([2, 0, 0]))) == "Z_2 + Z_2 + Z_2"
    assert str(AbelianStructure((), 0)) == "1"
    assert str(AbelianStructure((2,), 1)) == "Z_2 + Z"


@settings(max_examples=500, deadline=None)
@given(matrices())
def test_divisibility_chain(m):
    f = smith_normal_form(m).invariant_factors
    assert all(x > 0 for x in f)
    assert all(b % a == 0 for a, b in zip(f, f[1:]))


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=4, lo=-6, hi=6))
def test_snf_matches_determinantal_divisors(m):
    rows = m.to_rows()
    f = smith_normal_form(m).invariant_factors
    prev = 1
    for k in range(1, min(m.rows, m.cols) + 1):
        dk = minors_gcd(rows, k)
        if dk == 0:
            assert len(f) == k - 1
            break
        assert f[k - 1] == dk // prev
        prev = dk
    else:
        assert len(f) == min(m.rows, m.cols)


def random_unimodular(rng, n):
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        q = rng.randint(-3, 3)
        u[i] = [a + q * b for a, b in zip(u[i], u[j])]
    return u


def matmul(a, b):
    return [[sum(x * y for x, y in zip(r, c)) for c in zip(*b)] for r in a]


@settings(max_examples=200, deadline=None)
@given(matrices(max_dim=6), st.integers(0, 10**6))
def test_unimodular_invariance(m, seed):
    rng = random.Random(seed)
    rows = m.to_rows()
    u, v = random_unimodular(rng, m.rows), random_unimodular(rng, m.cols)
    moved = IntMatrix.from_rows(matmul(matmul(u, rows), v))
    assert smith_normal_form(moved) == smith_normal_form(m)


@settings(max_examples=100, deadline=None)
@given(matrices(max_dim=5))
def test_transforms_reproduce_diagonal(m):
    u, d, v = smith_with_transforms(m)
    assert matmul(matmul(u, m.to_rows()), v) == d
    assert abs(determinant(IntMatrix.from_rows(u))) == 1
    assert abs(determinant(IntMatrix.from_rows(v))) == 1


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=30))
def test_circulant_determinant_is_resultant(row):
    n = len(row)
    f = IntPolynomial(tuple(row))
    det = abs(determinant(circulant(row)))
    if f.is_zero():
        assert det == 0
        return
    assert det == resultant(f, IntPolynomial.cyclic(n))
    assert smith_normal_form(circulant(row)).rank == n - gcd_with_cyclic(f, n).degree


def test_matrix_json():
    assert IntMatrix.from_rows([[1, -2]]).to_json() == [["1", "-2"]]
