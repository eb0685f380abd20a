"""Named families of cyclically presented groups.

* H(r,n,s): generalised Fibonacci groups, relators x_i..x_{i+r-1} = x_{i+r}..x_{i+r+s-1}
* G_n(m,k) = G_n(x_0 x_m x_k^-1), groups of Fibonacci type
* H(n,m) = G_n(m,1), Gilbert-Howie groups; S(2,n) = H(n,2), Sieradski groups
* P(r,n,k,s,q): Prishchepov groups

Verdicts about LOG presentations are labels derived from arithmetic
criteria on the abelianisation; no group isomorphism is ever checked.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .abelian import PolyPathResult, abelianisation_direct, poly_path
from .errors import BadCongruence, EqualRS, HypothesisViolated, InvariantViolation
from .intpoly import (
    IntPolynomial,
    cyclotomic,
    divisors,
    from_terms,
    largest_odd_divisor,
    resultant,
)
from .presentation import (
    LOG,
    CyclicPresentation,
    DefiningWord,
    Edge,
    GenericPresentation,
    gnmk_word,
    log_to_presentation,
    representer_polynomial,
)


@dataclass(frozen=True)
class LogClassification:
    verdict: str  # log_free_of_rank | log_torus_knot | log_sieradski | not_log | unknown_conjectural
    params: tuple[int, ...]
    reason: str


# -- H(r, n, s) ----------------------------------------------------------------

@dataclass(frozen=True)
class HrnsParams:
    r: int
    n: int
    s: int

    def __post_init__(self):
        if min(self.r, self.n, self.s) < 1:
            raise ValueError("r, n, s must be positive")

    @property
    def d(self) -> int:
        return math.gcd(self.r, self.n, self.s)

    @property
    def R(self) -> int:
        return self.r // self.d

    @property
    def N(self) -> int:
        return self.n // self.d

    @property
    def S(self) -> int:
        return self.s // self.d

    def normalized(self) -> HrnsParams:
        """H(r,n,s) and H(s,n,r) are isomorphic; return the one with r <= s."""
        return self if self.r <= self.s else HrnsParams(self.s, self.n, self.r)

    def word(self) -> DefiningWord:
        return hrns_word(self.r, self.s)

    def presentation(self) -> CyclicPresentation:
        return CyclicPresentation(self.n, self.word())


def hrns_word(r: int, s: int) -> DefiningWord:
    """x_0 ... x_{r-1} (x_r ... x_{r+s-1})^-1."""
    return DefiningWord(tuple((j, 1) for j in range(r)) + tuple((r + s - 1 - j, -1) for j in range(s)))


def hrns_representer(r: int, s: int) -> IntPolynomial:
    """1 + t + ... + t^(r-1) - t^r (1 + t + ... + t^(s-1))."""
    if r < 1 or s < 1:
        raise ValueError("r, s must be positive")
    return IntPolynomial((1,) * r + (-1,) * s)


@dataclass(frozen=True)
class HrnsAbelianisation:
    params: HrnsParams   # normalised, r <= s
    swapped: bool
    rho: int
    gamma: int
    betti: int
    order_formula: int | None   # |H(R,N,S)^ab|^d / |S-R|^(d-1), from the direct path; s > r only
    generic: PolyPathResult

    @property
    def agrees(self) -> bool:
        return (self.rho, self.gamma) == (self.generic.rho, self.generic.gamma)


def hrns_abelianisation(p: HrnsParams) -> HrnsAbelianisation:
    q = p.normalized()
    r, n, s, d = q.r, q.n, q.s, q.d
    N, R, S = q.N, q.R, q.S
    order = None
    if s > r:
        rho = n - d + 1
        base = resultant(hrns_representer(R, S), IntPolynomial.cyclic(N))
        gamma, rem = divmod(base**d, (S - R) ** (d - 1))
        if rem:
            raise InvariantViolation(f"closed form for {q} is not an integer")
        small = abelianisation_direct(HrnsParams(R, N, S).presentation())
        if small.betti == 0:
            order, rem = divmod(small.gamma**d, (S - R) ** (d - 1))
            if rem:
                raise InvariantViolation(f"order formula for {q} is not an integer")
    else:
        rho = n - d
        gamma = N ** (d - 1)
    f = representer_polynomial(p.word(), n)
    if f.is_zero():
        # zero relation matrix; only the direct path applies
        direct = abelianisation_direct(p.presentation())
        generic = PolyPathResult(IntPolynomial.cyclic(n), f, IntPolynomial((1,)), n - direct.betti, direct.gamma, n)
    else:
        generic = poly_path(f, n)
    return HrnsAbelianisation(q, q is not p, rho, gamma, n - rho, order, generic)


def hrns_is_perfect_predicate(r: int, n: int, s: int) -> bool:
    """|r - s| = 1 and r or s divisible by n."""
    return abs(r - s) == 1 and (r % n == 0 or s % n == 0)


def hrns_log_classification(p: HrnsParams) -> LogClassification:
    r, n, s, d = p.r, p.n, p.s, p.d
    if r != s:
        if abs(r - s) == d and (r % n == 0 or s % n == 0):
            out = LogClassification("log_free_of_rank", (d - 1,), "free abelianisation: |r-s| = d and n | r or n | s")
        else:
            out = LogClassification("not_log", (), "abelianisation has torsion")
    elif r % n == 0:
        out = LogClassification("log_free_of_rank", (n,), "r = s and n | r")
    elif d == 1:
        out = LogClassification("log_torus_knot", (r, n), "r = s and gcd(r, n) = 1")
    else:
        out = LogClassification("not_log", (), "abelianisation has torsion")
    free = hrns_abelianisation(p).generic.gamma == 1
    if free != (out.verdict != "not_log"):
        raise InvariantViolation(f"classification of H{(r, n, s)} contradicts gamma")
    return out


# -- G_n(m, k) -----------------------------------------------------------------

@dataclass(frozen=True)
class GnmkParams:
    n: int
    m: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        object.__setattr__(self, "m", self.m % self.n)
        object.__setattr__(self, "k", self.k % self.n)

    def irreducible(self) -> bool:
        return math.gcd(self.n, self.m, self.k) == 1

    def presentation(self) -> CyclicPresentation:
        return CyclicPresentation(self.n, gnmk_word(self.m, self.k))

    @property
    def representer(self) -> IntPolynomial:
        return representer_polynomial(gnmk_word(self.m, self.k), self.n)


def _require_irreducible(p: GnmkParams) -> None:
    if not p.irreducible():
        raise HypothesisViolated(f"gcd(n, m, k) = {math.gcd(p.n, p.m, p.k)} != 1 for {p}")


@dataclass(frozen=True)
class GnmkResultant:
    kind: str   # zero | one | other, from the congruence rules
    value: int  # |Res(t^m - t^k + 1, t^n - 1)| computed directly

    @property
    def consistent(self) -> bool:
        observed = "zero" if self.value == 0 else "one" if self.value == 1 else "other"
        return observed == self.kind


def gnmk_predicted_class(n: int, m: int, k: int) -> str:
    if n % 6 == 0 and (m - 2 * k) % 6 == 0:
        return "zero"
    if (math.gcd(n, 6) == 1 and (m - 2 * k) % n == 0) or (m - k) % n == 0 or k % n == 0:
        return "one"
    return "other"


def gnmk_resultant_class(p: GnmkParams) -> GnmkResultant:
    _require_irreducible(p)
    value = resultant(p.representer, IntPolynomial.cyclic(p.n))
    return GnmkResultant(gnmk_predicted_class(p.n, p.m, p.k), value)


def strongly_irreducible(p: GnmkParams) -> bool:
    n, m, k = p.n, p.m, p.k
    return math.gcd(n, m, k) == 1 and math.gcd(n, k) > 1 and math.gcd(n, m - k) > 1


@dataclass(frozen=True)
class Rank2Check:
    betti: int
    gamma: int
    is_Z2: bool


def gnmk_rank2_check(p: GnmkParams) -> Rank2Check:
    _require_irreducible(p)
    res = poly_path(p.representer, p.n)
    return Rank2Check(res.betti, res.gamma, res.betti == 2 and res.gamma == 1)


@dataclass(frozen=True)
class ThreeCasesCheck:
    applies: bool
    gamma: int | None = None
    cyclotomic_match: bool | None = None
    congruence_mod_b: bool | None = None

    @property
    def holds(self) -> bool:
        return not self.applies or bool(self.cyclotomic_match and self.congruence_mod_b)


def split_6_smooth(n: int) -> tuple[int, int, int]:
    """n = 2^r 3^s b with (b, 6) = 1; returns (r, s, b)."""
    r = s = 0
    while n % 2 == 0:
        n //= 2
        r += 1
    while n % 3 == 0:
        n //= 3
        s += 1
    return r, s, n


def gnmk_free_necessary_conditions(p: GnmkParams) -> ThreeCasesCheck:
    """Consequences of gamma = 1 when 6 | n and m = 2k mod 6.

    Then Res(f, Phi_d) = Res(Phi_6, Phi_d) for every d | n other than 6, and
    m = k, m = 2k or k = 0 modulo the part b of n prime to 6. Reports
    ``applies=False`` when the hypotheses (including gamma = 1) fail.
    """
    n, m, k = p.n, p.m, p.k
    if not (p.irreducible() and n % 6 == 0 and (m - 2 * k) % 6 == 0):
        return ThreeCasesCheck(False)
    f = p.representer
    gamma = poly_path(f, n).gamma
    if gamma != 1:
        return ThreeCasesCheck(False, gamma)
    phi6 = cyclotomic(6)
    match = all(resultant(f, cyclotomic(d)) == resultant(phi6, cyclotomic(d))
                for d in divisors(n) if d != 6)
    b = split_6_smooth(n)[2]
    cong = (m - k) % b == 0 or (m - 2 * k) % b == 0 or k % b == 0
    return ThreeCasesCheck(True, gamma, match, cong)


# -- Gilbert-Howie and Sieradski -----------------------------------------------

@dataclass(frozen=True)
class FilterResult:
    passes: bool
    failed_condition: str | None = None


GCD_CONDITION = "gcd(m,n)=2"
MOD_6B_CONDITION = "m=2 mod 6b"
MOD_12B_CONDITION = "m=2 mod 12b"


def gilbert_howie_filter(n: int, m: int) -> FilterResult:
    """Cheap necessary conditions for gamma = 1 in H(n, m); passing means only "not excluded"."""
    if n % 6 or m % 6 != 2 or not 2 <= m < n:
        raise BadCongruence(f"need n = 0 mod 6, m = 2 mod 6, 2 <= m < n; got n={n}, m={m}")
    if math.gcd(m, n) != 2:
        return FilterResult(False, GCD_CONDITION)
    r, _, b = split_6_smooth(n)
    if r == 1:
        if (m - 2) % (6 * b):
            return FilterResult(False, MOD_6B_CONDITION)
    elif (m - 2) % (12 * b):
        return FilterResult(False, MOD_12B_CONDITION)
    return FilterResult(True)


@dataclass(frozen=True)
class GhGamma:
    n: int
    m: int
    rho: int
    gamma: int

    @property
    def betti(self) -> int:
        return self.n - self.rho


def gh_word(m: int) -> DefiningWord:
    """x_0 x_m x_1^-1."""
    return gnmk_word(m, 1)


def gh_gamma(n: int, m: int) -> GhGamma:
    if not 2 <= m < n:
        raise ValueError(f"need 2 <= m < n; got n={n}, m={m}")
    res = poly_path(representer_polynomial(gh_word(m), n), n)
    if n % 6 == 0 and m % 6 == 2 and res.rho != n - 2:
        raise InvariantViolation(f"H({n},{m}) should have rank n-2, got {res.rho}")
    return GhGamma(n, m, res.rho, res.gamma)


def gilbert_howie_classification(n: int, m: int) -> LogClassification:
    g = gh_gamma(n, m)
    if g.gamma != 1:
        return LogClassification("not_log", (), "abelianisation has torsion")
    if m == 2 and n % 6 == 0:
        return LogClassification("log_sieradski", (n // 6,), "S(2,6l) carries an explicit LOG presentation")
    if g.betti == 0:
        return LogClassification("log_free_of_rank", (0,), "perfect: free abelianisation of rank 0")
    return LogClassification("unknown_conjectural", (g.betti,), "free abelianisation without a known LOG presentation")


@dataclass(frozen=True)
class SieradskiLOG:
    l: int
    log: LOG
    presentation: GenericPresentation


def sieradski_log(l: int) -> SieradskiLOG:
    """LOG for S(2, 6l) on vertices a_0..a_{2l-1}, b_0..b_{2l-1}; subscripts mod 2l.

    For each j < l the four conjugation relations are
    a_{2j+1} = b_{2j}^-1 a_{2j} b_{2j},  a_{2j+1} = b_{2j+1}^-1 a_{2j+2} b_{2j+1},
    b_{2j} = a_{2j+1}^-1 b_{2j+1} a_{2j+1},  b_{2j+2} = a_{2j+2}^-1 b_{2j+1} a_{2j+2}.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    size = 2 * l

    def a(i):
        return f"a{i % size}"

    def b(i):
        return f"b{i % size}"

    # (lhs, conjugator, conjugated): lhs = conjugator^-1 conjugated conjugator
    equations = []
    for j in range(l):
        equations += [
            (a(2 * j + 1), b(2 * j), a(2 * j)),
            (a(2 * j + 1), b(2 * j + 1), a(2 * j + 2)),
            (b(2 * j), a(2 * j + 1), b(2 * j + 1)),
            (b(2 * j + 2), a(2 * j + 2), b(2 * j + 1)),
        ]
    vertices = tuple(a(i) for i in range(size)) + tuple(b(i) for i in range(size))
    log = LOG(vertices, tuple(Edge(init=x, term=lhs, label=y) for lhs, y, x in equations))
    relators = tuple(((lhs, -1), (y, -1), (x, 1), (y, 1)) for lhs, y, x in equations)
    pres = GenericPresentation(vertices, relators)
    if pres != log_to_presentation(log):
        raise InvariantViolation("LOG presentation differs from the conjugation relations")
    return SieradskiLOG(l, log, pres)


# -- Prishchepov groups --------------------------------------------------------

@dataclass(frozen=True)
class PrishchepovParams:
    r: int
    n: int
    k: int
    s: int
    q: int

    def __post_init__(self):
        if min(self.r, self.s, self.n) < 1:
            raise ValueError("r, s, n must be positive")
        if not (0 <= self.k < self.n and 0 <= self.q < self.n):
            raise ValueError("need 0 <= k, q < n")

    def word(self) -> DefiningWord:
        """x_0 x_q .. x_{(r-1)q} (x_{k-1} x_{q+k-1} .. x_{(s-1)q+k-1})^-1; a negative offset is taken mod n."""
        pos = tuple((self.q * j, 1) for j in range(self.r))
        neg = tuple(((self.q * j + self.k - 1) % self.n if self.q * j + self.k - 1 < 0
                     else self.q * j + self.k - 1, -1) for j in reversed(range(self.s)))
        return DefiningWord(pos + neg)

    def presentation(self) -> CyclicPresentation:
        return CyclicPresentation(self.n, self.word())


def prishchepov_representer(p: PrishchepovParams, n: int | None = None) -> IntPolynomial:
    """sum_{j<r} t^(qj) - sum_{j<s} t^(qj+k-1), exponents reduced mod n (or the override)."""
    n = p.n if n is None else n
    terms = [((p.q * j) % n, 1) for j in range(p.r)]
    terms += [((p.q * j + p.k - 1) % n, -1) for j in range(p.s)]
    return from_terms(terms)


@dataclass(frozen=True)
class PrishchepovCheck:
    passes: bool
    failed: str | None
    failures: tuple[str, ...]
    odd_part_order: int


def prishchepov_z_check(p: PrishchepovParams) -> PrishchepovCheck:
    """Necessary (not sufficient) conditions for P(r,n,k,s,q)^ab = Z when r != s."""
    r, n, k, s, q = p.r, p.n, p.k, p.s, p.q
    if r == s:
        raise EqualRS("the conditions apply only when r != s")
    c = largest_odd_divisor(n)
    odd_order = resultant(prishchepov_representer(p, c), IntPolynomial.cyclic(c))
    checks = [
        ("n_even", n % 2 == 0),
        ("gcd(n,k-1,q)=1", math.gcd(n, k - 1, q) == 1),
        ("|r-s|=2", abs(r - s) == 2),
        ("q_odd", q % 2 == 1),
        ("s_even_or_s_and_k_odd", s % 2 == 0 or k % 2 == 1),
        ("odd_part_order=2", odd_order == 2),
    ]
    failures = tuple(tag for tag, ok in checks if not ok)
    return PrishchepovCheck(not failures, failures[0] if failures else None, failures, odd_order)
