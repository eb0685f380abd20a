"""Built-in verification batteries.

Each suite returns a list of CheckResult; a check records how many
instances it examined and the first one that failed. The command line
``verify`` subcommand and the acceptance tests both run these.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from .abelian import parity_case, poly_path, infinite_cyclic_test
from .errors import UnknownSuite, ZeroRepresenter
from .exactmat import abelian_structure_of, circulant
from .families import (
    GnmkParams,
    HrnsParams,
    PrishchepovParams,
    gh_gamma,
    gilbert_howie_filter,
    gnmk_free_necessary_conditions,
    gnmk_rank2_check,
    gnmk_resultant_class,
    hrns_abelianisation,
    hrns_log_classification,
    hrns_representer,
    hrns_is_perfect_predicate,
    prishchepov_representer,
    prishchepov_z_check,
    sieradski_log,
    strongly_irreducible,
)
from .intpoly import (
    IntPolynomial,
    cyclotomic,
    cyclotomic_resultant_formula,
    divisors,
    gcd_with_cyclic,
    lucas,
    mahler_measure,
    resultant,
    resultant_sylvester,
)
from .presentation import DefiningWord, exponent_sums, log_components
from .search import growth_report, scan_gilbert_howie, scan_gilbert_howie_conjecture


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    checked: int = 0
    failure: Any = None
    detail: dict = field(default_factory=dict)

    def record(self, ok: bool, instance: Any) -> None:
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.failure = instance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.name} ({self.checked} checked)"
        if self.detail:
            out += " " + ", ".join(f"{k}={v}" for k, v in self.detail.items())
        if not self.passed:
            out += f"; first failure: {self.failure}"
        return out


# -- exhaustive word grid ----------------------------------------------------

def grid_vectors(max_letters: int = 5, offsets: int = 6, exponents=(-2, -1, 1, 2)) -> set[tuple[int, ...]]:
    """Exponent-sum vectors of every word with 1..max_letters letters.

    Both computation paths see a word only through these sums, so the set
    of distinct vectors covers the word grid exactly.
    """
    zero = (0,) * offsets
    level, seen = {zero}, set()
    for _ in range(max_letters):
        nxt = set()
        for v in level:
            for o in range(offsets):
                for e in exponents:
                    w = list(v)
                    w[o] += e
                    nxt.add(tuple(w))
        seen |= nxt
        level = nxt
    return seen


def fold(vec: tuple[int, ...], n: int) -> tuple[int, ...]:
    a = [0] * n
    for i, c in enumerate(vec):
        a[i % n] += c
    return tuple(a)


def grid_cases(n_max: int = 16, **kw) -> Iterator[tuple[int, tuple[int, ...]]]:
    vectors = grid_vectors(**kw)
    for n in range(1, n_max + 1):
        for a in sorted({fold(v, n) for v in vectors}):
            yield n, a


def random_word(rng: random.Random, n: int) -> DefiningWord:
    letters = []
    for _ in range(rng.randint(1, 6)):
        letters.append((rng.randrange(3 * n), rng.choice((-3, -2, -1, 1, 2, 3))))
    return DefiningWord(tuple(letters))


@dataclass
class GridOutcome:
    oracle: CheckResult
    zero_representers: CheckResult
    infinite_cyclic: CheckResult
    parity: CheckResult
    perfect: CheckResult
    cases: int
    elapsed: float

    def checks(self) -> list[CheckResult]:
        return [self.oracle, self.zero_representers, self.infinite_cyclic, self.parity, self.perfect]


def run_grid(n_max: int = 16, max_letters: int = 5, random_pairs: int = 200, seed: int = 20240611) -> GridOutcome:
    """Compare both paths, and the predicates built on the polynomial path, over the grid."""
    start = time.perf_counter()
    oracle = CheckResult("poly path equals SNF (betti, gamma)")
    zeros = CheckResult("zero representer: SNF gives Z^n, poly path refuses")
    ic = CheckResult("infinite cyclic test equals (betti, torsion) = (1, none)")
    parity = CheckResult("betti parity rule")
    perfect = CheckResult("perfect iff Res(f, t^n - 1) = 1")

    def one(n: int, a: tuple[int, ...], origin: Any) -> None:
        direct = abelian_structure_of(circulant(list(a)))
        f = IntPolynomial(a)
        if f.is_zero():
            try:
                poly_path(f, n)
                refused = False
            except ZeroRepresenter:
                refused = True
            zeros.record(refused and direct.betti == n and not direct.torsion, origin)
            return
        res = poly_path(f, n)
        oracle.record((res.betti, res.gamma) == (direct.betti, direct.gamma), origin)
        is_z = direct.betti == 1 and not direct.torsion
        ic.record(infinite_cyclic_test(f, n).result == is_z, origin)
        parity.record((parity_case(f, n) != "even_parity") == (direct.betti % 2 == 1), origin)
        trivial = direct.betti == 0 and not direct.torsion
        perfect.record((resultant(f, IntPolynomial.cyclic(n)) == 1) == trivial, origin)

    cases = 0
    for n, a in grid_cases(n_max, max_letters=max_letters):
        one(n, a, {"n": n, "exponent_sums": a})
        cases += 1
    rng = random.Random(seed)
    for _ in range(random_pairs):
        n = rng.randint(1, 40)
        w = random_word(rng, n)
        one(n, tuple(exponent_sums(w, n)), {"n": n, "word": str(w)})
        cases += 1
    return GridOutcome(oracle, zeros, ic, parity, perfect, cases, time.perf_counter() - start)


# -- suites ------------------------------------------------------------------

def suite_oracle(quick: bool = False) -> list[CheckResult]:
    if quick:
        return run_grid(n_max=8, max_letters=3, random_pairs=50).checks()
    return run_grid().checks()


def check_hrns_formulas(r_max: int = 8, n_max: int = 24) -> CheckResult:
    c = CheckResult("H(r,n,s) closed form equals generic path")
    for s in range(1, r_max + 1):
        for r in range(1, s + 1):
            for n in range(1, n_max + 1):
                for p in {HrnsParams(r, n, s), HrnsParams(s, n, r)}:
                    h = hrns_abelianisation(p)
                    ok = h.agrees and (h.order_formula is None or h.order_formula == h.gamma)
                    c.record(ok, (p.r, p.n, p.s))
    return c


def suite_hrns(quick: bool = False) -> list[CheckResult]:
    r_max, n_max = (4, 12) if quick else (8, 24)
    formulas = check_hrns_formulas(r_max, n_max)
    spot = CheckResult("H(2,6,4): torsion order 16, betti 1")
    h = hrns_abelianisation(HrnsParams(2, 6, 4))
    spot.record((h.gamma, h.betti) == (16, 1), (h.gamma, h.betti))
    perfect = CheckResult("perfect iff |r-s| = 1 and n divides r or s")
    labels = CheckResult("LOG verdicts consistent with gamma")
    for r in range(1, r_max + 1):
        for s in range(1, r_max + 1):
            for n in range(1, n_max + 1):
                g = hrns_abelianisation(HrnsParams(r, n, s)).generic
                perfect.record(hrns_is_perfect_predicate(r, n, s) == (g.betti == 0 and g.gamma == 1), (r, n, s))
                try:
                    hrns_log_classification(HrnsParams(r, n, s))
                    labels.record(True, (r, n, s))
                except AssertionError:
                    labels.record(False, (r, n, s))
    factor = CheckResult("gcd(f, t^n - 1) is 1+t+..+t^(d-1) for s > r and 1-t^d for s = r")
    for s_ in range(1, r_max + 1):
        for r in range(1, s_ + 1):
            for n in range(1, n_max + 1):
                d = math.gcd(r, n, s_)
                f = hrns_representer(r, s_)
                if r == s_ and n % r == 0:
                    continue  # f vanishes modulo t^n - 1
                z = gcd_with_cyclic(f, n)
                want = IntPolynomial((1,) * d) if s_ > r else IntPolynomial((1,) + (0,) * (d - 1) + (-1,))
                factor.record(z == want or z == -want, (r, n, s_))
    return [formulas, spot, perfect, labels, factor]


def check_gnmk_truth_table(n_max: int = 36) -> CheckResult:
    c = CheckResult("G_n(m,k) resultant classes from congruences")
    for n in range(1, n_max + 1):
        for m in range(n):
            for k in range(n):
                p = GnmkParams(n, m, k)
                if p.irreducible():
                    res = gnmk_resultant_class(p)
                    c.record(res.consistent, {"n": n, "m": m, "k": k, "kind": res.kind, "value": res.value})
    return c


def check_no_rank2(n_max: int = 48) -> CheckResult:
    c = CheckResult("strongly irreducible G_n(m,k) never has abelianisation Z^2")
    for n in range(1, n_max + 1):
        for m in range(n):
            for k in range(n):
                p = GnmkParams(n, m, k)
                if strongly_irreducible(p):
                    c.record(not gnmk_rank2_check(p).is_Z2, (n, m, k))
    c.detail["hits"] = 0 if c.passed else 1
    return c


def suite_gnmk(quick: bool = False) -> list[CheckResult]:
    n1, n2 = (18, 24) if quick else (36, 48)
    table = check_gnmk_truth_table(n1)
    rank2 = check_no_rank2(n2)
    three = CheckResult("gamma = 1 with 6 | n and m = 2k mod 6 forces the three cases")
    for n in range(6, n1 + 1, 6):
        for m in range(n):
            for k in range(n):
                chk = gnmk_free_necessary_conditions(GnmkParams(n, m, k))
                if chk.applies:
                    three.record(chk.holds, (n, m, k))
    return [table, rank2, three]


def check_gh_special_shapes(bs=(1, 5, 7, 11)) -> CheckResult:
    c = CheckResult("n in {6b,12b,24b}: gamma = 1 only at m = 2")
    for b in bs:
        for n in (6 * b, 12 * b, 24 * b):
            for m in range(2, n, 6):
                g = gh_gamma(n, m)
                c.record((g.gamma == 1) == (m == 2), (n, m))
    return c


def check_lucas(b_max: int = 4) -> CheckResult:
    c = CheckResult("Res(-t^2-t+1, t^(12b)+1) = 2 + L_(12b) > 192 b^2")
    h = IntPolynomial((1, -1, -1))
    for b in range(1, b_max + 1):
        g = IntPolynomial((1,) + (0,) * (12 * b - 1) + (1,))
        val = resultant(h, g)
        c.record(val == 2 + lucas(12 * b) and val > 192 * b * b, {"b": b, "resultant": val})
    c.record(2 + lucas(12) == 324, {"b": 1, "2+L_12": 2 + lucas(12)})
    return c


def check_gh_scan(n_max: int = 36) -> CheckResult:
    rep = scan_gilbert_howie_conjecture(n_max)
    c = CheckResult(f"no m != 2 with free abelianisation in H(n,m), n <= {n_max}")
    c.checked = rep.stats["candidates"]
    c.detail.update(rep.stats)
    if rep.hits:
        c.passed, c.failure = False, rep.hits[0]
    return c


def suite_gilbert_howie(quick: bool = False) -> list[CheckResult]:
    shapes = check_gh_special_shapes((1, 5) if quick else (1, 5, 7, 11))
    lucas_check = check_lucas(2 if quick else 4)
    scan = check_gh_scan(24 if quick else 36)
    sound = CheckResult("filter never rejects a gamma = 1 instance")
    unfiltered = scan_gilbert_howie(range(6, (24 if quick else 36) + 1, 6), use_filter=False)
    for row in unfiltered.rows:
        sound.record(not row.hit or gilbert_howie_filter(row.n, row.m).passes, (row.n, row.m))
    stat = CheckResult("filter statistics: H(12,8) rejected by gcd(m,n)=2")
    stat.record(gilbert_howie_filter(12, 8).failed_condition == "gcd(m,n)=2", (12, 8))
    return [shapes, lucas_check, scan, sound, stat]


def suite_sieradski(quick: bool = False) -> list[CheckResult]:
    l_max, n_max = (4, 24) if quick else (8, 48)
    logs = CheckResult("S(2,6l) LOG: 2 components, abelianisation Z^2, gamma 1")
    for l in range(1, l_max + 1):
        s = sieradski_log(l)
        ab = s.presentation.abelianisation()
        ok = log_components(s.log) == 2 and ab.betti == 2 and not ab.torsion and gh_gamma(6 * l, 2).gamma == 1
        logs.record(ok, {"l": l, "components": log_components(s.log), "ab": str(ab)})
    other = CheckResult("6 does not divide n: S(2,n)^ab is not Z^2")
    for n in range(3, n_max + 1):
        if n % 6:
            g = gh_gamma(n, 2)
            other.record(g.gamma != 1 or g.betti != 2, n)
    return [logs, other]


def suite_prishchepov(quick: bool = False) -> list[CheckResult]:
    spot = CheckResult("P(4,10,3,2,7): representer and abelianisation Z")
    p = PrishchepovParams(4, 10, 3, 2, 7)
    expected = IntPolynomial((1, 1, -1, 0, 1, 0, 0, 1, 0, -1))
    f = prishchepov_representer(p)
    direct = abelian_structure_of(circulant(exponent_sums(p.word(), p.n)))
    poly = poly_path(f, p.n)
    spot.record(f == expected and f == p.presentation().representer, str(f))
    spot.record(direct.betti == 1 and not direct.torsion and (poly.betti, poly.gamma) == (1, 1),
                {"direct": str(direct), "poly": (poly.betti, poly.gamma)})
    scan = CheckResult("every P(r,n,k,s,q) with abelianisation Z passes the necessary conditions")
    cross = CheckResult("ab = Z test agrees with SNF on P(r,n,k,s,q)")
    rs_max, n_max = (4, 8) if quick else (5, 12)
    found = 0
    for r in range(1, rs_max + 1):
        for s in range(1, rs_max + 1):
            if r == s:
                continue
            for n in range(1, n_max + 1):
                for k in range(n):
                    for q in range(n):
                        pp = PrishchepovParams(r, n, k, s, q)
                        is_z = infinite_cyclic_test(prishchepov_representer(pp), n).result
                        direct = abelian_structure_of(circulant(exponent_sums(pp.word(), n)))
                        cross.record(is_z == (direct.betti == 1 and not direct.torsion), (r, n, k, s, q))
                        if is_z:
                            found += 1
                            chk = prishchepov_z_check(pp)
                            scan.record(chk.passes, {"params": (r, n, k, s, q), "failed": chk.failed})
    scan.detail["instances_with_ab_Z"] = found
    return [spot, cross, scan]


def check_cyclotomic_closed_form(limit: int = 60) -> CheckResult:
    c = CheckResult(f"closed form for Res(Phi_m, Phi_n), n < m <= {limit}")
    for m in range(2, limit + 1):
        for n in range(1, m):
            c.record(cyclotomic_resultant_formula(m, n) == resultant(cyclotomic(m), cyclotomic(n)), (m, n))
    return c


def suite_cyclotomic(quick: bool = False) -> list[CheckResult]:
    limit = 30 if quick else 60
    closed = check_cyclotomic_closed_form(limit)
    product = CheckResult("t^n - 1 is the product of Phi_d over d | n")
    for n in range(1, limit + 1):
        prod = IntPolynomial((1,))
        for d in divisors(n):
            prod = prod * cyclotomic(d)
        product.record(prod == IntPolynomial.cyclic(n), n)
    split = CheckResult("Res(f, t^n - 1) = product of Res(f, Phi_d)")
    algos = CheckResult("subresultant PRS equals Sylvester determinant")
    rng = random.Random(7)
    for _ in range(60 if quick else 200):
        f = IntPolynomial(tuple(rng.randint(-3, 3) for _ in range(rng.randint(1, 6))))
        n = rng.randint(1, 24)
        if f.is_zero():
            continue
        g = IntPolynomial.cyclic(n)
        split.record(resultant(f, g) == math.prod(resultant(f, cyclotomic(d)) for d in divisors(n)), (str(f), n))
        algos.record(resultant(f, g) == resultant_sylvester(f, g), (str(f), n))
    return [closed, product, split, algos]


def suite_growth(quick: bool = False) -> list[CheckResult]:
    golden = CheckResult("M(t^2 - t - 1) = 1.6180339887 within 1e-8")
    mu = mahler_measure(IntPolynomial((-1, -1, 1))).measure
    golden.record(abs(mu - 1.6180339887) < 1e-8, mu)
    cyc = CheckResult("M(Phi_d) = 1 within 1e-8")
    for d in range(1, (20 if quick else 50) + 1):
        m = mahler_measure(cyclotomic(d)).measure
        cyc.record(abs(m - 1) < 1e-8, {"d": d, "measure": m})
    ratio = CheckResult("growth ratio of t^3 - t - 1 in [0.9, 1.1]")
    rep = growth_report(IntPolynomial((-1, -1, 0, 1)), [50, 100])
    for s in rep.samples:
        ratio.record(s.ratio is not None and 0.9 <= s.ratio <= 1.1, {"n": s.n, "ratio": s.ratio})
    ratio.record(len(rep.samples) == 2, {"skipped": rep.skipped})
    lower_bound = CheckResult("Phi_d(2) > 2^(sqrt(d)/4) for 4 <= d <= 100")
    for d in range(4, 101):
        lower_bound.record(math.log2(cyclotomic(d)(2)) > math.sqrt(d) / 4, d)
    return [golden, cyc, ratio, lower_bound]


SUITES: dict[str, Callable[[bool], list[CheckResult]]] = {
    "oracle": suite_oracle,
    "hrns": suite_hrns,
    "gnmk": suite_gnmk,
    "gilbert-howie": suite_gilbert_howie,
    "sieradski": suite_sieradski,
    "prishchepov": suite_prishchepov,
    "cyclotomic": suite_cyclotomic,
    "growth": suite_growth,
}


def run_suite(name: str, quick: bool = False) -> list[CheckResult]:
    if name == "all":
        return [c for key in SUITES for c in SUITES[key](quick)]
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join([*SUITES, 'all'])}")
    return SUITES[name](quick)
