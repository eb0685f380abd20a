"""Abelianisations of cyclically presented groups, computed two ways.

The direct path takes the Smith normal form of the circulant relation
matrix. The polynomial path splits the representer f against g = t^n - 1:
with z = gcd(f, g), F = f/z and G = g/z, the rank of the circulant is
n - deg z and the product of its invariant factors is |Res(F, G)|.
The two must agree; everything else in this module is built on the
polynomial path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .errors import ZeroRepresenter
from .exactmat import AbelianStructure, abelian_structure_of
from .intpoly import (
    IntPolynomial,
    evaluate,
    gcd_with_cyclic,
    largest_odd_divisor,
    poly_divexact,
    resultant,
)
from .presentation import CyclicPresentation, relation_matrix

__all__ = [
    "AbelianStructure", "PolyPathResult", "BettiParity", "InfiniteCyclicResult",
    "PositiveWordClass", "abelianisation_direct", "abelianisation_poly",
    "is_perfect", "is_free_abelianisation", "betti_parity",
    "is_infinite_cyclic_ab", "positive_word_class", "report",
]


@dataclass(frozen=True)
class PolyPathResult:
    z: IntPolynomial
    F: IntPolynomial
    G: IntPolynomial
    rho: int
    gamma: int
    n: int

    @property
    def betti(self) -> int:
        return self.n - self.rho


def abelianisation_direct(p: CyclicPresentation) -> AbelianStructure:
    return abelian_structure_of(relation_matrix(p))


def poly_path(f: IntPolynomial, n: int) -> PolyPathResult:
    if f.is_zero():
        raise ZeroRepresenter("representer polynomial is zero; use the direct path")
    g = IntPolynomial.cyclic(n)
    z = gcd_with_cyclic(f, n)
    F = poly_divexact(f, z)
    G = poly_divexact(g, z)
    return PolyPathResult(z, F, G, n - z.degree, resultant(F, G), n)


def abelianisation_poly(p: CyclicPresentation) -> PolyPathResult:
    return poly_path(p.representer, p.n)


def is_perfect(p: CyclicPresentation) -> bool:
    return resultant(p.representer, IntPolynomial.cyclic(p.n)) == 1


def is_free_abelianisation(p: CyclicPresentation) -> bool:
    return abelianisation_poly(p).gamma == 1


@dataclass(frozen=True)
class BettiParity:
    betti: int
    odd: bool
    case: str


def parity_case(f: IntPolynomial, n: int) -> str:
    """Which branch of the real-root parity rule applies to f against t^n - 1."""
    f1, fm1 = evaluate(f, 1), evaluate(f, -1)
    if n % 2:
        return "odd_n_root1" if f1 == 0 else "even_parity"
    if f1 == 0 and fm1 != 0:
        return "even_n_root1_only"
    if fm1 == 0 and f1 != 0:
        return "even_n_rootm1_only"
    return "even_parity"


def betti_parity(p: CyclicPresentation) -> BettiParity:
    f = p.representer
    if f.is_zero():
        raise ZeroRepresenter("representer polynomial is zero")
    betti = gcd_with_cyclic(f, p.n).degree
    case = parity_case(f, p.n)
    return BettiParity(betti, case != "even_parity", case)


@dataclass(frozen=True)
class InfiniteCyclicResult:
    result: bool
    case: str | None
    witness: dict[str, Any] = field(default_factory=dict)


def coefficient_stride(f: IntPolynomial) -> int:
    """Largest d with f in Z[t^d]; 0 for constants, where every d qualifies."""
    return math.gcd(*(i for i, c in enumerate(f.coeffs) if c))


def _geometric(n: int, sign: int) -> IntPolynomial:
    """sum_{i<n} (sign*t)^i."""
    return IntPolynomial(tuple(sign**i for i in range(n)))


def infinite_cyclic_test(f: IntPolynomial, n: int) -> InfiniteCyclicResult:
    """Decide G^ab = Z from the representer f alone, case by case."""
    if f.is_zero():
        raise ZeroRepresenter("representer polynomial is zero")
    if f.degree == 0:
        return InfiniteCyclicResult(False, None, {"diagnostic": "ConstantRepresenter"})
    nu = coefficient_stride(f)
    f1, fm1 = evaluate(f, 1), evaluate(f, -1)
    witness: dict[str, Any] = {"nu": nu, "gcd_n_nu": math.gcd(n, nu), "f(1)": f1, "f(-1)": fm1}
    if math.gcd(n, nu) != 1:
        return InfiniteCyclicResult(False, None, witness)
    z = gcd_with_cyclic(f, n)
    witness["z"] = z
    t_minus_1 = IntPolynomial((-1, 1))
    t_plus_1 = IntPolynomial((1, 1))
    if f1 == 0 and z == t_minus_1 and (n % 2 == 1 or abs(fm1) == 2):
        cof = resultant(poly_divexact(f, t_minus_1), _geometric(n, 1))
        witness["cofactor_resultant"] = cof
        if cof == 1:
            return InfiniteCyclicResult(True, "a" if n % 2 else "b", witness)
    elif n % 2 == 0 and fm1 == 0 and abs(f1) == 2 and z == t_plus_1:
        cof = resultant(poly_divexact(f, t_plus_1), _geometric(n, -1))
        c = largest_odd_divisor(n)
        odd_part = resultant(f, IntPolynomial.cyclic(c))
        witness.update(cofactor_resultant=cof, c=c, odd_part_resultant=odd_part)
        if cof == 1 and odd_part == 2:
            return InfiniteCyclicResult(True, "c", witness)
    return InfiniteCyclicResult(False, None, witness)


def is_infinite_cyclic_ab(p: CyclicPresentation) -> InfiniteCyclicResult:
    return infinite_cyclic_test(p.representer, p.n)


@dataclass(frozen=True)
class PositiveWordClass:
    kind: str  # trivial_len1 | len2 | not_Z_len3plus | not_positive
    k: int | None = None
    gcd_nk: int | None = None
    free_rank: int | None = None
    z2_copies: int | None = None
    ab_is_Z: bool = False


def positive_word_class(p: CyclicPresentation) -> PositiveWordClass:
    """Structure of G_n(w) for positive w of length <= 2; a verdict for longer ones.

    Length 2 means G_n(x_0 x_k): for k = 0 it is Z_2^n; otherwise with
    e = (n, k) it is free of rank e when n/e is even and the free product
    of e copies of Z_2 when n/e is odd.
    """
    w = p.word
    if not w.is_positive():
        return PositiveWordClass("not_positive")
    length = len(w)
    if length == 1:
        return PositiveWordClass("trivial_len1")
    if length >= 3:
        return PositiveWordClass("not_Z_len3plus")
    offsets = [o for o, e in w.letters for _ in range(e)]
    n = p.n
    k = (offsets[1] - offsets[0]) % n
    if k == 0:
        return PositiveWordClass("len2", k=0, gcd_nk=n, z2_copies=n)
    e = math.gcd(n, k)
    if (n // e) % 2 == 0:
        return PositiveWordClass("len2", k=k, gcd_nk=e, free_rank=e, ab_is_Z=(e == 1))
    return PositiveWordClass("len2", k=k, gcd_nk=e, z2_copies=e)


def report(p: CyclicPresentation, *, word_text: str | None = None, with_matrix: bool = False) -> dict:
    """JSON-ready summary of one presentation. Big integers are decimal strings."""
    from .jsonio import decimal_str

    f = p.representer
    direct = abelianisation_direct(p)
    out: dict[str, Any] = {
        "n": p.n,
        "word": word_text if word_text is not None else str(p.word),
        "representer": f.to_json(),
        "betti": direct.betti,
        "torsion": [decimal_str(t) for t in direct.torsion],
        "gamma": decimal_str(direct.gamma),
        "perfect": is_perfect(p),
    }
    if f.is_zero():
        out["z"] = IntPolynomial.cyclic(p.n).to_json()
        out["free_abelian"] = direct.is_free()
        out["infinite_cyclic_ab"] = direct.is_free() and direct.betti == 1
        out["case"] = None
    else:
        poly = abelianisation_poly(p)
        if poly.gamma != direct.gamma or poly.betti != direct.betti:
            from .errors import InvariantViolation
            raise InvariantViolation(f"direct and polynomial paths disagree for {p}")
        ic = is_infinite_cyclic_ab(p)
        out["z"] = poly.z.to_json()
        out["free_abelian"] = poly.gamma == 1
        out["infinite_cyclic_ab"] = ic.result
        out["case"] = ic.case
    if with_matrix:
        out["matrix"] = relation_matrix(p).to_json()
    return out
