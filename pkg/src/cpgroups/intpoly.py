"""Exact arithmetic on polynomials with integer coefficients.

A polynomial is stored densely, constant term first::

    >>> IntPolynomial((1, 1, -1))
    IntPolynomial('-t^2 + t + 1')

Everything here is exact except :func:`mahler_measure`, which is a numeric
diagnostic. Resultants are always reported in absolute value.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import mpmath

from .errors import (
    BothZero,
    ConstantPolynomial,
    EqualIndices,
    NotDivisible,
    PolySyntaxError,
    ZeroPolynomial,
)

POLY_GRAMMAR = "poly := term (('+'|'-') term)*   term := INT | INT? 't' ('^' UINT)?"


# -- small number theory helpers ---------------------------------------------

@functools.lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``n >= 1`` as ``((p, e), ...)`` by trial division."""
    if n < 1:
        raise ValueError(f"cannot factorise {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@functools.lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def totient(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def prime_power_base(n: int) -> int | None:
    """Return p if ``n = p^k`` with k >= 1, else None."""
    if n < 2:
        return None
    f = factorize(n)
    return f[0][0] if len(f) == 1 else None


def largest_odd_divisor(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


# -- the polynomial type -----------------------------------------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; ``coeffs[i]`` is the coefficient of t^i.

    Trailing zeros are stripped on construction, so the zero polynomial has
    ``coeffs == ()`` and degree -1.
    """
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = _trim([int(x) for x in self.coeffs])
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls((0,) * k + (c,))

    @classmethod
    def cyclic(cls, n: int) -> IntPolynomial:
        """t^n - 1."""
        return cls((-1,) + (0,) * (n - 1) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __add__(self, other: IntPolynomial | int) -> IntPolynomial:
        return poly_arith(self, _lift(other), "add")

    def __sub__(self, other: IntPolynomial | int) -> IntPolynomial:
        return poly_arith(self, _lift(other), "sub")

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        return poly_arith(self, _lift(other), "mul")

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other: int) -> IntPolynomial:
        return poly_arith(_lift(other), self, "sub")

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __pow__(self, k: int) -> IntPolynomial:
        result = IntPolynomial((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __floordiv__(self, other: IntPolynomial) -> IntPolynomial:
        return poly_divexact(self, other)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "" if i == 0 else "t" if i == 1 else f"t^{i}"
            body = str(mag) if (mag != 1 or i == 0) else ""
            term = body + mono
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(f"{sign} {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"IntPolynomial('{self}')"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> IntPolynomial:
        return cls(tuple(int(x) for x in data))


def _lift(x: IntPolynomial | int) -> IntPolynomial:
    return x if isinstance(x, IntPolynomial) else IntPolynomial((x,))


ONE = IntPolynomial((1,))
T = IntPolynomial((0, 1))


# -- ring operations ---------------------------------------------------------

def poly_arith(p: IntPolynomial, q: IntPolynomial, op: str) -> IntPolynomial:
    a, b = p.coeffs, q.coeffs
    if op == "add" or op == "sub":
        sgn = 1 if op == "add" else -1
        n = max(len(a), len(b))
        out = [0] * n
        for i, x in enumerate(a):
            out[i] = x
        for i, y in enumerate(b):
            out[i] += sgn * y
        return IntPolynomial(tuple(out))
    if op == "mul":
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))
    raise ValueError(f"unknown operation {op!r}")


def _divmod_lists(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    """Integer long division; raises NotDivisible if a quotient coefficient is not integral."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        qc, rem = divmod(c, lb)
        if rem:
            raise NotDivisible(f"leading coefficient {c} not divisible by {lb}")
        s = k - db
        q[s] = qc
        for i in range(db + 1):
            r[s + i] -= qc * b[i]
    return q, _trim(r[:db] if db else [])


def poly_divexact(p: IntPolynomial, d: IntPolynomial) -> IntPolynomial:
    """Return q with q*d == p; raise NotDivisible otherwise."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return IntPolynomial()
    q, r = _divmod_lists(p.coeffs, d.coeffs)
    if r:
        raise NotDivisible(f"{d} does not divide {p}")
    return IntPolynomial(tuple(q))


def _rem_monic(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Remainder of a modulo the monic polynomial b."""
    r = list(a)
    db = len(b) - 1
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            s = k - db
            for i in range(db + 1):
                r[s + i] -= c * b[i]
    return _trim(r[:db] if len(r) > db else r)


def divides(d: IntPolynomial, p: IntPolynomial) -> bool:
    try:
        poly_divexact(p, d)
    except NotDivisible:
        return False
    return True


def evaluate(p: IntPolynomial, x: int) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


# -- cyclotomic polynomials --------------------------------------------------

@functools.lru_cache(maxsize=1024)
def cyclotomic(d: int) -> IntPolynomial:
    """Phi_d, by dividing t^d - 1 by Phi_e for every proper divisor e of d."""
    if d < 1:
        raise ValueError("cyclotomic index must be >= 1")
    p = IntPolynomial.cyclic(d)
    for e in divisors(d)[:-1]:
        p = poly_divexact(p, cyclotomic(e))
    return p


def gcd_with_cyclic(f: IntPolynomial, n: int) -> IntPolynomial:
    """Monic gcd of f and t^n - 1, as the product of the Phi_d (d | n) dividing f."""
    if f.is_zero():
        raise ZeroPolynomial("gcd with t^n - 1 is undefined for f = 0 in this API")
    if n < 1:
        raise ValueError("n must be >= 1")
    z = ONE
    for d in divisors(n):
        phi = cyclotomic(d)
        if phi.degree <= f.degree and not _rem_monic(f.coeffs, phi.coeffs):
            z = z * phi
    return z


def cyclotomic_factors(f: IntPolynomial, n: int) -> tuple[int, ...]:
    """Indices d | n with Phi_d dividing f."""
    return tuple(d for d in divisors(n)
                 if cyclotomic(d).degree <= f.degree
                 and not _rem_monic(f.coeffs, cyclotomic(d).coeffs))


# -- resultants --------------------------------------------------------------

def _content(c: Sequence[int]) -> int:
    return math.gcd(*c)


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        c = r[-1]
        s = len(r) - 1 - db
        if lb != 1:
            r = [lb * x for x in r]
        for i in range(db + 1):
            r[s + i] -= c * b[i]
        r.pop()
        _trim(r)
        e -= 1
    if e > 0 and r:
        f = lb**e
        r = [f * x for x in r]
    return r


def _signed_resultant(a: list[int], b: list[int]) -> int:
    """Subresultant PRS resultant of two nonzero polynomials (Collins' algorithm)."""
    ca, cb = _content(a), _content(b)
    if ca != 1:
        a = [x // ca for x in a]
    if cb != 1:
        b = [x // cb for x in b]
    da, db = len(a) - 1, len(b) - 1
    t = ca**db * cb**da
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            s = -s
    g = h = 1
    while db > 0:
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _prem(a, b)
        if not r:
            return 0
        a = b
        div = g * h**delta
        b = [x // div for x in r]
        g = a[-1]
        if delta:
            h = g**delta // h ** (delta - 1)
        da, db = len(a) - 1, len(b) - 1
    # b is a nonzero constant here
    h = b[-1] ** da // h ** (da - 1) if da else 1
    return s * t * h


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """|Res(p, q)| by the subresultant polynomial remainder sequence."""
    if p.is_zero() and q.is_zero():
        raise BothZero("resultant of two zero polynomials")
    if p.is_zero() or q.is_zero():
        other = q if p.is_zero() else p
        return 0 if other.degree > 0 else 1
    return abs(_signed_resultant(list(p.coeffs), list(q.coeffs)))


def sylvester_matrix(p: IntPolynomial, q: IntPolynomial) -> list[list[int]]:
    m, n = p.degree, q.degree
    size = m + n
    a = p.coeffs[::-1]
    b = q.coeffs[::-1]
    rows = []
    for i in range(n):
        rows.append([0] * i + list(a) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(b) + [0] * (size - n - 1 - i))
    return rows


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination determinant of a square integer matrix."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            mik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - mik * rk[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


def resultant_sylvester(p: IntPolynomial, q: IntPolynomial) -> int:
    """|Res(p, q)| as the determinant of the Sylvester matrix; independent check path."""
    if p.is_zero() and q.is_zero():
        raise BothZero("resultant of two zero polynomials")
    if p.is_zero() or q.is_zero():
        other = q if p.is_zero() else p
        return 0 if other.degree > 0 else 1
    return abs(bareiss_determinant(sylvester_matrix(p, q)))


def cyclotomic_resultant_formula(m: int, n: int) -> int:
    """Closed form of |Res(Phi_m, Phi_n)| for m != n.

    With m > n: p^phi(n) when m/n is a power of the prime p, and 1 otherwise.
    """
    if m == n:
        raise EqualIndices(f"Res(Phi_{m}, Phi_{n}) is 0; indices must differ")
    if m < 1 or n < 1:
        raise ValueError("indices must be >= 1")
    if m < n:
        m, n = n, m
    if m % n:
        return 1
    p = prime_power_base(m // n)
    return p ** totient(n) if p else 1


# -- misc --------------------------------------------------------------------

def lucas(k: int) -> int:
    if k < 0:
        raise ValueError("k must be >= 0")
    a, b = 2, 1
    for _ in range(k):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class MahlerEstimate:
    measure: float
    root_moduli: tuple[float, ...]
    tolerance: float


def mahler_measure(p: IntPolynomial, tol: float = 1e-10) -> MahlerEstimate:
    """Numeric Mahler measure |lc| * prod(max(1, |root|)).

    Roots come from mpmath's simultaneous iteration; the working precision
    doubles until two successive measures agree to within ``tol``.
    """
    if p.degree <= 0:
        raise ConstantPolynomial("Mahler measure needs a nonconstant polynomial")
    if tol <= 0:
        raise ValueError("tol must be positive")
    c = list(p.coeffs)
    zeros = 0
    while c[0] == 0:
        c.pop(0)
        zeros += 1
    lead = abs(c[-1])
    hi_first = c[::-1]
    dps, steps = 30, 200
    prev = None
    moduli: list = [mpmath.mpf(0)] * zeros
    while True:
        with mpmath.workdps(dps):
            if len(hi_first) > 1:
                try:
                    roots = mpmath.polyroots(hi_first, maxsteps=steps, extraprec=dps)
                except mpmath.libmp.NoConvergence:
                    dps, steps = dps * 2, steps * 2
                    continue
            else:
                roots = []
            mods = [abs(r) for r in roots]
            measure = mpmath.mpf(lead)
            for x in mods:
                if x > 1:
                    measure *= x
        if prev is not None and abs(measure - prev) < tol:
            break
        if dps > 2000:
            break
        prev = measure
        dps, steps = dps * 2, steps * 2
    moduli = [0.0] * zeros + [float(x) for x in mods]
    return MahlerEstimate(float(measure), tuple(sorted(moduli)), tol)


# -- text grammar ------------------------------------------------------------

def parse_poly(text: str) -> IntPolynomial:
    """Parse e.g. ``"t^8 - t + 1"``; a leading sign on the first term is allowed."""
    s = text
    i = 0
    n = len(s)
    terms: dict[int, int] = {}

    def skip_ws(j: int) -> int:
        while j < n and s[j].isspace():
            j += 1
        return j

    def read_uint(j: int) -> tuple[int | None, int]:
        k = j
        while k < n and s[k].isdigit():
            k += 1
        return (int(s[j:k]), k) if k > j else (None, j)

    i = skip_ws(i)
    if i == n:
        raise PolySyntaxError("empty polynomial", text, i)
    first = True
    while True:
        i = skip_ws(i)
        sign = 1
        if i < n and s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i += 1
        elif not first:
            raise PolySyntaxError("expected '+' or '-'", text, i)
        first = False
        i = skip_ws(i)
        coeff, i = read_uint(i)
        i = skip_ws(i)
        if i < n and s[i] == "t":
            i += 1
            i = skip_ws(i)
            exp = 1
            if i < n and s[i] == "^":
                i = skip_ws(i + 1)
                exp, j = read_uint(i)
                if exp is None:
                    raise PolySyntaxError("expected exponent", text, i)
                i = j
            c = 1 if coeff is None else coeff
        elif coeff is not None:
            exp, c = 0, coeff
        else:
            raise PolySyntaxError("expected integer or 't'", text, i)
        terms[exp] = terms.get(exp, 0) + sign * c
        i = skip_ws(i)
        if i == n:
            break
    if not terms:
        return IntPolynomial()
    out = [0] * (max(terms) + 1)
    for e, c in terms.items():
        out[e] += c
    return IntPolynomial(tuple(out))


def from_terms(terms: Iterable[tuple[int, int]]) -> IntPolynomial:
    """Build a polynomial from (exponent, coefficient) pairs, collecting repeats."""
    acc: dict[int, int] = {}
    for e, c in terms:
        acc[e] = acc.get(e, 0) + c
    if not acc:
        return IntPolynomial()
    out = [0] * (max(acc) + 1)
    for e, c in acc.items():
        out[e] = c
    return IntPolynomial(tuple(out))
