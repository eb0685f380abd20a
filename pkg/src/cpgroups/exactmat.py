"""Exact integer matrices: circulants and Smith normal form.

Only the invariant factors are computed; the unimodular transforms are
discarded except in :func:`smith_with_transforms`, which exists for checking
small cases.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyRow


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, tuple(int(x) for r in rows for x in r))

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.to_rows()]


@dataclass(frozen=True)
class SmithForm:
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def gamma(self) -> int:
        return math.prod(self.invariant_factors)


@dataclass(frozen=True)
class AbelianStructure:
    """A_0 + Z^betti with A_0 = Z_{t_1} + ... ; torsion entries are > 1 and form a divisibility chain."""
    torsion: tuple[int, ...]
    betti: int

    @property
    def gamma(self) -> int:
        return math.prod(self.torsion)

    def is_free(self) -> bool:
        return not self.torsion

    def is_trivial(self) -> bool:
        return not self.torsion and self.betti == 0

    def __str__(self) -> str:
        parts = [f"Z_{t}" for t in self.torsion]
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        return " + ".join(parts) if parts else "1"


def circulant(first_row: Sequence[int]) -> IntMatrix:
    """n x n matrix whose i-th row is ``first_row`` cyclically shifted right by i."""
    a = [int(x) for x in first_row]
    n = len(a)
    if n == 0:
        raise EmptyRow("circulant needs a nonempty first row")
    rows = [a[n - i:] + a[:n - i] for i in range(n)]
    return IntMatrix(n, n, tuple(x for r in rows for x in r))


def _diagonal(rows: list[list[int]]) -> list[int]:
    """Reduce to diagonal form by unimodular operations; return the nonzero diagonal.

    Pivot is the entry of least nonzero absolute value (first in row-major
    order on ties). ``rows`` is consumed.
    """
    diag = []
    while rows and rows[0]:
        best = 0
        bi = bj = -1
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                if x and (bi < 0 or abs(x) < best):
                    best, bi, bj = abs(x), i, j
                    if best == 1:
                        break
            if best == 1:
                break
        if bi < 0:
            break
        while True:
            if bi:
                rows[0], rows[bi] = rows[bi], rows[0]
            if bj:
                for r in rows:
                    r[0], r[bj] = r[bj], r[0]
            top = rows[0]
            p = top[0]
            # clear column 0 with row operations
            bi = bj = 0
            best = abs(p)
            for i in range(1, len(rows)):
                r = rows[i]
                x = r[0]
                if x:
                    q = x // p
                    if q:
                        r = [a - q * b for a, b in zip(r, top)]
                        rows[i] = r
                    if r[0] and abs(r[0]) < best:
                        best, bi = abs(r[0]), i
            if bi:
                continue
            # column 0 is clear apart from p; column operations then only touch row 0
            for j in range(1, len(top)):
                x = top[j]
                if x:
                    top[j] = x - (x // p) * p
                    if top[j] and abs(top[j]) < best:
                        best, bj = abs(top[j]), j
            if bj:
                continue
            break
        diag.append(abs(p))
        rows = [r[1:] for r in rows[1:]]
    return diag


def invariant_factors_from_diagonal(diag: Sequence[int]) -> tuple[int, ...]:
    """Turn any nonzero diagonal into a divisibility chain via (gcd, lcm) swaps."""
    d = [abs(x) for x in diag if x]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            a, b = d[i], d[j]
            if b % a:
                g = math.gcd(a, b)
                d[i], d[j] = g, a // g * b
    return tuple(d)


def smith_normal_form(m: IntMatrix) -> SmithForm:
    rows = m.to_rows()
    if not rows or not rows[0]:
        return SmithForm(())
    return SmithForm(invariant_factors_from_diagonal(_diagonal(rows)))


def abelian_structure_of(m: IntMatrix) -> AbelianStructure:
    """Abelianisation of the presentation whose relation matrix is ``m`` (generators index rows)."""
    snf = smith_normal_form(m)
    return AbelianStructure(tuple(s for s in snf.invariant_factors if s != 1), m.rows - snf.rank)


def determinant(m: IntMatrix) -> int:
    from .intpoly import bareiss_determinant
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    return bareiss_determinant(m.to_rows())


def smith_with_transforms(m: IntMatrix) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U*M*V = D diagonal, U and V unimodular.

    Straightforward and slow; for verifying small instances only. D is
    diagonal but its entries are not normalised into a divisibility chain.
    """
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] -= q * r[src]
        for r in v:
            r[dst] -= q * r[src]

    for k in range(min(nr, nc)):
        while True:
            cand = [(abs(a[i][j]), i, j) for i in range(k, nr) for j in range(k, nc) if a[i][j]]
            if not cand:
                return u, a, v
            _, i, j = min(cand)
            swap_rows(k, i)
            swap_cols(k, j)
            p = a[k][k]
            for i in range(k + 1, nr):
                add_row(i, k, a[i][k] // p)
            for j in range(k + 1, nc):
                add_col(j, k, a[k][j] // p)
            if all(a[i][k] == 0 for i in range(k + 1, nr)) and all(a[k][j] == 0 for j in range(k + 1, nc)):
                break
    return u, a, v
