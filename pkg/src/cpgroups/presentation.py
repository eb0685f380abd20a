"""Defining words, cyclic presentations, and labelled oriented graphs.

Word syntax is a whitespace separated list of ``x<offset>`` atoms with an
optional signed exponent, e.g. ``"x0 x2 x1^-1"``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DanglingReference, EmptyWord, WordSyntaxError
from .exactmat import AbelianStructure, IntMatrix, abelian_structure_of, circulant
from .intpoly import IntPolynomial

WORD_GRAMMAR = "word := atom (WS atom)*   atom := 'x' UINT ('^' SINT)?"

_ATOM = re.compile(r"x(\d+)(?:\^([+-]?\d+))?")


@dataclass(frozen=True)
class DefiningWord:
    """Letters ``(offset, exponent)`` read left to right; no free reduction is applied."""
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        letters = tuple((int(o), int(e)) for o, e in self.letters)
        for o, e in letters:
            if o < 0:
                raise ValueError(f"negative offset {o}")
            if e == 0:
                raise ValueError("exponents must be nonzero")
        object.__setattr__(self, "letters", letters)

    def __str__(self) -> str:
        return " ".join(f"x{o}" if e == 1 else f"x{o}^{e}" for o, e in self.letters)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def is_positive(self) -> bool:
        return all(e > 0 for _, e in self.letters)

    def total_exponent(self) -> int:
        return sum(e for _, e in self.letters)


def parse_word(text: str) -> DefiningWord:
    letters = []
    i, n = 0, len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i == n:
            break
        m = _ATOM.match(text, i)
        if not m:
            raise WordSyntaxError("expected atom 'x<n>' or 'x<n>^<k>'", text, i)
        end = m.end()
        if end < n and not text[end].isspace():
            raise WordSyntaxError("atoms must be separated by whitespace", text, end)
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if exp == 0:
            raise WordSyntaxError("zero exponent", text, m.start(2))
        letters.append((int(m.group(1)), exp))
        i = end
    if not letters:
        raise EmptyWord("defining word is empty")
    return DefiningWord(tuple(letters))


@dataclass(frozen=True)
class CyclicPresentation:
    """P_n(w): relator i is w with every subscript shifted by i mod n."""
    n: int
    word: DefiningWord

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def reduced_letters(self) -> tuple[tuple[int, int], ...]:
        return tuple((o % self.n, e) for o, e in self.word.letters)

    def relators(self) -> list[list[tuple[int, int]]]:
        return [[((o + i) % self.n, e) for o, e in self.word.letters] for i in range(self.n)]

    @property
    def representer(self) -> IntPolynomial:
        return representer_polynomial(self.word, self.n)


def exponent_sums(w: DefiningWord, n: int) -> list[int]:
    if n < 1:
        raise ValueError("n must be >= 1")
    a = [0] * n
    for o, e in w.letters:
        a[o % n] += e
    return a


def representer_polynomial(w: DefiningWord, n: int) -> IntPolynomial:
    return IntPolynomial(tuple(exponent_sums(w, n)))


def relation_matrix(p: CyclicPresentation) -> IntMatrix:
    return circulant(exponent_sums(p.word, p.n))


# -- generic presentations and LOGs ------------------------------------------

Relator = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class GenericPresentation:
    generators: tuple[str, ...]
    relators: tuple[Relator, ...]

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relators:
            for g, _ in r:
                if g not in gens:
                    raise DanglingReference(f"relator mentions unknown generator {g!r}")

    def relation_matrix(self) -> IntMatrix:
        """Entry (i, j) is the exponent sum of generator i in relator j."""
        index = {g: i for i, g in enumerate(self.generators)}
        rows = [[0] * len(self.relators) for _ in self.generators]
        for j, r in enumerate(self.relators):
            for g, e in r:
                rows[index[g]][j] += e
        return IntMatrix(len(self.generators), len(self.relators),
                         tuple(x for r in rows for x in r))

    def abelianisation(self) -> AbelianStructure:
        if not self.relators:
            return AbelianStructure((), len(self.generators))
        return abelian_structure_of(self.relation_matrix())

    def __str__(self) -> str:
        def word(r: Relator) -> str:
            return " ".join(g if e == 1 else f"{g}^{e}" for g, e in r) or "1"
        return f"< {', '.join(self.generators)} | {', '.join(word(r) for r in self.relators)} >"


@dataclass(frozen=True)
class Edge:
    init: str
    term: str
    label: str


@dataclass(frozen=True)
class LOG:
    """Labelled oriented graph; loops and multiple edges are allowed."""
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex")
        for e in self.edges:
            for v in (e.init, e.term, e.label):
                if v not in vs:
                    raise DanglingReference(f"edge {e} names unknown vertex {v!r}")

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"init": e.init, "term": e.term, "label": e.label} for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> LOG:
        if isinstance(data, str):
            data = json.loads(data)
        edges = tuple(Edge(str(e["init"]), str(e["term"]), str(e["label"])) for e in data.get("edges", ()))
        return cls(tuple(str(v) for v in data["vertices"]), edges)

    def to_dot(self, name: str = "LOG") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e in self.edges:
            lines.append(f'  "{e.init}" -> "{e.term}" [label="{e.label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def log_to_presentation(g: LOG) -> GenericPresentation:
    """One generator per vertex and the relator term^-1 label^-1 init label per edge."""
    relators = tuple(((e.term, -1), (e.label, -1), (e.init, 1), (e.label, 1)) for e in g.edges)
    return GenericPresentation(tuple(g.vertices), relators)


def log_components(g: LOG) -> int:
    """Connected components of the underlying graph; labels do not join vertices."""
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in g.edges:
        a, b = find(e.init), find(e.term)
        if a != b:
            parent[a] = b
    return len({find(v) for v in g.vertices})


def word_from_offsets(letters: Iterable[tuple[int, int]]) -> DefiningWord:
    return DefiningWord(tuple(letters))


def gnmk_word(m: int, k: int) -> DefiningWord:
    """x_0 x_m x_k^-1."""
    return DefiningWord(((0, 1), (m, 1), (k, -1)))


def presentation_from_relators(generators: Sequence[str], relators: Iterable[Relator]) -> GenericPresentation:
    return GenericPresentation(tuple(generators), tuple(tuple(r) for r in relators))
