"""Finite sets and partial functions.

A morphism ``A -> B`` is a table of length ``A.size`` whose entries are
indices into ``B`` or ``None`` (undefined).  Predicates ``A -> I`` are
subsets, scalars are {0, 1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from ..core import ComprehensionWitness, Effectus, QuotientWitness
from ..errors import NotBelow, ObjectMismatch, TooLarge, TypeMismatch

HOMSET_BOUND = 10**6


@dataclass(frozen=True)
class PfnObject:
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("size must be non-negative")

    def __repr__(self):
        return f"Set({self.size})"


@dataclass(frozen=True)
class PfnMorphism:
    dom: PfnObject
    cod: PfnObject
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.dom.size:
            raise TypeMismatch(f"table length {len(self.table)} != domain size {self.dom.size}")
        for v in self.table:
            if v is not None and not 0 <= v < self.cod.size:
                raise TypeMismatch(f"entry {v} outside codomain {self.cod}")

    def defined(self) -> frozenset:
        return frozenset(x for x, v in enumerate(self.table) if v is not None)

    def to_json(self) -> dict:
        return {"dom": self.dom.size, "cod": self.cod.size, "table": list(self.table)}

    def __repr__(self):
        cells = ",".join("-" if v is None else str(v) for v in self.table)
        return f"Pfn({self.dom.size}->{self.cod.size}:[{cells}])"


def morphism(dom: int, cod: int, table: Sequence) -> PfnMorphism:
    return PfnMorphism(PfnObject(dom), PfnObject(cod), tuple(table))


def from_json(doc: dict) -> PfnMorphism:
    return morphism(doc["dom"], doc["cod"], doc["table"])


def predicate(n: int, subset) -> PfnMorphism:
    """The predicate on ``Set(n)`` that holds exactly on ``subset``."""
    s = set(subset)
    return morphism(n, 1, [0 if x in s else None for x in range(n)])


def subset_of(p: PfnMorphism) -> frozenset:
    return p.defined()


class Pfn(Effectus):
    name = "pfn"
    exact = True

    def __init__(self, max_size: int = 3, homset_bound: int = HOMSET_BOUND):
        self.max_size = max_size
        self.homset_bound = homset_bound

    @property
    def unit(self):
        return PfnObject(1)

    @property
    def zero_object(self):
        return PfnObject(0)

    def obj(self, n: int) -> PfnObject:
        return PfnObject(n)

    def coproduct(self, *objs):
        return PfnObject(sum(o.size for o in objs))

    def identity(self, A):
        return PfnMorphism(A, A, tuple(range(A.size)))

    def zero(self, A, B):
        return PfnMorphism(A, B, (None,) * A.size)

    def compose(self, g, f):
        if f.cod != g.dom:
            raise ObjectMismatch(f"cannot compose {g} after {f}")
        return PfnMorphism(f.dom, g.cod,
                           tuple(None if v is None else g.table[v] for v in f.table))

    def coprojection(self, objs, j):
        off = sum(o.size for o in objs[:j])
        return PfnMorphism(objs[j], self.coproduct(*objs),
                           tuple(off + x for x in range(objs[j].size)))

    def partial_projection(self, objs, j):
        off = sum(o.size for o in objs[:j])
        n = objs[j].size
        table = [None] * sum(o.size for o in objs)
        for x in range(n):
            table[off + x] = x
        return PfnMorphism(self.coproduct(*objs), objs[j], tuple(table))

    def cotuple(self, fs):
        cod = fs[0].cod
        if any(f.cod != cod for f in fs):
            raise ObjectMismatch("cotuple needs a common codomain")
        table = tuple(v for f in fs for v in f.table)
        return PfnMorphism(self.coproduct(*[f.dom for f in fs]), cod, table)

    def partial_tuple_raw(self, fs):
        A = fs[0].dom
        cod = self.coproduct(*[f.cod for f in fs])
        offs = np.cumsum([0] + [f.cod.size for f in fs])
        table = []
        for x in range(A.size):
            hit = [int(offs[i]) + f.table[x] for i, f in enumerate(fs) if f.table[x] is not None]
            table.append(hit[0] if hit else None)
        return PfnMorphism(A, cod, tuple(table))

    def sum(self, f, g):
        if (f.dom, f.cod) != (g.dom, g.cod):
            raise TypeMismatch("sum of morphisms with different types")
        out = []
        for a, b in zip(f.table, g.table):
            if a is not None and b is not None:
                return None
            out.append(a if b is None else b)
        return PfnMorphism(f.dom, f.cod, tuple(out))

    def difference(self, g, f):
        if not self.leq(f, g):
            raise NotBelow(f"{f} is not below {g}")
        return PfnMorphism(f.dom, f.cod, tuple(None if a is not None else b
                                               for a, b in zip(f.table, g.table)))

    def truth(self, A):
        return PfnMorphism(A, self.unit, (0,) * A.size)

    def equal(self, f, g):
        return f == g

    def leq(self, f, g):
        return all(a is None or a == b for a, b in zip(f.table, g.table))

    def scalar_value(self, s):
        return Fraction(0 if s.table[0] is None else 1)

    def scalar(self, v):
        if v not in (0, 1):
            raise ValueError("deterministic scalars are 0 and 1")
        return PfnMorphism(self.unit, self.unit, (0,) if v == 1 else (None,))

    def scale(self, r, f):
        if r == 1:
            return f
        if r == 0:
            return self.zero(f.dom, f.cod)
        raise ValueError("deterministic scalars are 0 and 1")

    # -- logic -------------------------------------------------------------
    def image(self, f):
        vals = {v for v in f.table if v is not None}
        return predicate(f.cod.size, vals)

    def _inclusion(self, A, subset):
        sub = sorted(subset)
        return PfnMorphism(PfnObject(len(sub)), A, tuple(sub)), sub

    def comprehension(self, A, p):
        pi, sub = self._inclusion(A, subset_of(p))
        index = {x: i for i, x in enumerate(sub)}

        def mediate(h):
            if any(v is not None and v not in index for v in h.table):
                raise NotBelow("map does not land inside the comprehension")
            return PfnMorphism(h.dom, pi.dom,
                               tuple(None if v is None else index[v] for v in h.table))
        return ComprehensionWitness(pi.dom, pi, mediate)

    def quotient(self, A, p):
        embed, keep = self._inclusion(A, set(range(A.size)) - subset_of(p))
        index = {x: i for i, x in enumerate(keep)}
        Q = embed.dom
        xi = PfnMorphism(A, Q, tuple(index.get(x) for x in range(A.size)))

        def mediate(f):
            if any(f.table[x] is not None for x in subset_of(p)):
                raise NotBelow("predicate is not below the kernel")
            return PfnMorphism(Q, f.cod, tuple(f.table[x] for x in keep))
        return QuotientWitness(Q, xi, mediate, embed)

    def sharp_predicates(self, A, rng=None) -> Iterator:
        for bits in product((False, True), repeat=A.size):
            yield predicate(A.size, [x for x, b in enumerate(bits) if b])

    def validity_formula(self, omega, p):
        v = omega.table[0]
        return Fraction(int(v is not None and p.table[v] is not None))

    def normalize_formula(self, omega):
        return omega

    # -- sampling ----------------------------------------------------------
    def random_morphism(self, rng, A, B, total=False):
        choices = B.size + (0 if total and B.size else 1)
        table = []
        for _ in range(A.size):
            v = int(rng.integers(choices)) if choices else B.size
            table.append(None if v >= B.size else v)
        if total and B.size == 0 and A.size:
            raise ValueError("no total map into the empty set")
        return PfnMorphism(A, B, tuple(table))

    def enumerate_homset(self, A, B):
        """All partial functions ``A -> B`` in lexicographic order (undefined first)."""
        if (B.size + 1) ** A.size > self.homset_bound:
            raise TooLarge(f"homset {A} -> {B} exceeds {self.homset_bound}")
        values = (None,) + tuple(range(B.size))
        return [PfnMorphism(A, B, t) for t in product(values, repeat=A.size)]

    def sample_objects(self):
        return [PfnObject(n) for n in range(self.max_size + 1)]
