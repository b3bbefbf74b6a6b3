"""Finite sets with exact subdistribution kernels.

``kernel[x][y]`` is the probability of moving from ``x`` to ``y``; each row
sums to at most 1.  All arithmetic is over ``Fraction``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from ..core import ComprehensionWitness, Effectus, QuotientWitness
from ..errors import NotBelow, ObjectMismatch, TooLarge, TypeMismatch
from .pfn import PfnMorphism, PfnObject

DENOMINATOR = 64
ZERO, ONE = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class ProbObject:
    size: int

    def __repr__(self):
        return f"Set({self.size})"


@dataclass(frozen=True)
class ProbMorphism:
    dom: ProbObject
    cod: ProbObject
    kernel: tuple

    def __post_init__(self):
        if len(self.kernel) != self.dom.size or any(len(r) != self.cod.size for r in self.kernel):
            raise TypeMismatch(f"kernel shape does not match {self.dom} -> {self.cod}")

    def row_sum(self, x: int) -> Fraction:
        return sum(self.kernel[x], ZERO)

    def is_subunital(self) -> bool:
        return all(v >= 0 for r in self.kernel for v in r) and all(
            self.row_sum(x) <= 1 for x in range(self.dom.size))

    def to_json(self) -> dict:
        return {"dom": self.dom.size, "cod": self.cod.size,
                "kernel": [[_fmt(v) for v in r] for r in self.kernel]}

    def __repr__(self):
        rows = ";".join(",".join(_fmt(v) for v in r) for r in self.kernel)
        return f"Kl({self.dom.size}->{self.cod.size}:[{rows}])"


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def morphism(dom: int, cod: int, rows: Sequence[Sequence]) -> ProbMorphism:
    f = ProbMorphism(ProbObject(dom), ProbObject(cod),
                     tuple(tuple(Fraction(v) for v in r) for r in rows))
    if not f.is_subunital():
        raise TypeMismatch(f"rows must be non-negative with sum <= 1: {f}")
    return f


def from_json(doc: dict) -> ProbMorphism:
    return morphism(doc["dom"], doc["cod"], doc["kernel"])


def predicate(values: Sequence) -> ProbMorphism:
    return morphism(len(values), 1, [[v] for v in values])


def state(values: Sequence) -> ProbMorphism:
    return morphism(1, len(values), [list(values)])


def values_of(p: ProbMorphism) -> tuple:
    """Predicate values ``p(x)`` or the weights of a substate."""
    if p.cod.size == 1:
        return tuple(r[0] for r in p.kernel)
    return p.kernel[0]


def from_pfn(f: PfnMorphism) -> ProbMorphism:
    rows = [[ONE if v == y else ZERO for y in range(f.cod.size)] for v in f.table]
    return ProbMorphism(ProbObject(f.dom.size), ProbObject(f.cod.size),
                        tuple(tuple(r) for r in rows))


def to_pfn(f: ProbMorphism) -> PfnMorphism | None:
    """The partial function with the same graph, or None when some entry is
    outside {0, 1}."""
    table = []
    for r in f.kernel:
        if any(v not in (0, 1) for v in r):
            return None
        ones = [y for y, v in enumerate(r) if v == 1]
        table.append(ones[0] if ones else None)
    return PfnMorphism(PfnObject(f.dom.size), PfnObject(f.cod.size), tuple(table))


def compose_double_sum(g: ProbMorphism, f: ProbMorphism) -> ProbMorphism:
    """Oracle for composition: sums over the middle point in the outer loop."""
    acc = [[ZERO] * g.cod.size for _ in range(f.dom.size)]
    for y in range(f.cod.size):
        for x in range(f.dom.size):
            for z in range(g.cod.size):
                acc[x][z] += g.kernel[y][z] * f.kernel[x][y]
    return ProbMorphism(f.dom, g.cod, tuple(tuple(r) for r in acc))


class Prob(Effectus):
    name = "prob"
    exact = True

    def __init__(self, denominator: int = DENOMINATOR, sizes: Sequence[int] = (1, 2, 3),
                 grid: int = 2):
        self.denominator = denominator
        self.sizes = tuple(sizes)
        self.grid = grid

    @property
    def unit(self):
        return ProbObject(1)

    @property
    def zero_object(self):
        return ProbObject(0)

    def obj(self, n: int) -> ProbObject:
        return ProbObject(n)

    def coproduct(self, *objs):
        return ProbObject(sum(o.size for o in objs))

    def _make(self, A, B, rows):
        return ProbMorphism(A, B, tuple(tuple(r) for r in rows))

    def identity(self, A):
        return self._make(A, A, [[ONE if x == y else ZERO for y in range(A.size)]
                                 for x in range(A.size)])

    def zero(self, A, B):
        return self._make(A, B, [[ZERO] * B.size for _ in range(A.size)])

    def compose(self, g, f):
        if f.cod != g.dom:
            raise ObjectMismatch(f"cannot compose {g} after {f}")
        cols = list(zip(*g.kernel)) if g.dom.size else [()] * g.cod.size
        rows = [[sum((a * b for a, b in zip(r, c)), ZERO) for c in cols] for r in f.kernel]
        return self._make(f.dom, g.cod, rows)

    def coprojection(self, objs, j):
        off = sum(o.size for o in objs[:j])
        n = self.coproduct(*objs).size
        return self._make(objs[j], self.coproduct(*objs),
                          [[ONE if y == off + x else ZERO for y in range(n)]
                           for x in range(objs[j].size)])

    def partial_projection(self, objs, j):
        off = sum(o.size for o in objs[:j])
        total = self.coproduct(*objs)
        m = objs[j].size
        return self._make(total, objs[j], [[ONE if x == off + y else ZERO for y in range(m)]
                                           for x in range(total.size)])

    def cotuple(self, fs):
        cod = fs[0].cod
        if any(f.cod != cod for f in fs):
            raise ObjectMismatch("cotuple needs a common codomain")
        return self._make(self.coproduct(*[f.dom for f in fs]), cod,
                          [r for f in fs for r in f.kernel])

    def partial_tuple_raw(self, fs):
        A = fs[0].dom
        return self._make(A, self.coproduct(*[f.cod for f in fs]),
                          [[v for f in fs for v in f.kernel[x]] for x in range(A.size)])

    def sum(self, f, g):
        if (f.dom, f.cod) != (g.dom, g.cod):
            raise TypeMismatch("sum of morphisms with different types")
        rows = [[a + b for a, b in zip(r, s)] for r, s in zip(f.kernel, g.kernel)]
        if any(sum(r, ZERO) > 1 for r in rows):
            return None
        return self._make(f.dom, f.cod, rows)

    def difference(self, g, f):
        if not self.leq(f, g):
            raise NotBelow(f"{f} is not below {g}")
        return self._make(f.dom, f.cod, [[b - a for a, b in zip(r, s)]
                                         for r, s in zip(f.kernel, g.kernel)])

    def truth(self, A):
        return self._make(A, self.unit, [[ONE] for _ in range(A.size)])

    def equal(self, f, g):
        return f == g

    def leq(self, f, g):
        return all(a <= b for r, s in zip(f.kernel, g.kernel) for a, b in zip(r, s))

    def scalar_value(self, s):
        return s.kernel[0][0]

    def scalar(self, v):
        return self._make(self.unit, self.unit, [[Fraction(v)]])

    def scale(self, r, f):
        r = Fraction(r)
        return self._make(f.dom, f.cod, [[r * v for v in row] for row in f.kernel])

    # -- logic -------------------------------------------------------------
    def image(self, f):
        return self._make(f.cod, self.unit,
                          [[ONE if any(f.kernel[x][y] > 0 for x in range(f.dom.size)) else ZERO]
                           for y in range(f.cod.size)])

    def _subset(self, A, keep):
        S = ProbObject(len(keep))
        inc = self._make(S, A, [[ONE if y == x else ZERO for y in range(A.size)] for x in keep])
        return S, inc

    def comprehension(self, A, p):
        keep = [x for x in range(A.size) if p.kernel[x][0] == 1]
        S, pi = self._subset(A, keep)

        def mediate(h):
            outside = [y for y in range(A.size) if y not in keep]
            if any(h.kernel[b][y] != 0 for b in range(h.dom.size) for y in outside):
                raise NotBelow("map does not land inside the comprehension")
            return self._make(h.dom, S, [[h.kernel[b][y] for y in keep]
                                         for b in range(h.dom.size)])
        return ComprehensionWitness(S, pi, mediate)

    def quotient(self, A, p):
        keep = [x for x in range(A.size) if p.kernel[x][0] < 1]
        Q, embed = self._subset(A, keep)
        xi = self._make(A, Q, [[1 - p.kernel[x][0] if x == y else ZERO for y in keep]
                               for x in range(A.size)])

        def mediate(f):
            if any(f.row_sum(x) > 1 - p.kernel[x][0] for x in range(A.size)):
                raise NotBelow("predicate is not below the kernel")
            return self._make(Q, f.cod, [[v / (1 - p.kernel[x][0]) for v in f.kernel[x]]
                                         for x in keep])
        return QuotientWitness(Q, xi, mediate, embed)

    def sharp_predicates(self, A, rng=None) -> Iterator:
        for bits in product((ZERO, ONE), repeat=A.size):
            yield self._make(A, self.unit, [[b] for b in bits])

    def validity_formula(self, omega, p):
        return sum((w * p.kernel[x][0] for x, w in enumerate(omega.kernel[0])), ZERO)

    def normalize_formula(self, omega):
        total = sum(omega.kernel[0], ZERO)
        return self._make(omega.dom, omega.cod, [[v / total for v in omega.kernel[0]]])

    # -- sampling ----------------------------------------------------------
    def _random_row(self, rng, n: int, total: bool):
        d = self.denominator
        if n == 0:
            return []
        if total:
            cuts = sorted(int(c) for c in rng.integers(0, d + 1, size=n - 1))
            parts = [b - a for a, b in zip([0] + cuts, cuts + [d])]
        else:
            budget = int(rng.integers(0, d + 1))
            cuts = sorted(int(c) for c in rng.integers(0, budget + 1, size=n))
            parts = [b - a for a, b in zip([0] + cuts[:-1], cuts)]
        # sparse rows make kernels, images and comprehensions non-trivial
        mask = rng.random(n) < 0.2
        if total:
            return [Fraction(v, d) for v in parts]
        return [ZERO if m else Fraction(v, d) for v, m in zip(parts, mask)]

    def random_morphism(self, rng, A, B, total=False):
        if total and B.size == 0 and A.size:
            raise ValueError("no total map into the empty set")
        return self._make(A, B, [self._random_row(rng, B.size, total) for _ in range(A.size)])

    def random_predicate_grid(self, rng, A, denominator: int = 4):
        return self._make(A, self.unit, [[Fraction(int(rng.integers(denominator + 1)),
                                                   denominator)] for _ in range(A.size)])

    def enumerate_homset(self, A, B):
        """Homsets are enumerable over the grid ``{k/grid}`` only for predicates
        on tiny sets; arbitrary homsets are sampled."""
        return None

    def enumerate_grid(self, A, B, grid: int | None = None, bound: int = 10**5) -> list:
        """All kernels with entries in ``{0, 1/n, …, 1}`` and rows summing to at most 1."""
        n = grid or self.grid
        rows = [r for r in product(range(n + 1), repeat=B.size) if sum(r) <= n]
        if len(rows) ** A.size > bound:
            raise TooLarge(f"grid homset {A} -> {B} exceeds {bound}")
        return [self._make(A, B, [[Fraction(v, n) for v in rows[i]] for i in choice])
                for choice in product(range(len(rows)), repeat=A.size)]

    def sample_objects(self):
        return [ProbObject(n) for n in self.sizes]
