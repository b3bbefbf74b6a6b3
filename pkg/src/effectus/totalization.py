"""Totalization through concrete presentations.

Matrices over a positive rig ``R`` (ℕ or ℚ≥0) form the Kleisli category of
the multiset monad ``M_R``: a biproduct category whose ground maps are the
all-ones columns.  Its subcausal part (row sums at most 1) recovers partial
functions over ℕ and subdistribution kernels over ℚ≥0.  The rational grid
``{0, 1/n, …, 1}`` totalizes to the monoid ``{k/n : k ∈ ℕ}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidAlgebra, TypeMismatch
from .report import EXAMPLE, EXHAUSTIVE, SAMPLED, Report


@dataclass(frozen=True)
class Rig:
    """A commutative positive rig embedded in ℚ, ordered algebraically."""

    name: str
    contains: Callable

    zero = Fraction(0)
    one = Fraction(1)

    def sample(self, rng, bound: int = 3):
        if self.name == "N":
            return Fraction(int(rng.integers(0, bound + 1)))
        return Fraction(int(rng.integers(0, 4 * bound + 1)), 4)


NAT = Rig("N", lambda v: v >= 0 and Fraction(v).denominator == 1)
QPOS = Rig("Q+", lambda v: v >= 0)


def get_rig(name: str) -> Rig:
    return {"N": NAT, "nat": NAT, "Q+": QPOS, "qpos": QPOS}[name]


@dataclass(frozen=True)
class RigMorphism:
    """Matrix ``X × Y`` over ``R``: ``rows[x][y]`` is the multiplicity of ``y``."""

    rig: str
    dom: int
    cod: int
    rows: tuple

    def row_sum(self, x):
        return sum(self.rows[x], Fraction(0))

    def is_causal(self) -> bool:
        return all(self.row_sum(x) == 1 for x in range(self.dom))

    def is_subcausal(self) -> bool:
        return all(self.row_sum(x) <= 1 for x in range(self.dom))


def matrix(R: Rig, dom: int, cod: int, rows) -> RigMorphism:
    rows = tuple(tuple(Fraction(v) for v in r) for r in rows)
    if len(rows) != dom or any(len(r) != cod for r in rows):
        raise TypeMismatch(f"matrix shape does not match {dom} -> {cod}")
    if not all(R.contains(v) for r in rows for v in r):
        raise TypeMismatch(f"entries outside {R.name}")
    return RigMorphism(R.name, dom, cod, rows)


def compose(g: RigMorphism, f: RigMorphism) -> RigMorphism:
    if f.cod != g.dom:
        raise TypeMismatch("cannot compose matrices of mismatched sizes")
    rows = [[sum((f.rows[x][y] * g.rows[y][z] for y in range(f.cod)), Fraction(0))
             for z in range(g.cod)] for x in range(f.dom)]
    return RigMorphism(f.rig, f.dom, g.cod, tuple(map(tuple, rows)))


def plus(f: RigMorphism, g: RigMorphism) -> RigMorphism:
    """Biproduct enrichment ``f ∔ g``: entrywise sum."""
    if (f.dom, f.cod) != (g.dom, g.cod):
        raise TypeMismatch("∔ needs equal types")
    return RigMorphism(f.rig, f.dom, f.cod,
                       tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(f.rows, g.rows)))


def identity(R: Rig, n: int) -> RigMorphism:
    return matrix(R, n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def zero(R: Rig, n: int, m: int) -> RigMorphism:
    return matrix(R, n, m, [[0] * m for _ in range(n)])


def ground(R: Rig, n: int) -> RigMorphism:
    """``⊥_X : X -> 1``, discarding with multiplicity one."""
    return matrix(R, n, 1, [[1] for _ in range(n)])


def cotuple(fs: Sequence[RigMorphism]) -> RigMorphism:
    return RigMorphism(fs[0].rig, sum(f.dom for f in fs), fs[0].cod,
                       tuple(r for f in fs for r in f.rows))


def injection(R: Rig, sizes: Sequence[int], j: int) -> RigMorphism:
    off, n = sum(sizes[:j]), sum(sizes)
    return matrix(R, sizes[j], n, [[1 if y == off + x else 0 for y in range(n)]
                                   for x in range(sizes[j])])


def projection(R: Rig, sizes: Sequence[int], j: int) -> RigMorphism:
    off, n = sum(sizes[:j]), sum(sizes)
    return matrix(R, n, sizes[j], [[1 if x == off + y else 0 for y in range(sizes[j])]
                                   for x in range(n)])


def enumerate_matrices(R: Rig, n: int, m: int, bound: int = 3):
    """Every ℕ-matrix with entries ``≤ bound`` (only meaningful for ``R = ℕ``)."""
    vals = [Fraction(v) for v in range(bound + 1)]
    for flat in product(vals, repeat=n * m):
        yield RigMorphism(R.name, n, m, tuple(tuple(flat[i * m:(i + 1) * m]) for i in range(n)))


def random_matrix(R: Rig, rng, n: int, m: int, bound: int = 3) -> RigMorphism:
    return matrix(R, n, m, [[R.sample(rng, bound) for _ in range(m)] for _ in range(n)])


def gbc_law_suite(R: Rig, max_size: int = 3, bound: int = 3, samples: int = 200,
                  seed: int = 0) -> Report:
    """Ground-map laws G1–G4 and the biproduct equations.  Over ℕ the small
    homsets are enumerated; over ℚ≥0 matrices are sampled."""
    rng = np.random.default_rng(seed)
    exhaustive = R.name == "N"
    regime = EXHAUSTIVE if exhaustive else SAMPLED
    report = Report(f"totalization/{R.name}")

    def homset(n, m):
        if exhaustive:
            return list(enumerate_matrices(R, n, m, bound))
        return [random_matrix(R, rng, n, m, bound) for _ in range(samples)]

    law = report.law("G1", "⊥_I = id_I", EXAMPLE)
    law.check(ground(R, 1) == identity(R, 1))

    law = report.law("G2", "⊥_{A⊕B} = [⊥_A, ⊥_B]", EXHAUSTIVE)
    for a, b in product(range(max_size + 1), repeat=2):
        law.check(ground(R, a + b) == cotuple([ground(R, a), ground(R, b)]), (a, b))

    law = report.law("G3", "⊥ ∘ f = 0 implies f = 0", regime)
    # ⊥ ∘ f is computed row by row, so over ℕ every n×m matrix is covered by
    # enumerating the rows (1×m matrices) with entries ≤ bound
    shapes = ([(1, m) for m in range(1, max_size + 1)] if exhaustive
              else list(product(range(1, max_size + 1), repeat=2)))
    for n, m in shapes:
        for f in homset(n, m):
            if compose(ground(R, m), f) == zero(R, n, 1):
                law.check(f == zero(R, n, m), f)
            else:
                law.check(True)

    law = report.law("G4", "p ∔ q = p ∔ r = ⊥ implies q = r", regime)
    for n in range(1, max_size + 1):
        preds = homset(n, 1)
        if not exhaustive:
            # complements of the samples make the hypothesis hold non-vacuously
            preds = list(preds) + [_complement(R, p) for p in preds if _complement(R, p)]
            preds = [p for p in preds if p is not None]
        partners: dict = {}
        for p, q in product(preds, repeat=2):
            if plus(p, q) == ground(R, n):
                partners.setdefault(p, set()).add(q)
        for p, qs in partners.items():
            law.check(len(qs) == 1, (p, sorted(map(str, qs))))
        law.check(bool(partners) or n == 0, n)

    law = report.law("biproduct equations", "π_j ∘ κ_k = δ_jk and Σ κ_j π_j = id",
                     EXHAUSTIVE)
    for sizes in product(range(max_size + 1), repeat=2):
        n = sum(sizes)
        for j, k in product(range(2), repeat=2):
            target = identity(R, sizes[j]) if j == k else zero(R, sizes[k], sizes[j])
            law.check(compose(projection(R, sizes, j), injection(R, sizes, k)) == target,
                      (sizes, j, k))
        summed = plus(*[compose(injection(R, sizes, j), projection(R, sizes, j))
                        for j in range(2)])
        law.check(summed == identity(R, n), sizes)

    law = report.law("composition distributes over ∔", "biproduct enrichment", SAMPLED)
    for _ in range(samples):
        n, m, k = (int(v) for v in rng.integers(1, max_size + 1, size=3))
        f, g = random_matrix(R, rng, n, m, bound), random_matrix(R, rng, n, m, bound)
        h = random_matrix(R, rng, m, k, bound)
        u = random_matrix(R, rng, k, n, bound)
        law.check(compose(h, plus(f, g)) == plus(compose(h, f), compose(h, g))
                  and compose(plus(f, g), u) == plus(compose(f, u), compose(g, u)), (f, g, h))
    return report


def _complement(R, p):
    rows = [[1 - r[0]] for r in p.rows]
    if any(v[0] < 0 for v in rows) or not all(R.contains(v[0]) for v in rows):
        return None
    return matrix(R, p.dom, 1, rows)


# -- finite rigs from tables ---------------------------------------------------

@dataclass(frozen=True)
class FiniteRig:
    elements: tuple
    add: dict
    mul: dict
    zero: str
    one: str


def load_rig(doc: dict) -> FiniteRig:
    """Rig from addition and multiplication tables.  Tables that break the rig
    laws or positivity (``a + b = 0`` only for ``a = b = 0``, which G3 needs)
    are rejected."""
    els = tuple(doc["elements"])
    add = {(a, b): doc["add"][i][j] for i, a in enumerate(els) for j, b in enumerate(els)}
    mul = {(a, b): doc["mul"][i][j] for i, a in enumerate(els) for j, b in enumerate(els)}
    z, o = doc.get("zero", els[0]), doc.get("one", els[1] if len(els) > 1 else els[0])
    report = Report("finite rig")
    triples = list(product(els, repeat=3))
    report.law("closed", "tables stay inside the carrier", EXHAUSTIVE).check(
        all(v in els for v in (*add.values(), *mul.values())))
    if report.passed:
        checks = {
            "additive monoid": lambda a, b, c: add[a, add[b, c]] == add[add[a, b], c]
            and add[a, b] == add[b, a] and add[a, z] == a,
            "multiplicative monoid": lambda a, b, c: mul[a, mul[b, c]] == mul[mul[a, b], c]
            and mul[a, o] == a == mul[o, a] and mul[a, b] == mul[b, a],
            "distributive": lambda a, b, c: mul[a, add[b, c]] == add[mul[a, b], mul[a, c]],
            "annihilation": lambda a, b, c: mul[a, z] == z,
            "positive": lambda a, b, c: add[a, b] != z or (a == z and b == z),
        }
        for name, rule in checks.items():
            law = report.law(name, f"{name} law of a positive rig", EXHAUSTIVE)
            for t in triples:
                law.check(rule(*t), t)
    if not report.passed:
        raise InvalidAlgebra("table is not a positive commutative rig", report)
    return FiniteRig(els, add, mul, z, o)


# -- recovering the effectuses ---------------------------------------------------

def to_partial_function(f: RigMorphism):
    """The partial function of a subcausal ℕ-matrix (rows are zero or a unit
    vector), or None when the matrix is not subcausal."""
    from .instances.pfn import morphism
    if not f.is_subcausal():
        return None
    table = []
    for r in f.rows:
        ones = [y for y, v in enumerate(r) if v == 1]
        table.append(ones[0] if ones else None)
    return morphism(f.dom, f.cod, table)


def from_partial_function(f) -> RigMorphism:
    return matrix(NAT, f.dom.size, f.cod.size,
                  [[1 if v == y else 0 for y in range(f.cod.size)] for v in f.table])


def from_kernel(f) -> RigMorphism:
    return matrix(QPOS, f.dom.size, f.cod.size, f.kernel)


def caus_recover(R: Rig, max_size: int = 3, samples: int = 200, seed: int = 0) -> Report:
    """``Caus≤(Kl(M_ℕ)) ≅ Pfn`` on every composable pair of small sets, and
    ``Caus≤(Kl(M_ℚ≥0))`` = subdistribution kernels on seeded morphisms."""
    report = Report(f"caus-recover/{R.name}")
    if R.name == "N":
        from .instances.pfn import Pfn
        E = Pfn(max_size)
        homs = {}
        law = report.law("bijection", "subcausal ℕ-matrices are partial functions", EXHAUSTIVE)
        for n, m in product(range(max_size + 1), repeat=2):
            sub = [f for f in enumerate_matrices(R, n, m, 1) if f.is_subcausal()]
            pf = [to_partial_function(f) for f in sub]
            homset = E.enumerate_homset(E.obj(n), E.obj(m))
            law.check(len(set(pf)) == len(sub) == len(homset) and set(pf) == set(homset), (n, m))
            law.check(all(from_partial_function(g) == f for f, g in zip(sub, pf)), (n, m))
            homs[n, m] = list(zip(sub, pf))
        law = report.law("excluded rows", "rows summing past 1 are not subcausal", EXHAUSTIVE)
        for n, m in product(range(1, max_size + 1), repeat=2):
            for f in enumerate_matrices(R, n, m, 2):
                law.check((to_partial_function(f) is None) == (not f.is_subcausal()), f)
        law = report.law("functorial", "composition agrees on all composable pairs",
                         EXHAUSTIVE)
        for n, m, k in product(range(max_size + 1), repeat=3):
            for f, pf in homs[n, m]:
                for g, pg in homs[m, k]:
                    law.check(to_partial_function(compose(g, f)) == E.compose(pg, pf), (f, g))
        for n in range(max_size + 1):
            law.check(to_partial_function(identity(R, n)) == E.identity(E.obj(n)), n)
        return report
    from .instances.prob import Prob, compose_double_sum
    E = Prob()
    rng = np.random.default_rng(seed)
    law = report.law("kernels embed", "subcausal ℚ≥0-matrices are subdistribution kernels",
                     SAMPLED)
    comp = report.law("composition preserved", "matrix product equals kernel composition",
                      SAMPLED)
    for _ in range(samples):
        n, m, k = (int(v) for v in rng.integers(1, max_size + 1, size=3))
        f = E.random_morphism(rng, E.obj(n), E.obj(m))
        g = E.random_morphism(rng, E.obj(m), E.obj(k))
        law.check(from_kernel(f).is_subcausal() and from_kernel(f).rows == f.kernel, f)
        comp.check(compose(from_kernel(g), from_kernel(f)).rows
                   == E.compose(g, f).kernel == compose_double_sum(g, f).kernel, (f, g))
        r = random_matrix(R, rng, n, m)
        law.check(r.is_subcausal() == all(sum(row) <= 1 for row in r.rows), r)
    return report


def summability_reflection(grid: int = 2) -> Report:
    """``η(f) ∔ η(g)`` is subcausal exactly when ``f ⊥ g``, on every pair of
    grid kernels ``2 -> 2``."""
    from .instances.prob import Prob
    E = Prob()
    report = Report("summability reflection")
    law = report.law("reflects summability", "η(f) ∔ η(g) subcausal iff f ⊥ g", EXHAUSTIVE)
    homs = E.enumerate_grid(E.obj(2), E.obj(2), grid)
    for f, g in product(homs, repeat=2):
        law.check(plus(from_kernel(f), from_kernel(g)).is_subcausal() == (E.sum(f, g) is not None),
                  (f, g))
    return report


# -- the rational grid ----------------------------------------------------------------

@dataclass(frozen=True)
class IntervalTotalization:
    """``T({0, 1/n, …, 1}) = {k/n : k ∈ ℕ}`` with ``η(x) = x``."""

    n: int

    @property
    def grid(self) -> list:
        return [Fraction(k, self.n) for k in range(self.n + 1)]

    def contains(self, t) -> bool:
        t = Fraction(t)
        return t >= 0 and (t * self.n).denominator == 1

    def eta(self, x):
        x = Fraction(x)
        if x not in self.grid:
            raise TypeMismatch(f"{x} is not on the grid")
        return x

    def pcm_sum(self, xs):
        """Partial sum in the grid PCM: None when it exceeds 1."""
        s = sum(map(Fraction, xs), Fraction(0))
        return s if s <= 1 else None

    def add(self, *ts):
        return sum(map(Fraction, ts), Fraction(0))

    def as_natural(self, t) -> int:
        """For ``n = 1`` the totalization is ℕ: ``k ↦ k``."""
        return int(Fraction(t) * self.n)


def totalize_interval(n: int) -> IntervalTotalization:
    return IntervalTotalization(n)


def law_suite_interval(n: int, depth: int = 3) -> Report:
    T = totalize_interval(n)
    report = Report(f"interval/{n}")
    grid = T.grid
    law = report.law("η injective", "the embedding is injective", EXHAUSTIVE)
    law.check(len({T.eta(x) for x in grid}) == len(grid))
    law = report.law("η preserves sums", "η(a ⊕ b) = η(a) + η(b) when a ⊥ b", EXHAUSTIVE)
    for a, b in product(grid, repeat=2):
        s = T.pcm_sum([a, b])
        if s is not None:
            law.check(T.eta(s) == T.add(T.eta(a), T.eta(b)), (a, b))
    law = report.law("Kleene equality", "formal sums agree wherever the PCM sum is defined",
                     EXHAUSTIVE)
    for k in range(1, depth + 1):
        for xs in product(grid, repeat=k):
            s = T.pcm_sum(xs)
            t = T.add(*map(T.eta, xs))
            law.check(T.contains(t) and (s is None) == (t > 1) and (s is None or s == t), xs)
    law = report.law("generated monoid", "T is generated by the grid", EXHAUSTIVE)
    for k in range(0, 3 * n + 1):
        law.check(T.contains(Fraction(k, n)), k)
    law.check(not T.contains(Fraction(1, 2 * n)), "1/2n")
    return report
