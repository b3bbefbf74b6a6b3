"""Finite partial commutative monoids and effect algebras.

Carriers are ``range(size)``; the partial sum is a dense ``size x size``
integer table with ``UNDEF`` marking undefined sums, so every law check is a
table scan.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Any, Sequence

import numpy as np

from ..errors import InvalidAlgebra, NotBelow, NotLattice, NotMackey, TooLarge
from ..report import EXHAUSTIVE, Report

UNDEF = -1
DEFAULT_BOUND = 256


@dataclass(frozen=True, eq=False)
class Pcm:
    size: int
    zero: int
    table: np.ndarray
    labels: tuple | None = None

    def __post_init__(self):
        table = np.array(self.table, dtype=np.int64)
        if table.shape != (self.size, self.size):
            raise ValueError(f"sum table must be {self.size}x{self.size}, got {table.shape}")
        if np.any((table < UNDEF) | (table >= self.size)):
            raise ValueError("sum table entries must be element ids or undefined")
        if not 0 <= self.zero < self.size:
            raise ValueError("zero is not an element")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def summable(self, a: int, b: int) -> bool:
        return self.table[a, b] != UNDEF

    def sum(self, a: int, b: int) -> int | None:
        s = int(self.table[a, b])
        return None if s == UNDEF else s

    def label(self, a: int):
        return self.labels[a] if self.labels is not None else a

    def index(self, label) -> int:
        if self.labels is None:
            return int(label)
        return self.labels.index(label)


@dataclass(frozen=True, eq=False)
class EffectAlgebra(Pcm):
    top: int = 0

    def __post_init__(self):
        super().__post_init__()
        if not 0 <= self.top < self.size:
            raise ValueError("top is not an element")

    def orthosupplements(self, a: int) -> list[int]:
        return [int(b) for b in np.flatnonzero(self.table[a] == self.top)]

    @cached_property
    def ortho_table(self) -> np.ndarray:
        # first candidate wins; the law suite reports non-uniqueness
        out = np.full(self.size, UNDEF, dtype=np.int64)
        for a in range(self.size):
            cands = self.orthosupplements(a)
            if cands:
                out[a] = cands[0]
        return out

    def ortho(self, a: int) -> int:
        b = int(self.ortho_table[a])
        if b == UNDEF:
            raise InvalidAlgebra(f"element {a} has no orthosupplement")
        return b

    def to_json(self) -> dict:
        return {
            "carrier": self.size,
            "zero": self.zero,
            "top": self.top,
            "sum": [[None if v == UNDEF else int(v) for v in row] for row in self.table],
        }


def order_matrix(E: Pcm) -> np.ndarray:
    """``leq[a, b]`` iff ``a + c = b`` for some ``c``."""
    leq = np.zeros((E.size, E.size), dtype=bool)
    for a in range(E.size):
        row = E.table[a]
        leq[a, row[row != UNDEF]] = True
    return leq


def leq(E: Pcm, a: int, b: int) -> bool:
    return bool(np.any(E.table[a] == b))


def difference(E: Pcm, b: int, a: int) -> int:
    """The unique ``c`` with ``a + c = b``."""
    hits = np.flatnonzero(E.table[a] == b)
    if hits.size == 0:
        raise NotBelow(f"{E.label(a)} is not below {E.label(b)}")
    return int(hits[0])


def _check_bound(E: Pcm, bound: int):
    if E.size > bound:
        raise TooLarge(f"carrier of size {E.size} exceeds bound {bound}")


# -- constructors -----------------------------------------------------------

def grid(n: int) -> EffectAlgebra:
    """The chain ``{0, 1/n, ..., 1}`` with truncated-free addition."""
    idx = np.arange(n + 1)
    s = idx[:, None] + idx[None, :]
    table = np.where(s <= n, s, UNDEF)
    return EffectAlgebra(n + 1, 0, table, tuple(Fraction(k, n) for k in idx), top=n)


def powerset(k: int) -> EffectAlgebra:
    """Subsets of ``{0..k-1}`` as bitmasks, summed by disjoint union."""
    N = 1 << k
    a = np.arange(N)
    table = np.where((a[:, None] & a[None, :]) == 0, a[:, None] | a[None, :], UNDEF)
    labels = tuple(frozenset(i for i in range(k) if m >> i & 1) for m in range(N))
    return EffectAlgebra(N, 0, table, labels, top=N - 1)


def from_sum_rule(elements: Sequence, zero, top, rule) -> EffectAlgebra:
    """Build a table from ``rule(x, y) -> element or None`` over labelled elements."""
    elements = tuple(elements)
    pos = {e: i for i, e in enumerate(elements)}
    table = np.full((len(elements), len(elements)), UNDEF, dtype=np.int64)
    for (i, x), (j, y) in product(enumerate(elements), repeat=2):
        s = rule(x, y)
        if s is not None:
            table[i, j] = pos[s]
    return EffectAlgebra(len(elements), pos[zero], table, elements, top=pos[top])


def horizontal_sum(*atoms: str) -> EffectAlgebra:
    """Glue the four-element Boolean algebras ``{0, a, a', 1}`` at 0 and 1.

    With two atoms this is the orthomodular lattice MO2, a non-distributive
    lattice effect algebra in which every element is sharp.
    """
    elems = ["0", "1"]
    for a in atoms:
        elems += [a, a + "'"]

    def rule(x, y):
        if x == "0":
            return y
        if y == "0":
            return x
        if x != "1" and y != "1" and x.rstrip("'") == y.rstrip("'") and x != y:
            return "1"
        return None

    return from_sum_rule(elems, "0", "1", rule)


def load(doc: dict | str, bound: int = DEFAULT_BOUND) -> EffectAlgebra:
    """Parse the JSON table format and reject tables failing the law suite."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        n = int(doc["carrier"])
        table = [[UNDEF if v is None else int(v) for v in row] for row in doc["sum"]]
        E = EffectAlgebra(n, int(doc["zero"]), np.array(table, dtype=np.int64).reshape(n, n),
                          top=int(doc["top"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidAlgebra(f"malformed effect algebra document: {exc}") from exc
    report = law_suite_effect_algebra(E, bound)
    if not report.passed:
        bad = ", ".join(r.law for r in report.failed())
        raise InvalidAlgebra(f"table violates: {bad}", report)
    return E


# -- law suites -------------------------------------------------------------

def law_suite_pcm(E: Pcm, bound: int = DEFAULT_BOUND, report: Report | None = None) -> Report:
    _check_bound(E, bound)
    report = report or Report("pcm")
    T, N = E.table, E.size

    law = report.law("commutativity", "x+y defined iff y+x defined, and equal", EXHAUSTIVE)
    bad = np.argwhere(T != T.T)
    law.checked = N * N
    if bad.size:
        law.failures = len(bad)
        a, b = bad[0]
        law.witness = {"x": int(a), "y": int(b), "x+y": E.sum(a, b), "y+x": E.sum(b, a)}

    law = report.law("associativity", "(x+y)+z defined iff x+(y+z) defined, and equal",
                     EXHAUSTIVE)
    for x in range(N):
        for y in np.flatnonzero(T[x] != UNDEF):
            xy = T[x, y]
            lhs = T[xy]                       # (x+y)+z for all z
            yz = T[y]
            rhs = np.where(yz != UNDEF, T[x, np.where(yz == UNDEF, 0, yz)], UNDEF)
            bad = np.flatnonzero(lhs != rhs)
            law.checked += N
            if bad.size:
                z = int(bad[0])
                law.check(False, {"x": x, "y": int(y), "z": z,
                                  "(x+y)+z": _opt(lhs[z]), "x+(y+z)": _opt(rhs[z])})
                law.checked -= 1
                law.failures += bad.size - 1
    # also the case where x+y is undefined but x+(y+z) is defined
    for y in range(N):
        for z in np.flatnonzero(T[y] != UNDEF):
            yz = T[y, z]
            rhs = T[:, yz]
            xy = T[:, y]
            lhs = np.where(xy != UNDEF, T[np.where(xy == UNDEF, 0, xy), z], UNDEF)
            bad = np.flatnonzero(lhs != rhs)
            law.checked += N
            if bad.size:
                x = int(bad[0])
                law.check(False, {"x": x, "y": y, "z": int(z),
                                  "(x+y)+z": _opt(lhs[x]), "x+(y+z)": _opt(rhs[x])})
                law.checked -= 1
                law.failures += bad.size - 1

    law = report.law("unit", "0+x = x", EXHAUSTIVE)
    for x in range(N):
        law.check(T[E.zero, x] == x, {"x": x, "0+x": _opt(T[E.zero, x])})
    return report


def law_suite_effect_algebra(E: EffectAlgebra, bound: int = DEFAULT_BOUND) -> Report:
    """Exhaustive check of every effect-algebra law on a finite table."""
    report = Report("effect-algebra")
    law_suite_pcm(E, bound, report)
    T, N, top, zero = E.table, E.size, E.top, E.zero

    law = report.law("positivity", "x+y = 0 implies x = y = 0", EXHAUSTIVE)
    for x, y in np.argwhere(T == zero):
        law.check(x == zero and y == zero, {"x": int(x), "y": int(y)})
    law.checked = max(law.checked, N * N)

    law = report.law("cancellativity", "x+z = y+z implies x = y", EXHAUSTIVE)
    for z in range(N):
        col = T[:, z]
        vals, counts = np.unique(col[col != UNDEF], return_counts=True)
        law.checked += N
        for v, c in zip(vals, counts):
            if c > 1:
                xs = [int(x) for x in np.flatnonzero(col == v)[:2]]
                law.check(False, {"x": xs[0], "y": xs[1], "z": z, "sum": int(v)})
                law.checked -= 1

    law = report.law("unique orthosupplement", "exactly one b with a+b = 1", EXHAUSTIVE)
    for a in range(N):
        cands = E.orthosupplements(a)
        law.check(len(cands) == 1, {"a": a, "candidates": cands})
    unique = law.passed

    law = report.law("zero-one", "a summable with 1 implies a = 0", EXHAUSTIVE)
    for a in range(N):
        law.check(T[a, top] == UNDEF or a == zero, {"a": a})

    leqm = order_matrix(E)
    law = report.law("partial order", "algebraic order is reflexive, antisymmetric, transitive "
                     "with bottom 0 and top 1", EXHAUSTIVE)
    law.check(bool(np.all(np.diag(leqm))), "reflexivity")
    sym = leqm & leqm.T & ~np.eye(N, dtype=bool)
    law.check(not sym.any(), lambda: {"antisymmetry": np.argwhere(sym)[0].tolist()})
    trans = (leqm.astype(np.int64) @ leqm.astype(np.int64)) > 0
    law.check(not np.any(trans & ~leqm), lambda: {"transitivity":
                                                   np.argwhere(trans & ~leqm)[0].tolist()})
    law.check(bool(np.all(leqm[zero])), "0 is bottom")
    law.check(bool(np.all(leqm[:, top])), "1 is top")

    if unique:
        o = np.array([E.ortho(a) for a in range(N)])
        law = report.law("involution", "ortho(ortho(a)) = a", EXHAUSTIVE)
        for a in range(N):
            law.check(o[o[a]] == a, {"a": a})
        law = report.law("ortho antitone", "0' = 1 and a <= b iff b' <= a'", EXHAUSTIVE)
        law.check(o[zero] == top, "0' != 1")
        anti = leqm != leqm[np.ix_(o, o)].T
        law.checked += N * N
        if anti.any():
            a, b = np.argwhere(anti)[0]
            law.check(False, {"a": int(a), "b": int(b)})
            law.checked -= 1
    return report


def _opt(v):
    v = int(v)
    return None if v == UNDEF else v


# -- lattice structure ------------------------------------------------------

def meet(E: Pcm, a: int, b: int, leqm: np.ndarray | None = None) -> int | None:
    leqm = order_matrix(E) if leqm is None else leqm
    lower = np.flatnonzero(leqm[:, a] & leqm[:, b])
    for c in lower:
        if np.all(leqm[lower, c]):
            return int(c)
    return None


def join(E: Pcm, a: int, b: int, leqm: np.ndarray | None = None) -> int | None:
    leqm = order_matrix(E) if leqm is None else leqm
    upper = np.flatnonzero(leqm[a] & leqm[b])
    for c in upper:
        if np.all(leqm[c, upper]):
            return int(c)
    return None


def is_lattice(E: Pcm, bound: int = DEFAULT_BOUND) -> bool:
    _check_bound(E, bound)
    leqm = order_matrix(E)
    return all(meet(E, a, b, leqm) is not None and join(E, a, b, leqm) is not None
               for a in range(E.size) for b in range(a, E.size))


def is_ortho_sharp(E: EffectAlgebra, a: int, leqm: np.ndarray | None = None) -> bool:
    """No nonzero element lies below both ``a`` and ``a'``."""
    leqm = order_matrix(E) if leqm is None else leqm
    below = np.flatnonzero(leqm[:, a] & leqm[:, E.ortho(a)])
    return bool(np.all(below == E.zero))


def sharpness_conditions(E: EffectAlgebra, bound: int = DEFAULT_BOUND) -> tuple[bool, bool, bool]:
    """The three conditions that coincide on lattice effect algebras.

    (every element ortho-sharp, ``a + a`` defined only for 0,
    summable pairs sum to their join).
    """
    _check_bound(E, bound)
    leqm = order_matrix(E)
    all_sharp = all(is_ortho_sharp(E, a, leqm) for a in range(E.size))
    no_self = all(E.table[a, a] == UNDEF or a == E.zero for a in range(E.size))
    sums_are_joins = all(E.table[a, b] == join(E, a, b, leqm)
                         for a, b in np.argwhere(E.table != UNDEF))
    return all_sharp, no_self, sums_are_joins


def is_boolean_algebra(E: EffectAlgebra, bound: int = DEFAULT_BOUND) -> bool:
    """Lattice, orthocomplemented by ``'``, distributive, and sum = disjoint join."""
    _check_bound(E, bound)
    if not is_lattice(E, bound):
        return False
    leqm = order_matrix(E)
    N = E.size
    M = np.array([[meet(E, a, b, leqm) for b in range(N)] for a in range(N)])
    J = np.array([[join(E, a, b, leqm) for b in range(N)] for a in range(N)])
    for a in range(N):
        if M[a, E.ortho(a)] != E.zero:
            return False
    for a, b, c in product(range(N), repeat=3):
        if M[a, J[b, c]] != J[M[a, b], M[a, c]]:
            return False
    return all(E.table[a, b] == J[a, b] for a, b in np.argwhere(E.table != UNDEF))


# -- Mackey compatibility and MV-algebras -----------------------------------

def mackey_compatible(E: EffectAlgebra, a: int, b: int,
                      bound: int = DEFAULT_BOUND) -> tuple[int, int, int] | None:
    """Search for ``(a', b', c)`` with ``a = a'+c``, ``b = b'+c``, and ``a'+b'+c`` defined.

    Candidates ``c`` are scanned in carrier order; the first witness is returned.
    """
    _check_bound(E, bound)
    T = E.table
    for c in range(E.size):
        a1 = np.flatnonzero(T[:, c] == a)
        b1 = np.flatnonzero(T[:, c] == b)
        if a1.size == 0 or b1.size == 0:
            continue
        a1, b1 = int(a1[0]), int(b1[0])
        s = T[a1, b1]
        if s != UNDEF and T[s, c] != UNDEF:
            return a1, b1, c
    return None


def mv_sum(E: EffectAlgebra, a: int, b: int, leqm: np.ndarray | None = None) -> int:
    leqm = order_matrix(E) if leqm is None else leqm
    m = meet(E, E.ortho(a), b, leqm)
    if m is None:
        raise NotLattice(f"no meet of {E.label(E.ortho(a))} and {E.label(b)}")
    return int(E.table[a, m])


def check_mv_preconditions(E: EffectAlgebra, bound: int = DEFAULT_BOUND):
    if not is_lattice(E, bound):
        raise NotLattice("effect algebra is not a lattice")
    for a in range(E.size):
        for b in range(a, E.size):
            if mackey_compatible(E, a, b, bound) is None:
                raise NotMackey(f"{E.label(a)} and {E.label(b)} are not Mackey compatible")


def mv_from_mackey(E: EffectAlgebra, a: int, b: int, bound: int = DEFAULT_BOUND,
                   checked: bool = True) -> int:
    """``a + b := a (+) (a' /\\ b)`` on a lattice effect algebra with the Mackey property."""
    if checked:
        check_mv_preconditions(E, bound)
    return mv_sum(E, a, b)


def mv_table(E: EffectAlgebra, bound: int = DEFAULT_BOUND) -> np.ndarray:
    check_mv_preconditions(E, bound)
    leqm = order_matrix(E)
    return np.array([[mv_sum(E, a, b, leqm) for b in range(E.size)] for a in range(E.size)])


def law_suite_mv(E: EffectAlgebra, bound: int = DEFAULT_BOUND) -> Report:
    """MV-algebra axioms for the induced total sum."""
    report = Report("mv-algebra")
    P = mv_table(E, bound)
    N, zero = E.size, E.zero
    o = np.array([E.ortho(a) for a in range(N)])
    one = o[zero]

    law = report.law("commutative monoid", "+ is associative, commutative, with unit 0",
                     EXHAUSTIVE)
    law.check(bool(np.all(P == P.T)), "commutativity")
    law.check(bool(np.all(P[zero] == np.arange(N))), "unit")
    assoc = P[P[:, :, None], np.arange(N)[None, None, :]] == P[np.arange(N)[:, None, None],
                                                               P[None, :, :]]
    law.check(bool(assoc.all()), lambda: {"assoc": np.argwhere(~assoc)[0].tolist()})

    law = report.law("double negation", "a'' = a", EXHAUSTIVE)
    for a in range(N):
        law.check(o[o[a]] == a, {"a": a})
    law = report.law("absorbing top", "a + 0' = 0'", EXHAUSTIVE)
    for a in range(N):
        law.check(P[a, one] == one, {"a": a})
    law = report.law("Lukasiewicz axiom", "(a' + b)' + b = (b' + a)' + a", EXHAUSTIVE)
    for a in range(N):
        for b in range(N):
            law.check(P[o[P[o[a], b]], b] == P[o[P[o[b], a]], a], {"a": a, "b": b})
    return report

