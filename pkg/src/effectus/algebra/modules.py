"""Scalars in [0, 1], effect modules and weight modules over them.

Two concrete module families are provided for each kind: exact finite
(sub)distributions / fuzzy predicates over ``Fraction``, and their quantum
counterparts (substates and effects of a block-diagonal matrix algebra)
compared within a tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ..errors import NotBelow, ToleranceViolation, ZeroElement
from ..report import SAMPLED, Report

EPS = 1e-9


def divide(t, s, eps: float = EPS):
    """The unique ``q`` in [0, 1] with ``t * q = s``; needs ``s <= t`` and ``t > 0``."""
    if isinstance(t, Fraction) or isinstance(s, Fraction) or (
            isinstance(t, int) and isinstance(s, int)):
        t, s = Fraction(t), Fraction(s)
        if t == 0 or s > t or s < 0:
            raise NotBelow(f"cannot divide {s} by {t} in [0, 1]")
        return s / t
    if t <= eps:
        raise ZeroElement(f"divisor {t} is within tolerance of 0")
    if s > t + eps or s < -eps:
        raise NotBelow(f"cannot divide {s} by {t} in [0, 1]")
    return min(max(s / t, 0.0), 1.0)


def check_unit_interval(v, eps: float = EPS):
    if isinstance(v, Fraction):
        if not 0 <= v <= 1:
            raise ToleranceViolation(f"{v} outside [0, 1]")
    elif not -eps <= v <= 1 + eps:
        raise ToleranceViolation(f"{v} outside [0, 1] beyond tolerance")
    return v


# -- exact (sub)distributions ------------------------------------------------

@dataclass(frozen=True)
class Subdistributions:
    """Finite subdistributions on ``range(n)`` with exact rational weights."""

    n: int

    def zero(self):
        return (Fraction(0),) * self.n

    def element(self, values: Iterable) -> tuple:
        x = tuple(Fraction(v) for v in values)
        if len(x) != self.n or any(v < 0 for v in x) or sum(x) > 1:
            raise ValueError(f"not a subdistribution on {self.n} points: {x}")
        return x

    def weight(self, x) -> Fraction:
        return sum(x, Fraction(0))

    def scale(self, r, x):
        return tuple(Fraction(r) * v for v in x)

    def add(self, x, y):
        s = tuple(a + b for a, b in zip(x, y))
        return s if sum(s) <= 1 else None

    def equal(self, x, y) -> bool:
        return tuple(x) == tuple(y)


@dataclass(frozen=True)
class FuzzyPredicates:
    """The effect module ``[0, 1]^n`` over exact rationals."""

    n: int

    def zero(self):
        return (Fraction(0),) * self.n

    def one(self):
        return (Fraction(1),) * self.n

    def add(self, a, b):
        s = tuple(x + y for x, y in zip(a, b))
        return s if all(v <= 1 for v in s) else None

    def ortho(self, a):
        return tuple(1 - v for v in a)

    def scale(self, r, a):
        return tuple(Fraction(r) * v for v in a)

    def equal(self, a, b) -> bool:
        return tuple(a) == tuple(b)


# -- quantum --------------------------------------------------------------------

def _herm(a):
    return (a + a.conj().T) / 2


@dataclass(frozen=True)
class Substates:
    """Positive block-diagonal matrices of trace <= 1 (the weight is the trace)."""

    blocks: tuple
    eps: float = EPS

    def zero(self):
        return tuple(np.zeros((n, n), dtype=complex) for n in self.blocks)

    def weight(self, x) -> float:
        return float(sum(np.trace(b).real for b in x))

    def scale(self, r, x):
        return tuple(r * b for b in x)

    def add(self, x, y):
        s = tuple(a + b for a, b in zip(x, y))
        return s if self.weight(s) <= 1 + self.eps else None

    def equal(self, x, y) -> bool:
        return all(np.max(np.abs(a - b), initial=0.0) <= 100 * self.eps for a, b in zip(x, y))


@dataclass(frozen=True)
class Effects:
    """Effects ``0 <= a <= 1`` of a block-diagonal algebra."""

    blocks: tuple
    eps: float = EPS

    def zero(self):
        return tuple(np.zeros((n, n), dtype=complex) for n in self.blocks)

    def one(self):
        return tuple(np.eye(n, dtype=complex) for n in self.blocks)

    def add(self, a, b):
        s = tuple(x + y for x, y in zip(a, b))
        ok = all(np.linalg.eigvalsh(_herm(np.eye(len(x)) - x)).min(initial=0.0) >= -self.eps
                 for x in s)
        return s if ok else None

    def ortho(self, a):
        return tuple(np.eye(len(x)) - x for x in a)

    def scale(self, r, a):
        return tuple(r * x for x in a)

    def equal(self, a, b) -> bool:
        return all(np.max(np.abs(x - y), initial=0.0) <= 100 * self.eps for x, y in zip(a, b))


def normalize(module, x):
    """The unique ``y`` of weight 1 with ``x = |x| * y``."""
    w = module.weight(x)
    if (w == 0) if isinstance(w, Fraction) else (w <= getattr(module, "eps", EPS)):
        raise ZeroElement("cannot normalize the zero element")
    return module.scale(1 / w, x)


# -- law suites -------------------------------------------------------------

def law_suite_weight_module(module, samples: Sequence, scalars: Sequence) -> Report:
    """Weight-module axioms on the given elements and scalars."""
    report = Report("weight-module")
    exact = isinstance(module, Subdistributions)
    close = (lambda a, b: a == b) if exact else (lambda a, b: abs(a - b) <= 100 * module.eps)

    law = report.law("faithful weight", "|x| = 0 implies x = 0", SAMPLED)
    for x in list(samples) + [module.zero()]:
        w = module.weight(x)
        if close(w, 0):
            law.check(module.equal(x, module.zero()), x)
        else:
            law.check(True)
    law = report.law("weights reflect summability", "|x|+|y| defined implies x+y defined",
                     SAMPLED)
    law2 = report.law("weight additive", "|x+y| = |x|+|y|", SAMPLED)
    for x in samples:
        for y in samples:
            wx, wy = module.weight(x), module.weight(y)
            if wx + wy <= 1:
                s = module.add(x, y)
                law.check(s is not None, (x, y))
                if s is not None:
                    law2.check(close(module.weight(s), wx + wy), (x, y))
    law = report.law("weight homogeneous", "|s.x| = s.|x|", SAMPLED)
    for x in samples:
        for s in scalars:
            law.check(close(module.weight(module.scale(s, x)), s * module.weight(x)), (s, x))
    law = report.law("normalization", "|x| = 1 after normalizing and |x|.norm(x) = x", SAMPLED)
    for x in samples:
        w = module.weight(x)
        if close(w, 0):
            continue
        y = normalize(module, x)
        law.check(close(module.weight(y), 1) and module.equal(module.scale(w, y), x), x)
    return report


def law_suite_effect_module(module, samples: Sequence, scalars: Sequence) -> Report:
    """Effect-module axioms: the scalar action is a bimorphism, unital and associative."""
    report = Report("effect-module")
    law = report.law("action preserves sums", "s.(a+b) = s.a + s.b", SAMPLED)
    for a in samples:
        for b in samples:
            ab = module.add(a, b)
            if ab is None:
                continue
            for s in scalars:
                rhs = module.add(module.scale(s, a), module.scale(s, b))
                law.check(rhs is not None and module.equal(module.scale(s, ab), rhs), (s, a, b))
    law = report.law("sums of scalars", "(s+t).a = s.a + t.a when s+t <= 1", SAMPLED)
    for a in samples:
        for s in scalars:
            for t in scalars:
                if s + t <= 1:
                    rhs = module.add(module.scale(s, a), module.scale(t, a))
                    law.check(rhs is not None and module.equal(module.scale(s + t, a), rhs),
                              (s, t, a))
    law = report.law("associative action", "(st).a = s.(t.a)", SAMPLED)
    for a in samples:
        for s in scalars:
            for t in scalars:
                law.check(module.equal(module.scale(s * t, a),
                                       module.scale(s, module.scale(t, a))), (s, t, a))
    law = report.law("unital action", "1.a = a", SAMPLED)
    for a in samples:
        law.check(module.equal(module.scale(1, a), a), a)
    law = report.law("orthosupplement", "a + a' = 1", SAMPLED)
    for a in samples:
        s = module.add(a, module.ortho(a))
        law.check(s is not None and module.equal(s, module.one()), a)
    return report


def law_suite_effect_monoid(scalars: Sequence) -> Report:
    """Multiplication on [0, 1] distributes over defined sums and has unit 1."""
    report = Report("effect-monoid")
    law = report.law("distributivity", "r(s+t) = rs + rt and (s+t)r = sr + tr", SAMPLED)
    for r in scalars:
        for s in scalars:
            for t in scalars:
                if s + t <= 1:
                    law.check(r * (s + t) == r * s + r * t and (s + t) * r == s * r + t * r,
                              (r, s, t))
    law = report.law("unit", "1 s = s = s 1", SAMPLED)
    for s in scalars:
        law.check(1 * s == s == s * 1, s)
    law = report.law("division", "t * (s / t) = s for s <= t, t > 0", SAMPLED)
    for t in scalars:
        for s in scalars:
            if 0 < t and s <= t:
                law.check(t * divide(t, s) == s, (t, s))
    return report
