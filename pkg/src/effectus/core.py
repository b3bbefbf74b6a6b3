"""The effectus interface shared by the three model categories.

An instance bundles objects, morphisms and the partial sum on homsets.
Composition is written ``compose(g, f)`` for ``g ∘ f`` (``f`` first).
Everything derived from that interface (validity, predicate and state
transformers, partial tuples, the partial/total round trip and the law
suite) lives here as plain functions.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import ObjectMismatch, ZeroElement
from .report import EXHAUSTIVE, SAMPLED, Report


@dataclass(frozen=True)
class ComprehensionWitness:
    """``pi``: {A|p} -> A together with a recipe for mediating maps."""

    obj: Any
    pi: Any
    mediate: Callable[[Any], Any]
    isometries: tuple | None = None


@dataclass(frozen=True)
class QuotientWitness:
    """``xi``: A -> A/p, the canonical total inclusion ``embed``: A/p -> A,
    and a recipe for mediating maps."""

    obj: Any
    xi: Any
    mediate: Callable[[Any], Any]
    embed: Any = None


class Effectus(ABC):
    """Dispatch bundle for one model category."""

    name: str = "abstract"
    exact: bool = True

    # -- objects -----------------------------------------------------------
    @property
    @abstractmethod
    def unit(self): ...

    @property
    @abstractmethod
    def zero_object(self): ...

    @abstractmethod
    def coproduct(self, *objs): ...

    # -- morphisms ---------------------------------------------------------
    @abstractmethod
    def identity(self, A): ...

    @abstractmethod
    def zero(self, A, B): ...

    @abstractmethod
    def compose(self, g, f):
        """``g ∘ f``; raises ObjectMismatch unless ``f.cod == g.dom``."""

    @abstractmethod
    def coprojection(self, objs: Sequence, j: int):
        """kappa_j: objs[j] -> objs[0] + ... + objs[-1]."""

    @abstractmethod
    def partial_projection(self, objs: Sequence, j: int):
        """▷_j: objs[0] + ... + objs[-1] -> objs[j]."""

    @abstractmethod
    def cotuple(self, fs: Sequence): ...

    @abstractmethod
    def partial_tuple_raw(self, fs: Sequence):
        """The unique map into the coproduct of the codomains with the given
        partial projections, without checking summability."""

    @abstractmethod
    def sum(self, f, g):
        """``f ⊕ g``, or None when not summable."""

    @abstractmethod
    def difference(self, g, f):
        """The unique ``h`` with ``f ⊕ h = g``; raises NotBelow."""

    @abstractmethod
    def truth(self, A): ...

    @abstractmethod
    def equal(self, f, g) -> bool: ...

    @abstractmethod
    def leq(self, f, g) -> bool: ...

    @abstractmethod
    def scalar_value(self, s):
        """The number in [0, 1] carried by a scalar I -> I."""

    @abstractmethod
    def scalar(self, v): ...

    @abstractmethod
    def scale(self, r, f):
        """The action of a number ``r`` in [0, 1] on any morphism."""

    # -- logic oracles -----------------------------------------------------
    @abstractmethod
    def image(self, f): ...

    @abstractmethod
    def comprehension(self, A, p) -> ComprehensionWitness: ...

    @abstractmethod
    def quotient(self, A, p) -> QuotientWitness: ...

    @abstractmethod
    def sharp_predicates(self, A, rng=None) -> Iterator: ...

    @abstractmethod
    def validity_formula(self, omega, p):
        """Born rule computed directly from the representations."""

    @abstractmethod
    def normalize_formula(self, omega):
        """Normalization computed directly from the representation."""

    # -- sampling ----------------------------------------------------------
    @abstractmethod
    def random_morphism(self, rng: np.random.Generator, A, B, total: bool = False): ...

    def random_state(self, rng: np.random.Generator, A, total: bool = True):
        return self.random_morphism(rng, self.unit, A, total=total)

    def random_predicate(self, rng: np.random.Generator, A):
        return self.random_morphism(rng, A, self.unit)

    def enumerate_homset(self, A, B) -> list | None:
        """All morphisms A -> B when the instance can list them, else None."""
        return None

    @abstractmethod
    def sample_objects(self) -> list: ...

    # -- helpers built on the interface ------------------------------------
    def summands(self, obj) -> list:
        """Split a coproduct object into the summands it was built from;
        instances whose objects carry no explicit decomposition return [obj]."""
        return [obj]

    def is_zero(self, f) -> bool:
        return self.equal(f, self.zero(f.dom, f.cod))

    def is_total(self, f) -> bool:
        return self.equal(truth_of(self, f), self.truth(f.dom))

    def codiagonal(self, A, n: int = 2):
        return self.cotuple([self.identity(A)] * n)

    def ortho(self, p):
        return self.difference(self.truth(p.dom), p)


# -- instance-independent constructions -------------------------------------

def _same(E: Effectus, a, b, what: str):
    if a != b:
        raise ObjectMismatch(f"{what}: {a} vs {b}")


def truth_of(E: Effectus, f):
    """``1 ∘ f``, the domain predicate of ``f``."""
    return E.compose(E.truth(f.cod), f)


def weight(E: Effectus, omega):
    return E.scalar_value(truth_of(E, omega))


def validity(E: Effectus, omega, p):
    """``ω ⊨ p = p ∘ ω`` as a number in [0, 1]."""
    _same(E, omega.cod, p.dom, "state and predicate live on different objects")
    return E.scalar_value(E.compose(p, omega))


def predicate_transform(E: Effectus, f, q):
    """``f*(q) = q ∘ f``."""
    _same(E, f.cod, q.dom, "predicate is not on the codomain")
    return E.compose(q, f)


def state_transform(E: Effectus, f, omega):
    """``f_*(ω) = f ∘ ω``."""
    _same(E, omega.cod, f.dom, "state is not on the domain")
    return E.compose(f, omega)


def partial_tuple(E: Effectus, fs: Sequence):
    """``⟨⟨f_1, …, f_n⟩⟩`` when the domain predicates are summable, else None."""
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one morphism")
    A = fs[0].dom
    for f in fs:
        _same(E, f.dom, A, "partial tuple needs a common domain")
    acc = E.zero(A, E.unit)
    for f in fs:
        acc = E.sum(acc, truth_of(E, f))
        if acc is None:
            return None
    return E.partial_tuple_raw(fs)


def big_sum(E: Effectus, fs: Iterable, A=None, B=None):
    fs = list(fs)
    acc = E.zero(A, B) if not fs else fs[0]
    for f in fs[1:]:
        acc = E.sum(acc, f)
        if acc is None:
            return None
    return acc


def to_total(E: Effectus, f):
    """``⟨⟨f, (1f)⊥⟩⟩ : A -> B + I``, a total map."""
    return E.partial_tuple_raw([f, E.ortho(truth_of(E, f))])


def from_total(E: Effectus, g, B):
    """``▷_1 ∘ g`` for ``g : A -> B + I``."""
    return E.compose(E.partial_projection([B, E.unit], 0), g)


def normalize(E: Effectus, omega):
    """The unique state ``ω̄`` with ``ω = |ω| · ω̄``."""
    w = weight(E, omega)
    if (w == 0) if E.exact else (w <= getattr(E, "eps", 1e-9)):
        raise ZeroElement("cannot normalize a zero substate")
    return E.scale(1 / w, omega)


# -- law suite ---------------------------------------------------------------

@dataclass(frozen=True)
class SuiteConfig:
    """Sampling budget for non-enumerable homsets."""

    samples: int = 200
    seed: int = 0


def _homset(E: Effectus, A, B, rng, n: int):
    listed = E.enumerate_homset(A, B)
    if listed is not None:
        return listed, EXHAUSTIVE
    out = [E.zero(A, B)]
    for i in range(n):
        out.append(E.random_morphism(rng, A, B, total=(i % 3 == 0)))
    return out, SAMPLED


def law_suite_effectus(E: Effectus, config: SuiteConfig = SuiteConfig()) -> Report:
    """E'1–E'4, the finPAC axioms, joint monicity of partial projections,
    validity naturality and the PCM-enrichment of composition."""
    rng = np.random.default_rng(config.seed)
    report = Report(f"effectus/{E.name}")
    objs = E.sample_objects()
    pairs = [(A, B) for A in objs for B in objs]
    # the per-homset sample count keeps the total near config.samples
    per = max(2, config.samples // max(1, len(pairs)))
    homs: dict = {}
    regimes: dict = {}
    for A, B in pairs:
        homs[A, B], regimes[A, B] = _homset(E, A, B, rng, per)
    regime = EXHAUSTIVE if all(r == EXHAUSTIVE for r in regimes.values()) else SAMPLED
    # enumerated homsets are checked on every pair, sampled ones on a capped subset
    cap = None if regime == EXHAUSTIVE else 120
    I = E.unit

    law = report.law("E'1 truth of coproduct", "1_{A+B} = [1_A, 1_B]", EXHAUSTIVE)
    for A in objs:
        for B in objs:
            law.check(E.equal(E.truth(E.coproduct(A, B)), E.cotuple([E.truth(A), E.truth(B)])),
                      (A, B))

    law = report.law("E'2 zero truth implies zero", "1f = 0 implies f = 0", regime)
    for (A, B), fs in homs.items():
        for f in fs:
            law.check(E.is_zero(truth_of(E, f)) == E.is_zero(f), f)

    law = report.law("E'3 compatible truth implies compatible",
                     "1f ⊥ 1g implies ⟨⟨f, g⟩⟩ exists with ▷_1, ▷_2 recovering f, g", regime)
    for A in objs:
        for B in objs:
            for C in objs:
                fs, gs = homs[A, B], homs[A, C]
                for f, g in _pairs(fs, gs, rng, cap):
                    if E.sum(truth_of(E, f), truth_of(E, g)) is None:
                        continue
                    h = partial_tuple(E, [f, g])
                    ok = h is not None and E.equal(
                        E.compose(E.partial_projection([B, C], 0), h), f) and E.equal(
                        E.compose(E.partial_projection([B, C], 1), h), g)
                    law.check(ok, (f, g))

    law = report.law("E'4 unique orthosupplement",
                     "each predicate p has exactly one q with p ⊕ q = 1", regime)
    for A in objs:
        preds = homs[A, I]
        for p in preds:
            q = E.ortho(p)
            s = E.sum(p, q)
            ok = s is not None and E.equal(s, E.truth(A))
            for r in preds:
                t = E.sum(p, r)
                if t is not None and E.equal(t, E.truth(A)):
                    ok = ok and E.equal(r, q)
            law.check(ok, p)

    law = report.law("compatible sum", "compatible f, g are summable with sum ∇∘h", regime)
    law_untie = report.law("untying", "f ⊥ g implies κ_1∘f ⊥ κ_2∘g", regime)
    for A in objs:
        for B in objs:
            BB = E.coproduct(B, B)
            nabla = E.codiagonal(B)
            p1, p2 = E.partial_projection([B, B], 0), E.partial_projection([B, B], 1)
            hs = E.enumerate_homset(A, BB)
            if hs is None:
                hs = [E.random_morphism(rng, A, BB, total=i % 2 == 0) for i in range(per)]
            for h in hs:
                f, g = E.compose(p1, h), E.compose(p2, h)
                s = E.sum(f, g)
                law.check(s is not None and E.equal(s, E.compose(nabla, h)), h)
            k1, k2 = E.coprojection([B, B], 0), E.coprojection([B, B], 1)
            for f, g in _pairs(homs[A, B], homs[A, B], rng, cap):
                if E.sum(f, g) is not None:
                    law_untie.check(E.sum(E.compose(k1, f), E.compose(k2, g)) is not None,
                                    (f, g))

    law = report.law("joint monicity of partial projections",
                     "▷_1∘f = ▷_1∘g and ▷_2∘f = ▷_2∘g imply f = g", regime)
    for A in objs:
        for B in objs:
            for C in objs:
                BC = E.coproduct(B, C)
                hs = E.enumerate_homset(A, BC)
                if hs is None:
                    hs = [E.random_morphism(rng, A, BC) for _ in range(per)]
                p1, p2 = E.partial_projection([B, C], 0), E.partial_projection([B, C], 1)
                if E.exact:
                    # keyed on the projection pair, so collisions are detected in linear time
                    seen: dict = {}
                    for h in hs:
                        key = (E.compose(p1, h), E.compose(p2, h))
                        if key in seen:
                            law.check(E.equal(seen[key], h), (seen[key], h))
                        else:
                            seen[key] = h
                            law.check(True)
                else:
                    for f, g in _pairs(hs, hs, rng, cap):
                        same = E.equal(E.compose(p1, f), E.compose(p1, g)) and E.equal(
                            E.compose(p2, f), E.compose(p2, g))
                        law.check(not same or E.equal(f, g), (f, g))

    law = report.law("validity naturality", "f_*(ω) ⊨ p = ω ⊨ f*(p)", regime)
    law_born = report.law("validity formula", "p ∘ ω agrees with the direct Born rule", regime)
    for A in objs:
        for B in objs:
            states = homs[I, A]
            fs = homs[A, B] if cap is None else homs[A, B][: 3 * per]
            for f in fs:
                for omega, p in _pairs(states, homs[B, I], rng, cap and 10):
                    lhs = validity(E, state_transform(E, f, omega), p)
                    rhs = validity(E, omega, predicate_transform(E, f, p))
                    law.check(_close(E, lhs, rhs), (f, omega, p))
        for omega, p in _pairs(homs[I, A], homs[A, I], rng, cap):
            law_born.check(_close(E, validity(E, omega, p), E.validity_formula(omega, p)),
                           (omega, p))

    law = report.law("composition preserves sums",
                     "h∘(f⊕g) = h∘f ⊕ h∘g and (f⊕g)∘k = f∘k ⊕ g∘k", regime)
    for A in objs:
        for B in objs:
            for f, g in _pairs(homs[A, B], homs[A, B], rng, cap and 60):
                s = E.sum(f, g)
                if s is None:
                    continue
                for C in objs:
                    for h in _pick(homs[B, C], rng, cap):
                        hs_ = E.sum(E.compose(h, f), E.compose(h, g))
                        law.check(hs_ is not None and E.equal(E.compose(h, s), hs_), (h, f, g))
                    for k in _pick(homs[C, A], rng, cap):
                        ks = E.sum(E.compose(f, k), E.compose(g, k))
                        law.check(ks is not None and E.equal(E.compose(s, k), ks), (f, g, k))

    law = report.law("order antisymmetry", "f ≤ g and g ≤ f imply f = g", regime)
    for (A, B), fs in homs.items():
        for f, g in _pairs(fs, fs, rng, cap and 40):
            if E.leq(f, g) and E.leq(g, f):
                law.check(E.equal(f, g), (f, g))
            else:
                law.check(True)

    law = report.law("totality closure", "total maps compose and cotuple to total maps; "
                     "coprojections are total", regime)
    for A in objs:
        for B in objs:
            for j in (0, 1):
                law.check(E.is_total(E.coprojection([A, B], j)), (A, B, j))
            for C in objs:
                tf = [f for f in homs[A, B] if E.is_total(f)][:cap and 4]
                tg = [g for g in homs[B, C] if E.is_total(g)][:cap and 4]
                for f in tf:
                    for g in tg:
                        law.check(E.is_total(E.compose(g, f)), (g, f))
                ta = [f for f in homs[A, C] if E.is_total(f)][:cap and 3]
                tb = [f for f in homs[B, C] if E.is_total(f)][:cap and 3]
                for f in ta:
                    for g in tb:
                        law.check(E.is_total(E.cotuple([f, g])), (f, g))
    return report


def _pick(xs: Sequence, rng: np.random.Generator, cap: int | None) -> list:
    """Everything when exhaustive, otherwise one random element."""
    if cap is None:
        return list(xs)
    return [xs[int(rng.integers(len(xs)))]]


def _pairs(xs: Sequence, ys: Sequence, rng: np.random.Generator, cap: int | None):
    """All pairs when ``cap`` is None or not exceeded, otherwise a seeded sample."""
    n = len(xs) * len(ys)
    if cap is None or n <= cap:
        yield from product(xs, ys)
        return
    for _ in range(cap):
        yield xs[int(rng.integers(len(xs)))], ys[int(rng.integers(len(ys)))]


def _close(E: Effectus, a, b) -> bool:
    if E.exact:
        return a == b
    return abs(a - b) <= 100 * getattr(E, "eps", 1e-9)


def law_suite_round_trips(E: Effectus, n: int = 100, seed: int = 0) -> Report:
    """Partial/total round trip and uniqueness of normalization on seeded data."""
    rng = np.random.default_rng(seed)
    report = Report(f"round-trips/{E.name}")
    objs = E.sample_objects()
    trip = report.law("partial/total round trip",
                      "from_total(to_total(f)) = f, to_total total, and "
                      "to_total(from_total(g)) = g for total g", SAMPLED)
    norm = report.law("normalization unique",
                      "ω = |ω| · ω̄ with |ω̄| = 1, matching a direct construction", SAMPLED)
    for i in range(n):
        A = objs[i % len(objs)]
        B = objs[(i // len(objs)) % len(objs)]
        try:
            f = E.random_morphism(rng, A, B, total=(i % 5 == 0))
        except ValueError:
            f = E.random_morphism(rng, A, B)
        t = to_total(E, f)
        ok = E.is_total(t) and E.equal(from_total(E, t, B), f)
        ok = ok and E.equal(to_total(E, from_total(E, t, B)), t)
        trip.check(ok, f)
    done = attempts = 0
    while done < n and attempts < 50 * n:
        A = objs[attempts % len(objs)]
        attempts += 1
        omega = E.random_state(rng, A, total=False)
        if E.is_zero(omega):
            continue
        done += 1
        bar = normalize(E, omega)
        other = E.normalize_formula(omega)
        w = weight(E, omega)
        norm.check(_close(E, weight(E, bar), 1) and E.equal(E.scale(w, bar), omega)
                   and E.equal(bar, other), omega)
    return report
