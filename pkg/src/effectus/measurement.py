"""Tests, instruments and experiments, and the properties of instruments
(repeatability, idempotency, ideality, Booleanness) decided through images,
comprehension and quotients."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Sequence

import numpy as np

from .core import Effectus, big_sum, partial_tuple, truth_of
from .errors import NotBelow, NotInstrument, NotObservable, NotSharp, ToleranceViolation, \
    TypeMismatch
from .logic import is_sharp
from .report import EXHAUSTIVE, SAMPLED, Report


@dataclass(frozen=True, eq=False)
class Test:
    """Outcome-indexed family ``f_x : A -> B`` whose domain predicates sum to truth."""

    dom: Any
    cod: Any
    labels: tuple
    components: tuple

    def __getitem__(self, label):
        return self.components[self.labels.index(label)]

    def items(self):
        return zip(self.labels, self.components)

    @property
    def is_instrument(self) -> bool:
        return self.dom == self.cod


def make_test(E: Effectus, labels: Sequence, components: Sequence, check: bool = True) -> Test:
    labels, components = tuple(labels), tuple(components)
    if len(labels) != len(components) or not components:
        raise NotInstrument("labels and components must pair up and be nonempty")
    if len(set(labels)) != len(labels):
        raise NotInstrument("outcome labels must be distinct")
    A, B = components[0].dom, components[0].cod
    if any(f.dom != A or f.cod != B for f in components):
        raise TypeMismatch("all components of a test share domain and codomain")
    if check:
        s = big_sum(E, [truth_of(E, f) for f in components])
        if s is None or not E.equal(s, E.truth(A)):
            raise NotInstrument("domain predicates do not sum to truth")
    return Test(A, B, labels, components)


def observable(E: Effectus, labels: Sequence, predicates: Sequence) -> Test:
    try:
        t = make_test(E, labels, predicates)
    except NotInstrument as err:
        raise NotObservable(str(err)) from err
    if t.cod != E.unit:
        raise NotObservable("observable components must be predicates")
    return t


def binary_observable(E: Effectus, p, labels=("0", "1")) -> Test:
    return observable(E, labels, [p, E.ortho(p)])


def state_test(E: Effectus, omega, label: str = "*") -> Test:
    return make_test(E, [label], [omega])


def measured_observable(E: Effectus, f: Test) -> Test:
    """``f ; 1``: the observable with components ``1 ∘ f_x``."""
    return Test(f.dom, E.unit, f.labels, tuple(truth_of(E, c) for c in f.components))


def as_total(E: Effectus, f: Test):
    """The total map ``⟨⟨f_x⟩⟩_x : A -> X·B``."""
    return partial_tuple(E, f.components)


def compose_tests(E: Effectus, f: Test, g: Test) -> Test:
    """``f ; g`` with outcomes ``(x, y)`` and components ``g_y ∘ f_x``."""
    if f.cod != g.dom:
        raise TypeMismatch(f"test codomain {f.cod} does not match next domain {g.dom}")
    labels, comps = [], []
    for x, fx in f.items():
        for y, gy in g.items():
            labels.append((*_tup(x), *_tup(y)))
            comps.append(E.compose(gy, fx))
    return make_test(E, labels, comps)


def _tup(x):
    return x if isinstance(x, tuple) else (x,)


def coarse_grain(E: Effectus, f: Test, mapping: dict) -> Test:
    """Sum components along an outcome map ``X -> Y`` (every ``y`` must be hit)."""
    targets = list(dict.fromkeys(mapping[x] for x in f.labels))
    comps = [big_sum(E, [c for x, c in f.items() if mapping[x] == y]) for y in targets]
    return make_test(E, targets, comps)


def identity_instrument(E: Effectus, A, label: str = "*") -> Test:
    return make_test(E, [label], [E.identity(A)])


# -- tables ------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return f"{float(v):.12g}"


@dataclass(frozen=True)
class ProbTable:
    """Joint distribution over outcome tuples, one axis per measurement."""

    axes: tuple
    entries: dict = field(hash=False)

    def __getitem__(self, outcome):
        return self.entries[tuple(outcome)]

    def rows(self):
        return sorted(self.entries.items(), key=lambda kv: tuple(map(str, kv[0])))

    def total(self):
        vals = list(self.entries.values())
        return sum(vals, Fraction(0)) if vals and isinstance(vals[0], Fraction) else sum(vals)

    def marginal(self, keep: Sequence[int]) -> "ProbTable":
        keep = list(keep)
        out: dict = {}
        for o in product(*[self.axes[i] for i in keep]):
            out[o] = 0
        for o, v in self.entries.items():
            key = tuple(o[i] for i in keep)
            out[key] = out[key] + v
        return ProbTable(tuple(self.axes[i] for i in keep), out)

    def conditional(self, target: Sequence[int], given: dict, eps: float = 1e-9
                    ) -> "ProbTable | None":
        """``P(target | given)``, or None when the conditioning event has
        probability zero."""
        axes = sorted(set(target) | set(given))
        joint = self.marginal(axes)
        pos = {a: i for i, a in enumerate(axes)}
        den = sum((v for o, v in joint.entries.items()
                   if all(o[pos[a]] == lab for a, lab in given.items())), 0)
        if (den == 0) if isinstance(den, Fraction) or den == 0 else den <= eps:
            return None
        out = {}
        for o, v in joint.entries.items():
            if all(o[pos[a]] == lab for a, lab in given.items()):
                key = tuple(o[pos[t]] for t in target)
                out[key] = out.get(key, 0) + v / den
        return ProbTable(tuple(self.axes[t] for t in target), out)

    def to_tsv(self) -> str:
        lines = ["\t".join([f"o{i + 1}" for i in range(len(self.axes))] + ["p"])]
        for o, v in self.rows():
            lines.append("\t".join([*map(str, o), _fmt(v)]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"axes": [list(a) for a in self.axes],
                "rows": [{"outcome": list(o), "p": _fmt(v)} for o, v in self.rows()]}


def run_experiment(E: Effectus, prep: Test, steps: Sequence[Test]) -> ProbTable:
    """Joint outcome probabilities of preparing with ``prep`` and then
    applying each test in turn, discarding the final system.  A preparation
    with a single outcome contributes no axis."""
    if prep.dom != E.unit:
        raise TypeMismatch("preparation must start from the unit object")
    cur = prep.cod
    for s in steps:
        if s.dom != cur:
            raise TypeMismatch(f"step expects {s.dom} but receives {cur}")
        cur = s.cod
    axes = ([prep.labels] if len(prep.labels) > 1 else []) + [s.labels for s in steps]
    entries: dict = {}

    def walk(prefix, sub, i):
        if i == len(steps):
            entries[prefix] = E.scalar_value(truth_of(E, sub))
            return
        for x, fx in steps[i].items():
            walk(prefix + (x,), E.compose(fx, sub), i + 1)

    for y, omega in prep.items():
        walk((y,) if len(prep.labels) > 1 else (), omega, 0)
    table = ProbTable(tuple(tuple(a) for a in axes), entries)
    if not E.exact:
        dev = abs(table.total() - 1)
        if dev > 100 * getattr(E, "eps", 1e-9):
            raise ToleranceViolation(f"table sums to 1 only within {dev:.3e}")
    elif table.total() != 1:
        raise ToleranceViolation(f"table sums to {table.total()}")
    return table


# -- instrument properties ----------------------------------------------------

def _require_instrument(f: Test):
    if not f.is_instrument:
        raise NotInstrument("instrument needs equal domain and codomain")


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Any = None

    def __bool__(self):
        return self.holds


def is_repeatable(E: Effectus, f: Test) -> Verdict:
    """``1 ∘ f_{x'} ∘ f_x = 0`` for ``x ≠ x'``; witness ``(x, x', 1∘f_{x'}∘f_x)``."""
    _require_instrument(f)
    for (x, fx), (y, fy) in product(f.items(), f.items()):
        if x != y:
            s = truth_of(E, E.compose(fy, fx))
            if not E.is_zero(s):
                return Verdict(False, (x, y, s))
    return Verdict(True)


def is_idempotent(E: Effectus, f: Test) -> Verdict:
    _require_instrument(f)
    for (x, fx), (y, fy) in product(f.items(), f.items()):
        c = E.compose(fy, fx)
        target = fx if x == y else E.zero(f.dom, f.dom)
        if not E.equal(c, target):
            return Verdict(False, (x, y))
    return Verdict(True)


def is_side_effect_free(E: Effectus, f: Test) -> Verdict:
    _require_instrument(f)
    s = big_sum(E, f.components)
    return Verdict(s is not None and E.equal(s, E.identity(f.dom)))


def is_nondegenerate(E: Effectus, f: Test) -> Verdict:
    s = big_sum(E, f.components)
    return Verdict(E.equal(E.image(s), E.truth(f.cod)))


def is_c_ideal(E: Effectus, f: Test) -> Verdict:
    """``f_x ∘ π_{1f_x} = π_{1f_x}`` for every outcome."""
    _require_instrument(f)
    for x, fx in f.items():
        pi = E.comprehension(f.dom, truth_of(E, fx)).pi
        if not E.equal(E.compose(fx, pi), pi):
            return Verdict(False, x)
    return Verdict(True)


def is_q_ideal(E: Effectus, f: Test) -> Verdict:
    """``ξ_s ∘ f_x = ξ_s`` with ``s = im(⊕_{x' ≠ x} f_{x'})`` for every outcome."""
    _require_instrument(f)
    for x, fx in f.items():
        rest = big_sum(E, [c for y, c in f.items() if y != x], f.dom, f.dom)
        xi = E.quotient(f.dom, E.image(rest)).xi
        if not E.equal(E.compose(xi, fx), xi):
            return Verdict(False, x)
    return Verdict(True)


def is_c_idempotent(E: Effectus, f: Test) -> Verdict:
    idem = is_idempotent(E, f)
    if not idem:
        return idem
    return is_c_ideal(E, f)


def is_q_idempotent(E: Effectus, f: Test) -> Verdict:
    """Each ``f_x`` idempotent and ``ξ_{(1f_x)⊥} ∘ f_x = ξ_{(1f_x)⊥}``."""
    _require_instrument(f)
    for x, fx in f.items():
        if not E.equal(E.compose(fx, fx), fx):
            return Verdict(False, (x, "not idempotent"))
        xi = E.quotient(f.dom, E.ortho(truth_of(E, fx))).xi
        if not E.equal(E.compose(xi, fx), xi):
            return Verdict(False, x)
    return Verdict(True)


def images_match_domains(E: Effectus, f: Test) -> Verdict:
    for x, fx in f.items():
        if not E.equal(E.image(fx), truth_of(E, fx)):
            return Verdict(False, x)
    return Verdict(True)


@dataclass(frozen=True)
class IdealityFlags:
    repeatable: bool
    idempotent: bool
    c_ideal: bool
    q_ideal: bool
    c_idempotent: bool
    q_idempotent: bool
    images_match: bool
    nondegenerate: bool
    side_effect_free: bool

    @property
    def repeatable_c_ideal(self) -> bool:
        return self.repeatable and self.c_ideal

    @property
    def repeatable_q_ideal(self) -> bool:
        return self.repeatable and self.q_ideal

    def consistent(self) -> bool:
        """Cross-checks between the decidable characterizations."""
        return ((self.c_idempotent == self.repeatable_c_ideal)
                and ((self.q_idempotent and self.images_match) == self.repeatable_q_ideal)
                and (not self.idempotent or self.repeatable)
                and (not self.side_effect_free or (self.c_ideal and self.q_ideal)))


def ideality_flags(E: Effectus, f: Test) -> IdealityFlags:
    return IdealityFlags(
        repeatable=bool(is_repeatable(E, f)),
        idempotent=bool(is_idempotent(E, f)),
        c_ideal=bool(is_c_ideal(E, f)),
        q_ideal=bool(is_q_ideal(E, f)),
        c_idempotent=bool(is_c_idempotent(E, f)),
        q_idempotent=bool(is_q_idempotent(E, f)),
        images_match=bool(images_match_domains(E, f)),
        nondegenerate=bool(is_nondegenerate(E, f)),
        side_effect_free=bool(is_side_effect_free(E, f)),
    )


def c_ideal_on_states(E: Effectus, f: Test, states) -> bool:
    """Raw condition on sample states: if only ``x'`` can occur then ``f_{x'}``
    leaves the state alone."""
    for omega in states:
        for x, fx in f.items():
            others = [E.compose(c, omega) for y, c in f.items() if y != x]
            if all(E.is_zero(o) for o in others) and not E.equal(E.compose(fx, omega), omega):
                return False
    return True


def q_ideal_on_predicates(E: Effectus, f: Test, predicates) -> bool:
    """Raw condition on sample predicates: ``p ∘ f_x = 0`` for ``x ≠ x'``
    forces ``p ∘ f_{x'} = p``."""
    for p in predicates:
        for x, fx in f.items():
            others = [E.compose(p, c) for y, c in f.items() if y != x]
            if all(E.is_zero(o) for o in others) and not E.equal(E.compose(p, fx), p):
                return False
    return True


def is_first_kind(E: Effectus, f: Test, states) -> bool:
    """``P_{ω,f}(o = x) = P_{ω,f,f}(second o = x)`` on the given states."""
    for omega in states:
        prep = state_test(E, omega)
        once = run_experiment(E, prep, [f]).marginal([0])
        twice = run_experiment(E, prep, [f, f]).marginal([1])
        for x in f.labels:
            a, b = once[(x,)], twice[(x,)]
            if not (a == b if E.exact else abs(a - b) <= 100 * getattr(E, "eps", 1e-9)):
                return False
    return True


# -- Lüders -----------------------------------------------------------------

def assert_map(E: Effectus, p):
    """``asrt_p = π_p ∘ ξ_{p⊥}`` for a sharp predicate ``p``."""
    A = p.dom
    return E.compose(E.comprehension(A, p).pi, E.quotient(A, E.ortho(p)).xi)


def luders_instrument(E: Effectus, labels: Sequence, predicates: Sequence) -> Test:
    obs = observable(E, labels, predicates)
    for p in obs.components:
        if not is_sharp(E, p):
            raise NotSharp("Lüders instruments need a sharp observable")
    return make_test(E, labels, [assert_map(E, p) for p in predicates])


def generalized_luders(E: Effectus, labels: Sequence, predicates: Sequence) -> Test:
    """Components ``embed ∘ ξ_{p⊥}``; in the quantum case ``a ↦ √p a √p``."""
    observable(E, labels, predicates)
    comps = []
    for p in predicates:
        q = E.quotient(p.dom, E.ortho(p))
        comps.append(E.compose(q.embed, q.xi))
    return make_test(E, labels, comps)


@dataclass(frozen=True)
class UniquenessCheck:
    applicable: bool
    equal: bool


def check_uniqueness_cq(E: Effectus, f: Test, g: Test) -> UniquenessCheck:
    """If ``f`` is repeatable and Q-ideal and ``g`` is C-ideal (both measuring
    the same observable) then they coincide."""
    if f.labels != g.labels or f.dom != g.dom:
        raise TypeMismatch("instruments over different outcomes or objects")
    for a, b in zip(f.components, g.components):
        if not E.equal(truth_of(E, a), truth_of(E, b)):
            raise NotObservable("instruments measure different observables")
    applicable = bool(is_repeatable(E, f)) and bool(is_q_ideal(E, f)) and bool(is_c_ideal(E, g))
    same = all(E.equal(a, b) for a, b in zip(f.components, g.components))
    return UniquenessCheck(applicable, same)


# -- Boolean idempotents ---------------------------------------------------

def boolean_complement(E: Effectus, f):
    """The ``g`` with ``1g = (1f)⊥``, ``f ⊕ g = id`` and ``f∘g = 0 = g∘f``, or None."""
    A = f.dom
    try:
        g = E.difference(E.identity(A), f)
    except NotBelow:
        return None
    zero = E.zero(A, A)
    ok = (E.equal(truth_of(E, g), E.ortho(truth_of(E, f)))
          and E.equal(E.compose(f, g), zero) and E.equal(E.compose(g, f), zero))
    return g if ok else None


def is_boolean(E: Effectus, f) -> bool:
    return f.dom == f.cod and boolean_complement(E, f) is not None


def boolean_meet(E: Effectus, f, g):
    return E.compose(f, g)


def boolean_join(E: Effectus, f, g):
    return E.sum(f, E.compose(boolean_complement(E, f), g))


def is_boolean_instrument(E: Effectus, f: Test) -> bool:
    return bool(is_repeatable(E, f)) and bool(is_side_effect_free(E, f))


def central_multiplication(E, A, effects):
    """``a ↦ √p a √p`` for an observable of central effects, or None when an
    effect is not central (a scalar multiple of the identity in each block)."""
    for e in effects:
        for blk in E.effects(e):
            if np.max(np.abs(blk - blk[0, 0] * np.eye(blk.shape[0])), initial=0.0) > 1e-9:
                return None
    return generalized_luders(E, [str(i) for i in range(len(effects))], effects)


def law_suite_boolean_idempotents(E: Effectus, A) -> Report:
    """Boolean-algebra laws on all Boolean endomorphisms of an enumerable object,
    and the isomorphism with Boolean predicates via ``f ↦ 1f``."""
    endos = E.enumerate_homset(A, A)
    report = Report(f"boolean-idempotents/{E.name}/{A}")
    bidem = [f for f in endos if is_boolean(E, f)]
    comp = {f: boolean_complement(E, f) for f in bidem}
    meet = lambda a, b: boolean_meet(E, a, b)
    join = lambda a, b: boolean_join(E, a, b)
    one, zero = E.identity(A), E.zero(A, A)
    law = report.law("closure", "meets, joins and complements stay Boolean", EXHAUSTIVE)
    for f in bidem:
        law.check(is_boolean(E, comp[f]), f)
        for g in bidem:
            law.check(is_boolean(E, meet(f, g)) and join(f, g) is not None
                      and is_boolean(E, join(f, g)), (f, g))
    laws = {
        "commutative": lambda f, g, h: E.equal(meet(f, g), meet(g, f))
        and E.equal(join(f, g), join(g, f)),
        "associative": lambda f, g, h: E.equal(meet(meet(f, g), h), meet(f, meet(g, h)))
        and E.equal(join(join(f, g), h), join(f, join(g, h))),
        "absorption": lambda f, g, h: E.equal(join(f, meet(f, g)), f)
        and E.equal(meet(f, join(f, g)), f),
        "distributive": lambda f, g, h: E.equal(meet(f, join(g, h)),
                                                join(meet(f, g), meet(f, h))),
        "complements": lambda f, g, h: E.equal(join(f, comp[f]), one)
        and E.equal(meet(f, comp[f]), zero),
    }
    for name, rule in laws.items():
        law = report.law(name, f"{name} laws of a Boolean algebra", EXHAUSTIVE)
        for f, g, h in product(bidem, repeat=3):
            law.check(rule(f, g, h), (f, g, h))
    law = report.law("isomorphism with Boolean predicates",
                     "f ↦ 1f is a bijection onto Boolean predicates preserving ⊥ and meets",
                     EXHAUSTIVE)
    bpreds = list(E.sharp_predicates(A))
    images = [truth_of(E, f) for f in bidem]
    law.check(len(set(images)) == len(bidem) == len(bpreds)
              and all(any(E.equal(i, p) for i in images) for p in bpreds),
              (len(bidem), len(bpreds)))
    for f in bidem:
        law.check(E.equal(truth_of(E, comp[f]), E.ortho(truth_of(E, f))), f)
    return report


# -- worked quantum examples --------------------------------------------------

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
P0 = np.diag([1.0, 0.0]).astype(complex)
P1 = np.diag([0.0, 1.0]).astype(complex)


def disturbed_instrument(Q) -> Test:
    """On ``M_2``: ``g_0(b) = P_0 H b H P_0`` and ``g_1(b) = P_1 b P_1``.
    It measures ``(P_0, P_1)`` but the Hadamard spoils repeatability."""
    from .instances.quantum import M
    A = M(2)
    g0 = Q.from_kraus(A, A, {(0, 0): [P0 @ HADAMARD]})
    g1 = Q.from_kraus(A, A, {(0, 0): [P1]})
    return make_test(Q, ["0", "1"], [g0, g1])


def three_level_instrument(Q) -> Test:
    """On ``M_3``: ``f_j(b) = ⟨j|b|j⟩ A_j`` with ``A_0 = |0⟩⟨0| + ½|2⟩⟨2|`` and
    ``A_1 = |1⟩⟨1| + ½|2⟩⟨2|``."""
    from .instances.quantum import M
    A = M(3)
    effects = [np.diag([1, 0, 0.5]).astype(complex), np.diag([0, 1, 0.5]).astype(complex)]
    comps = [Q.from_map(A, A, lambda l, k, x, j=j: x[j, j] * effects[j]) for j in range(2)]
    return make_test(Q, ["0", "1"], comps)


# -- seeded sharp observables ---------------------------------------------------

def random_sharp_observable(E: Effectus, rng, A, outcomes: int = 2) -> Test:
    """A sharp observable built by distributing a frame of minimal sharp
    predicates (points, or rank-one projections in a random basis) over the
    outcome labels."""
    labels = [str(i) for i in range(outcomes)]
    if E.name == "quantum":
        from .instances import linalg as la
        groups = [[np.zeros((n, n), dtype=complex) for n in A.blocks] for _ in labels]
        for b, n in enumerate(A.blocks):
            u = la.random_unitary(rng, n)
            for c in range(n):
                x = int(rng.integers(outcomes))
                groups[x][b] = groups[x][b] + np.outer(u[:, c], u[:, c].conj())
        preds = [E.predicate(A, g) for g in groups]
        # the last effect is taken as the exact complement of the rest
        rest = big_sum(E, preds[:-1], A, E.unit)
        preds[-1] = E.ortho(rest)
        return observable(E, labels, preds)
    assign = [int(rng.integers(outcomes)) for _ in range(A.size)]
    if E.name == "pfn":
        from .instances.pfn import predicate
        preds = [predicate(A.size, {x for x in range(A.size) if assign[x] == i})
                 for i in range(outcomes)]
    else:
        from .instances.prob import predicate
        preds = [predicate([1 if assign[x] == i else 0 for x in range(A.size)])
                 for i in range(outcomes)]
    return observable(E, labels, preds)


def direct_luders(E: Effectus, obs: Test) -> Test:
    """Second construction of the Lüders instrument, independent of the
    comprehension/quotient splitting."""
    if E.name == "quantum":
        comps = [E.assert_direct(obs.dom, E.effects(p)) for p in obs.components]
        return make_test(E, obs.labels, comps)
    # outside the quantum case, a ↦ p·a is diagonal: keep x exactly when p(x) = 1
    comps = []
    for p in obs.components:
        d = E.identity(obs.dom)
        comps.append(_restrict_diagonal(E, d, p))
    return make_test(E, obs.labels, comps)


def _restrict_diagonal(E, d, p):
    if E.name == "pfn":
        from .instances.pfn import morphism
        return morphism(d.dom.size, d.cod.size,
                        [x if p.table[x] is not None else None for x in range(d.dom.size)])
    from .instances.prob import morphism
    n = d.dom.size
    return morphism(n, n, [[p.kernel[x][0] if x == y else 0 for y in range(n)]
                           for x in range(n)])


def disturb(E: Effectus, rng, f: Test) -> Test:
    """Same observable, followed by a random total channel."""
    comps = [E.compose(E.random_morphism(rng, f.cod, f.cod, total=True), c)
             for c in f.components]
    return make_test(E, f.labels, comps)


def law_suite_luders(E: Effectus, objects=None, count: int = 20, seed: int = 0) -> Report:
    """Lüders instruments of seeded sharp observables are repeatable, Q-ideal
    and C-ideal, and every instrument for the same observable with those flags
    equals them."""
    rng = np.random.default_rng(seed)
    objects = objects or [o for o in E.sample_objects() if _size(o) >= 2]
    report = Report(f"luders/{E.name}")
    flags = report.law("Lüders flags", "Lüders instruments are repeatable, Q-ideal and C-ideal",
                       SAMPLED)
    twice = report.law("two constructions agree", "splitting route vs direct formula", SAMPLED)
    unique = report.law("uniqueness", "CQ-ideal repeatable instruments are unique", SAMPLED)
    assertion = report.law("assert laws", "1∘asrt_p = p, im(asrt_p) = p, p∘asrt_p = p", SAMPLED)
    first = report.law("first kind", "first kind iff repeatable for sharp observables",
                       SAMPLED)
    for i in range(count):
        A = objects[i % len(objects)]
        obs = random_sharp_observable(E, rng, A, 2 + i % 2)
        f = luders_instrument(E, obs.labels, obs.components)
        fl = ideality_flags(E, f)
        flags.check(fl.repeatable and fl.q_ideal and fl.c_ideal and fl.consistent(), (A, i))
        g = direct_luders(E, obs)
        twice.check(all(E.equal(a, b) for a, b in zip(f.components, g.components)), (A, i))
        for cand in (g, disturb(E, rng, f), generalized_luders(E, obs.labels, obs.components)):
            cf = ideality_flags(E, cand)
            res = check_uniqueness_cq(E, f, cand)
            if cf.repeatable and cf.q_ideal and cf.c_ideal:
                unique.check(res.equal, (A, i))
            elif res.applicable:
                unique.check(res.equal, (A, i, "C-ideal candidate"))
            else:
                unique.check(not res.equal, (A, i, "flags fail yet equal"))
        for p, a in zip(obs.components, f.components):
            assertion.check(E.equal(truth_of(E, a), p) and E.equal(E.image(a), p)
                            and E.equal(E.compose(p, a), p), (A, i))
        states = spanning_states(E, A)
        dist = disturb(E, rng, f)
        first.check(is_first_kind(E, f, states) == bool(is_repeatable(E, f))
                    and is_first_kind(E, dist, states) == bool(is_repeatable(E, dist)), (A, i))
    return report


def spanning_states(E: Effectus, A) -> list:
    """States whose span contains every state; outcome probabilities are
    linear in the state, so equalities checked here hold for all states."""
    if E.name == "quantum":
        from .instances.quantum import spanning_vectors
        out = []
        for b, n in enumerate(A.blocks):
            for v in spanning_vectors(n):
                dens = [np.zeros((m, m), dtype=complex) for m in A.blocks]
                dens[b] = np.outer(v, v.conj())
                out.append(E.state(A, dens))
        return out
    return [E.coprojection([E.unit] * A.size, x) for x in range(A.size)]


def _size(A):
    return A.size if hasattr(A, "size") else sum(A.blocks)


def central_projection_family(Q):
    """Projections on ``M_2 ⊕ M_1``: every pair of a 2×2 projection from a fixed
    list with a 1×1 projection."""
    from .instances.quantum import M
    plus = np.full((2, 2), 0.5, dtype=complex)
    minus = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)
    tilted = np.array([[np.cos(0.3) ** 2, np.cos(0.3) * np.sin(0.3) * 1j],
                       [-np.cos(0.3) * np.sin(0.3) * 1j, np.sin(0.3) ** 2]], dtype=complex)
    big = [np.zeros((2, 2), dtype=complex), np.eye(2, dtype=complex), P0, P1, plus, minus,
           tilted]
    small = [np.zeros((1, 1), dtype=complex), np.eye(1, dtype=complex)]
    A = M(2, 1)
    return A, [(b, s) for b in big for s in small]


def is_central(blocks, eps: float = 1e-9) -> bool:
    return all(np.max(np.abs(b - b[0, 0] * np.eye(b.shape[0])), initial=0.0) <= eps
               for b in blocks)


def law_suite_quantum_boolean(Q, seed: int = 0) -> Report:
    """Booleanness of ``a ↦ pap`` coincides with centrality of ``p``, and an
    observable is measurable without side effects iff its effects are central."""
    rng = np.random.default_rng(seed)
    report = Report("boolean/quantum")
    A, family = central_projection_family(Q)
    law = report.law("Boolean iff central", "Boolean idempotents are central projections",
                     EXHAUSTIVE)
    inst = report.law("Boolean instrument iff central",
                      "asrt_p, asrt_p⊥ is repeatable and side-effect-free iff p is central",
                      EXHAUSTIVE)
    for blocks in family:
        p = Q.predicate(A, blocks)
        f = assert_map(Q, p)
        central = is_central(blocks)
        law.check(is_boolean(Q, f) == central, blocks)
        pair = luders_instrument(Q, ["0", "1"], [p, Q.ortho(p)])
        inst.check(is_boolean_instrument(Q, pair) == central, blocks)
    sef = report.law("central effects are side-effect-free measurable",
                     "f_x(a) = p_x·a for central effects", SAMPLED)
    for _ in range(10):
        lam, mu = rng.uniform(0, 1, size=2)
        e = [lam * np.eye(2, dtype=complex), np.array([[mu]], dtype=complex)]
        p = Q.predicate(A, e)
        f = central_multiplication(Q, A, [p, Q.ortho(p)])
        fl = ideality_flags(Q, f) if f is not None else None
        sef.check(fl is not None and fl.side_effect_free and fl.c_ideal and fl.q_ideal,
                  (lam, mu))
    search = report.law("non-central effects have side effects",
                        "no side-effect-free instrument for a non-central effect", SAMPLED)
    from .instances import linalg as la
    from .instances.quantum import M
    B = M(2)
    for _ in range(10):
        e = la.random_effect(rng, 2, 0.05, 0.95)
        if is_central([e], 1e-6):
            continue
        p = Q.predicate(B, [e])
        obs = [p, Q.ortho(p)]
        search.check(central_multiplication(Q, B, obs) is None, "candidate accepted")
        base = generalized_luders(Q, ["0", "1"], obs)
        cands = [base] + [disturb(Q, rng, base) for _ in range(5)]
        search.check(not any(is_side_effect_free(Q, c) for c in cands), e)
    return report


def law_suite_measurement(E: Effectus, seed: int = 0, count: int = 20) -> Report:
    rng = np.random.default_rng(seed)
    report = Report(f"measurement/{E.name}")
    objects = [o for o in E.sample_objects() if _size(o) >= 2]
    sums = report.law("observables sum to truth", "components of a test sum to truth", SAMPLED)
    grain = report.law("coarse-graining", "coarse-graining along a surjection gives a test",
                       SAMPLED)
    nosig = report.law("no signalling", "marginal over the last axis equals the shorter "
                       "experiment", SAMPLED)
    sefi = report.law("side-effect-free is CQ-ideal", "side-effect-free instruments are "
                      "C- and Q-ideal", SAMPLED)
    idem = report.law("idempotent implies repeatable", "idempotent instruments are repeatable",
                      SAMPLED)
    for i in range(count):
        A = objects[i % len(objects)]
        obs = random_sharp_observable(E, rng, A, 3)
        sums.check(big_sum(E, list(obs.components)) is not None, (A, i))
        cg = coarse_grain(E, obs, {"0": "a", "1": "b", "2": "a"})
        grain.check(len(cg.labels) == 2, (A, i))
        f = luders_instrument(E, obs.labels, obs.components)
        g = disturb(E, rng, f)
        prep = state_test(E, E.random_state(rng, A))
        long = run_experiment(E, prep, [f, g, obs])
        short = run_experiment(E, prep, [f, g])
        m = long.marginal([0, 1])
        nosig.check(all(_near(E, m[o], v) for o, v in short.entries.items()), (A, i))
        ident = identity_instrument(E, A)
        fl = ideality_flags(E, ident)
        sefi.check(fl.side_effect_free and fl.c_ideal and fl.q_ideal, (A, i))
        for t in (f, g):
            if is_idempotent(E, t):
                idem.check(bool(is_repeatable(E, t)), (A, i))
    raw = report.law("raw ideality on samples", "decided ideality implies the raw "
                     "conditions on sampled states and predicates", SAMPLED)
    for i in range(count // 2):
        A = objects[i % len(objects)]
        obs = random_sharp_observable(E, rng, A, 2)
        for t in (luders_instrument(E, obs.labels, obs.components),
                  disturb(E, rng, luders_instrument(E, obs.labels, obs.components))):
            fl = ideality_flags(E, t)
            # states supported on a single outcome make the raw condition bite
            states = [E.random_state(rng, A) for _ in range(2)]
            states += [E.compose(pi_c, E.random_state(rng, pi_c.dom))
                       for pi_c in [E.comprehension(A, p).pi for p in obs.components]
                       if _size(pi_c.dom) > 0]
            preds = [E.random_predicate(rng, A) for _ in range(2)]
            preds += [E.compose(E.random_predicate(rng, q.obj), q.xi)
                      for q in [E.quotient(A, E.ortho(p)) for p in obs.components]
                      if _size(q.obj) > 0]
            if fl.c_ideal:
                raw.check(c_ideal_on_states(E, t, states), (A, i, "C"))
            if fl.q_ideal:
                raw.check(q_ideal_on_predicates(E, t, preds), (A, i, "Q"))
    return report


def _near(E, a, b):
    return a == b if E.exact else abs(a - b) <= 100 * getattr(E, "eps", 1e-9)
