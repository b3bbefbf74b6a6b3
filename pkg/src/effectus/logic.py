"""Predicate transformers, kernels, images, comprehension, quotients and
sharp predicates, written once against the effectus interface."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import (ComprehensionWitness, Effectus, QuotientWitness, _pairs, predicate_transform,
                   truth_of)
from .errors import NotSharp
from .report import EXHAUSTIVE, SAMPLED, Report


def f_box(E: Effectus, f, q):
    """``f□(q) = f*(q⊥)⊥``: q holds whenever f terminates."""
    return E.ortho(predicate_transform(E, f, E.ortho(q)))


def f_box_sum(E: Effectus, f, q):
    """The same predicate as ``(1f)⊥ ⊕ f*(q)``."""
    return E.sum(E.ortho(truth_of(E, f)), predicate_transform(E, f, q))


def kernel(E: Effectus, f):
    return f_box(E, f, E.zero(f.cod, E.unit))


def image(E: Effectus, f):
    return E.image(f)


def comprehension(E: Effectus, A, p) -> ComprehensionWitness:
    return E.comprehension(A, p)


def quotient(E: Effectus, A, p) -> QuotientWitness:
    return E.quotient(A, p)


def floor(E: Effectus, p):
    """Greatest sharp predicate below ``p``: the image of its comprehension."""
    return E.image(E.comprehension(p.dom, p).pi)


def ceiling(E: Effectus, p):
    return E.ortho(floor(E, E.ortho(p)))


def is_sharp(E: Effectus, p) -> bool:
    return E.equal(floor(E, p), p)


def _require_sharp(E: Effectus, *ps):
    for p in ps:
        if not is_sharp(E, p):
            raise NotSharp(f"{p} is not sharp")


def sharp_join(E: Effectus, p, q, check: bool = True):
    if check:
        _require_sharp(E, p, q)
    A = p.dom
    return E.image(E.cotuple([E.comprehension(A, p).pi, E.comprehension(A, q).pi]))


def sharp_meet(E: Effectus, p, q, check: bool = True):
    """Image of ``{{A|p} | π_p*(q)} -> {A|p} -> A``."""
    if check:
        _require_sharp(E, p, q)
    cp = E.comprehension(p.dom, p)
    inner = E.comprehension(cp.obj, E.compose(q, cp.pi))
    return E.image(E.compose(cp.pi, inner.pi))


def sharp_meet_other_way(E: Effectus, p, q, check: bool = True):
    return sharp_meet(E, q, p, check)


def sharp_complement(E: Effectus, p):
    _require_sharp(E, p)
    return E.ortho(p)


@dataclass(frozen=True)
class Factorization:
    xi: object
    theta: object
    pi: object


def factorize(E: Effectus, f) -> Factorization:
    """``f = π_{im f} ∘ θ_f ∘ ξ_{ker f}`` with θ_f from the two universal properties."""
    q = E.quotient(f.dom, kernel(E, f))
    c = E.comprehension(f.cod, E.image(f))
    theta = c.mediate(q.mediate(f))
    return Factorization(q.xi, theta, c.pi)


def reassemble(E: Effectus, fac: Factorization):
    return E.compose(fac.pi, E.compose(fac.theta, fac.xi))


def is_faithful(E: Effectus, f) -> bool:
    return E.equal(E.image(f), E.truth(f.cod))


def is_sharp_morphism(E: Effectus, f, rng=None) -> bool:
    """``f*`` sends every generated sharp predicate to a sharp one."""
    return all(is_sharp(E, predicate_transform(E, f, q))
               for q in E.sharp_predicates(f.cod, rng))


def diamond(E: Effectus, f, p):
    """``f♦(p) = im(f ∘ π_p)``."""
    return E.image(E.compose(f, E.comprehension(f.dom, p).pi))


def box_sharp(E: Effectus, f, q):
    """``f■(q) = ⌊f□(q)⌋``."""
    return floor(E, f_box(E, f, q))


# -- law suite ---------------------------------------------------------------

def _homset(E, rng, A, B, n):
    listed = E.enumerate_homset(A, B)
    if listed is not None:
        return listed
    out = [E.zero(A, B)]
    for i in range(n):
        try:
            out.append(E.random_morphism(rng, A, B, total=(i % 3 == 0)))
        except ValueError:
            out.append(E.random_morphism(rng, A, B))
    return out


def _predicates(E, rng, A, n):
    listed = E.enumerate_homset(A, E.unit)
    if listed is not None:
        return listed
    if E.name == "prob":
        return E.enumerate_grid(A, E.unit, 2)
    out = [E.truth(A), E.zero(A, E.unit)]
    out += [E.random_effect_predicate(rng, A) for _ in range(n)]
    out += list(E.sharp_predicates(A, rng))[-3:]
    return out


def law_suite_logic(E: Effectus, objects=None, samples: int = 12, seed: int = 0) -> Report:
    """Transformer, image, comprehension, quotient, floor and factorization laws."""
    rng = np.random.default_rng(seed)
    report = Report(f"logic/{E.name}")
    objs = objects if objects is not None else [o for o in E.sample_objects()
                                                 if o != E.zero_object][:4]
    regime = EXHAUSTIVE if E.name == "pfn" else SAMPLED
    homs = {(A, B): _homset(E, rng, A, B, samples) for A in objs for B in objs}
    preds = {A: _predicates(E, rng, A, samples) for A in objs}

    law = report.law("box two routes", "f□(q) = f*(q⊥)⊥ = (1f)⊥ ⊕ f*(q)", regime)
    law_one = report.law("box of truth", "f□(1) = 1", regime)
    law_mono = report.law("box monotone", "p ≤ q implies f□(p) ≤ f□(q)", SAMPLED)
    for (A, B), fs in homs.items():
        for f in fs:
            law_one.check(E.equal(f_box(E, f, E.truth(B)), E.truth(A)), f)
            for q in preds[B]:
                s = f_box_sum(E, f, q)
                law.check(s is not None and E.equal(f_box(E, f, q), s), (f, q))
            for p, q in _pairs(preds[B], preds[B], rng, 25):
                if E.leq(p, q):
                    law_mono.check(E.leq(f_box(E, f, p), f_box(E, f, q)), (f, p, q))

    law = report.law("box functorial", "id□ = id and (g∘f)□ = f□∘g□", SAMPLED)
    for A in objs:
        for q in preds[A]:
            law.check(E.equal(f_box(E, E.identity(A), q), q), q)
        for B in objs:
            for C in objs:
                for f, g in _pairs(homs[A, B], homs[B, C], rng, 20):
                    for q in preds[C][:6]:
                        law.check(E.equal(f_box(E, E.compose(g, f), q),
                                          f_box(E, f, f_box(E, g, q))), (f, g, q))

    law = report.law("kernel", "ker(f) = f□(0) = (1f)⊥", regime)
    law_im = report.law("image", "f□(im f) = 1 and im f ≤ q whenever f□(q) = 1", regime)
    law_im_sharp = report.law("image is sharp", "⌊im f⌋ = im f", regime)
    for (A, B), fs in homs.items():
        for f in fs:
            law.check(E.equal(kernel(E, f), E.ortho(truth_of(E, f))), f)
            im = E.image(f)
            ok = E.equal(f_box(E, f, im), E.truth(A))
            for q in preds[B]:
                if E.equal(f_box(E, f, q), E.truth(A)):
                    ok = ok and E.leq(im, q)
            law_im.check(ok, f)
            law_im_sharp.check(is_sharp(E, im), f)

    law_c = report.law("comprehension", "π_p total, 1∘π_p = p∘π_p, and every h with "
                       "h□(p) = 1 factors uniquely through π_p", SAMPLED)
    law_q = report.law("quotient", "ker(ξ_p) = p and every f with p ≤ ker f factors "
                       "uniquely through ξ_p", SAMPLED)
    law_floor = report.law("floor co-closure",
                           "⌊p⌋ ≤ p, ⌊⌊p⌋⌋ = ⌊p⌋, ⌊p⌋ sharp and ⌈p⌉ ≥ p", regime)
    for A in objs:
        for p in preds[A]:
            c = E.comprehension(A, p)
            ok = E.is_total(c.pi) and E.equal(truth_of(E, c.pi), E.compose(p, c.pi))
            for B in objs:
                for _ in range(2):
                    k = E.random_morphism(rng, B, c.obj) if c.obj != E.zero_object \
                        else E.zero(B, c.obj)
                    h = E.compose(c.pi, k)
                    ok = ok and E.equal(f_box(E, h, p), E.truth(B))
                    hb = c.mediate(h)
                    ok = ok and E.equal(E.compose(c.pi, hb), h) and E.equal(hb, k)
            law_c.check(ok, p)
            qw = E.quotient(A, p)
            ok = E.equal(kernel(E, qw.xi), p)
            for B in objs:
                for _ in range(2):
                    k = E.random_morphism(rng, qw.obj, B)
                    f = E.compose(k, qw.xi)
                    fb = qw.mediate(f)
                    ok = ok and E.equal(E.compose(fb, qw.xi), f) and E.equal(fb, k)
            law_q.check(ok, p)
            fl = floor(E, p)
            law_floor.check(E.leq(fl, p) and E.equal(floor(E, fl), fl) and is_sharp(E, fl)
                            and E.leq(p, ceiling(E, p)), p)

    law = report.law("floor monotone", "p ≤ q implies ⌊p⌋ ≤ ⌊q⌋", SAMPLED)
    for A in objs:
        for p, q in _pairs(preds[A], preds[A], rng, 200):
            if E.leq(p, q):
                law.check(E.leq(floor(E, p), floor(E, q)), (p, q))

    law = report.law("Galois pair", "f♦(p) ≤ q iff p ≤ f■(q) on sharp predicates", SAMPLED)
    for (A, B), fs in homs.items():
        sa = list(E.sharp_predicates(A, rng))
        sb = list(E.sharp_predicates(B, rng))
        for f in fs[:samples]:
            for p, q in _pairs(sa, sb, rng, 30):
                law.check(E.leq(diamond(E, f, p), q) == E.leq(p, box_sharp(E, f, q)), (f, p, q))

    law = report.law("factorization", "f = π_{im f} ∘ θ_f ∘ ξ_{ker f}, θ_f total and faithful",
                     regime)
    for (A, B), fs in homs.items():
        for f in fs:
            fac = factorize(E, f)
            law.check(E.equal(reassemble(E, fac), f) and E.is_total(fac.theta)
                      and is_faithful(E, fac.theta), f)
    return report


def law_suite_sharp_lattice(E: Effectus, objects, pairs: int = 0, seed: int = 0) -> Report:
    """Orthomodular-lattice laws on sharp predicates.

    With ``pairs == 0`` the full sharp-predicate generator of each object is
    used (all pairs); otherwise ``pairs`` random projection pairs are drawn per
    object, half of them nested so that the orthomodular law is exercised.
    """
    rng = np.random.default_rng(seed)
    regime = EXHAUSTIVE if pairs == 0 else SAMPLED
    report = Report(f"sharp-lattice/{E.name}")
    laws = {
        "complement involutive": "𝔭⊥⊥ = 𝔭",
        "complement antitone": "𝔭 ≤ 𝔮 implies 𝔮⊥ ≤ 𝔭⊥",
        "excluded middle": "𝔭 ∨ 𝔭⊥ = 1",
        "non-contradiction": "𝔭 ∧ 𝔭⊥ = 0",
        "join is least upper bound": "𝔭, 𝔮 ≤ 𝔭∨𝔮 and sharp",
        "meet is greatest lower bound": "𝔭∧𝔮 ≤ 𝔭, 𝔮, both comprehension chains agree",
        "orthogonal sums are joins": "𝔭 ⊥ 𝔮 implies 𝔭⊕𝔮 = 𝔭∨𝔮",
        "orthomodular law": "𝔭 ≤ 𝔮 implies 𝔭 ∨ (𝔭⊥ ∧ 𝔮) = 𝔮",
        "de Morgan": "(𝔭∧𝔮)⊥ = 𝔭⊥ ∨ 𝔮⊥",
    }
    res = {k: report.law(k, v, regime) for k, v in laws.items()}
    for A in objects:
        if pairs == 0:
            sharp = list(E.sharp_predicates(A))
            gen = product(sharp, sharp)
        else:
            gen = _projection_pairs(E, rng, A, pairs)
        for p, q in gen:
            one, zero = E.truth(A), E.zero(A, E.unit)
            # inputs are sharp by construction, so the per-call check is skipped
            join = lambda a, b: sharp_join(E, a, b, check=False)
            meet = lambda a, b: sharp_meet(E, a, b, check=False)
            pp, qp = E.ortho(p), E.ortho(q)
            res["complement involutive"].check(E.equal(E.ortho(pp), p), p)
            if E.leq(p, q):
                res["complement antitone"].check(E.leq(qp, pp), (p, q))
                res["orthomodular law"].check(E.equal(join(p, meet(pp, q)), q), (p, q))
            res["excluded middle"].check(E.equal(join(p, pp), one), p)
            res["non-contradiction"].check(E.equal(meet(p, pp), zero), p)
            j = join(p, q)
            res["join is least upper bound"].check(
                E.leq(p, j) and E.leq(q, j) and is_sharp(E, j), (p, q))
            m = meet(p, q)
            res["meet is greatest lower bound"].check(
                E.leq(m, p) and E.leq(m, q) and E.equal(m, meet(q, p)), (p, q))
            s = E.sum(p, q)
            if s is not None:
                res["orthogonal sums are joins"].check(E.equal(s, j), (p, q))
            res["de Morgan"].check(E.equal(E.ortho(m), join(pp, qp)), (p, q))
    return report


def _projection_pairs(E, rng, A, n):
    from .instances import linalg as la
    for i in range(n):
        if i % 2 == 0:
            qs = [la.random_projection(rng, m, int(rng.integers(m + 1))) for m in A.blocks]
            ps = []
            for qm, m in zip(qs, A.blocks):
                # nested pair: a random subprojection of q
                w, v = la.eigh(qm)
                basis = v[:, w > 0.5]
                r = basis.shape[1]
                k = int(rng.integers(r + 1))
                if r and k:
                    u = la.random_unitary(rng, r)[:, :k]
                    b = basis @ u
                    ps.append(b @ b.conj().T)
                else:
                    ps.append(np.zeros((m, m), dtype=complex))
        else:
            ps = [la.random_projection(rng, m, int(rng.integers(m + 1))) for m in A.blocks]
            qs = [la.random_projection(rng, m, int(rng.integers(m + 1))) for m in A.blocks]
        yield E.predicate(A, ps), E.predicate(A, qs)


def law_suite_factorization(E: Effectus, n: int = 100, seed: int = 0) -> Report:
    """``f = π_{im f} ∘ θ_f ∘ ξ_{ker f}`` on ``n`` seeded morphisms, with the
    middle map total and faithful."""
    rng = np.random.default_rng(seed)
    objs = [o for o in E.sample_objects() if o != E.zero_object]
    report = Report(f"factorization/{E.name}")
    law = report.law("factorization", "f = π_{im f} ∘ θ_f ∘ ξ_{ker f}", SAMPLED)
    mid = report.law("middle map", "θ_f is total and faithful", SAMPLED)
    for i in range(n):
        A, B = objs[int(rng.integers(len(objs)))], objs[int(rng.integers(len(objs)))]
        f = E.random_morphism(rng, A, B)
        fac = factorize(E, f)
        law.check(E.equal(reassemble(E, fac), f), f)
        mid.check(E.is_total(fac.theta) and is_faithful(E, fac.theta), f)
    return report
