"""Finite-dimensional quantum effectus.

Objects are direct sums ``⊕_k M_{n_k}``.  A morphism ``A -> B`` (effectus
direction) is a subunital completely positive map ``B -> A`` in the
Heisenberg picture, kept as one Choi matrix per block pair: ``choi[l][k]``
encodes the component ``M_{n_k} -> M_{m_l}`` from block ``k`` of ``B`` to
block ``l`` of ``A``.  Predicates ``A -> I`` therefore carry effects in
``choi[l][0]``; states ``I -> A`` carry transposed densities in
``choi[0][k]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from ..core import ComprehensionWitness, Effectus, QuotientWitness
from ..errors import NotBelow, NotPsd, ObjectMismatch, ShapeMismatch, TypeMismatch
from . import linalg as la
from .linalg import EPS, CpWitness


@dataclass(frozen=True)
class QObject:
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(int(n) for n in self.blocks))
        if any(n < 1 for n in self.blocks):
            raise ValueError("block sizes must be positive")

    def __repr__(self):
        if not self.blocks:
            return "0"
        return "⊕".join(f"M{n}" for n in self.blocks)

    def to_json(self) -> dict:
        return {"blocks": list(self.blocks)}


def M(*blocks: int) -> QObject:
    return QObject(tuple(blocks))


@dataclass(frozen=True, eq=False)
class QMorphism:
    dom: QObject
    cod: QObject
    choi: tuple = field(repr=False)

    def __post_init__(self):
        if len(self.choi) != len(self.dom.blocks):
            raise ShapeMismatch("one Choi row per domain block")
        for l, m in enumerate(self.dom.blocks):
            if len(self.choi[l]) != len(self.cod.blocks):
                raise ShapeMismatch("one Choi column per codomain block")
            for k, n in enumerate(self.cod.blocks):
                if self.choi[l][k].shape != (n * m, n * m):
                    raise ShapeMismatch(f"Choi block ({l},{k}) has shape "
                                        f"{self.choi[l][k].shape}, expected {(n * m,) * 2}")

    def apply(self, b: Sequence[np.ndarray]) -> list:
        """Heisenberg action on an element of the codomain algebra."""
        out = []
        for l, m in enumerate(self.dom.blocks):
            acc = np.zeros((m, m), dtype=complex)
            for k, n in enumerate(self.cod.blocks):
                acc = acc + la.apply_choi(self.choi[l][k], np.asarray(b[k], dtype=complex), m)
            out.append(acc)
        return out

    def unit_image(self) -> list:
        return self.apply([np.eye(n) for n in self.cod.blocks])

    def to_json(self) -> dict:
        return {"dom": self.dom.to_json(), "cod": self.cod.to_json(),
                "choi": {f"({l},{k})": matrix_to_json(self.choi[l][k])
                         for l in range(len(self.dom.blocks))
                         for k in range(len(self.cod.blocks))}}

    def __repr__(self):
        return f"CP({self.dom}->{self.cod})"


def matrix_to_json(a: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(a)]


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def from_json(doc: dict) -> QMorphism:
    A, B = QObject(tuple(doc["dom"]["blocks"])), QObject(tuple(doc["cod"]["blocks"]))
    choi = [[np.zeros((n * m, n * m), dtype=complex) for n in B.blocks] for m in A.blocks]
    for key, rows in doc["choi"].items():
        l, k = (int(t) for t in key.strip("() ").split(","))
        choi[l][k] = matrix_from_json(rows)
    return QMorphism(A, B, tuple(tuple(r) for r in choi))


def _id_choi(n: int) -> np.ndarray:
    v = np.eye(n, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def _zeros(A: QObject, B: QObject) -> list:
    return [[np.zeros((n * m, n * m), dtype=complex) for n in B.blocks] for m in A.blocks]


def _freeze(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def is_cp(f: QMorphism, eps: float = EPS) -> CpWitness:
    """Complete positivity via the minimum Choi eigenvalue over all blocks."""
    worst, where = np.inf, None
    for l in range(len(f.dom.blocks)):
        for k in range(len(f.cod.blocks)):
            e = la.min_eig(f.choi[l][k]) if f.choi[l][k].size else 0.0
            if e < worst:
                worst, where = e, (l, k)
    if where is None:
        worst = 0.0
    return CpWitness(bool(worst >= -eps), float(worst), where)


class Quantum(Effectus):
    name = "quantum"
    exact = False

    def __init__(self, eps: float = EPS, objects: Sequence[QObject] | None = None):
        self.eps = eps
        self.objects = list(objects) if objects is not None else [M(1), M(2), M(3), M(2, 1)]

    # -- objects -----------------------------------------------------------
    @property
    def unit(self):
        return M(1)

    @property
    def zero_object(self):
        return QObject(())

    def coproduct(self, *objs):
        return QObject(tuple(n for o in objs for n in o.blocks))

    # -- constructors --------------------------------------------------------
    def from_kraus(self, A: QObject, B: QObject, kraus: dict) -> QMorphism:
        """``kraus[(l, k)]`` lists ``m_l × n_k`` operators of the component
        from block ``k`` of ``B`` to block ``l`` of ``A``."""
        rows = _zeros(A, B)
        for (l, k), ks in kraus.items():
            rows[l][k] = la.kraus_to_choi(ks, B.blocks[k], A.blocks[l])
        return QMorphism(A, B, _freeze(rows))

    def from_map(self, A: QObject, B: QObject, phi) -> QMorphism:
        """Choi data of an arbitrary linear Heisenberg map given blockwise:
        ``phi(l, k, x)`` maps ``x ∈ M_{n_k}`` into ``M_{m_l}``."""
        rows = [[la.choi_of_map(lambda x, l=l, k=k: phi(l, k, x), n, m)
                 for k, n in enumerate(B.blocks)] for l, m in enumerate(A.blocks)]
        return QMorphism(A, B, _freeze(rows))

    def predicate(self, A: QObject, effects: Sequence[np.ndarray]) -> QMorphism:
        rows = [[np.asarray(e, dtype=complex).reshape(m, m)] for e, m in zip(effects, A.blocks)]
        return QMorphism(A, self.unit, _freeze(rows))

    def state(self, A: QObject, densities: Sequence[np.ndarray]) -> QMorphism:
        row = [np.asarray(r, dtype=complex).reshape(n, n).T for r, n in zip(densities, A.blocks)]
        return QMorphism(self.unit, A, (tuple(row),))

    def effects(self, p: QMorphism) -> list:
        return [p.choi[l][0] for l in range(len(p.dom.blocks))]

    def densities(self, omega: QMorphism) -> list:
        return [c.T for c in omega.choi[0]]

    def channel(self, A: QObject, kraus_per_block: Sequence[Sequence[np.ndarray]]):
        """Block-diagonal endomorphism ``a_l ↦ Σ K a_l K*``."""
        return self.from_kraus(A, A, {(l, l): ks for l, ks in enumerate(kraus_per_block)})

    def assert_direct(self, A: QObject, effects: Sequence[np.ndarray]) -> QMorphism:
        """``a ↦ √p a √p`` built directly from the Kraus operator ``√p``."""
        return self.channel(A, [[la.sqrt_psd(e, self.eps)] for e in effects])

    # -- structure ---------------------------------------------------------
    def identity(self, A):
        rows = _zeros(A, A)
        for l, m in enumerate(A.blocks):
            rows[l][l] = _id_choi(m)
        return QMorphism(A, A, _freeze(rows))

    def zero(self, A, B):
        return QMorphism(A, B, _freeze(_zeros(A, B)))

    def compose(self, g, f):
        if f.cod != g.dom:
            raise ObjectMismatch(f"cannot compose {g} after {f}")
        A, B, C = f.dom, f.cod, g.cod
        rows = []
        for l, m in enumerate(A.blocks):
            row = []
            for j, p in enumerate(C.blocks):
                s = np.zeros((m * m, p * p), dtype=complex)
                for k, n in enumerate(B.blocks):
                    s = s + la.choi_to_super(f.choi[l][k], n, m) @ la.choi_to_super(
                        g.choi[k][j], p, n)
                row.append(la.super_to_choi(s, p, m))
            rows.append(row)
        return QMorphism(A, C, _freeze(rows))

    def coprojection(self, objs, j):
        total = self.coproduct(*objs)
        off = sum(len(o.blocks) for o in objs[:j])
        rows = _zeros(objs[j], total)
        for l, m in enumerate(objs[j].blocks):
            rows[l][off + l] = _id_choi(m)
        return QMorphism(objs[j], total, _freeze(rows))

    def partial_projection(self, objs, j):
        total = self.coproduct(*objs)
        off = sum(len(o.blocks) for o in objs[:j])
        rows = _zeros(total, objs[j])
        for k, n in enumerate(objs[j].blocks):
            rows[off + k][k] = _id_choi(n)
        return QMorphism(total, objs[j], _freeze(rows))

    def cotuple(self, fs):
        cod = fs[0].cod
        if any(f.cod != cod for f in fs):
            raise ObjectMismatch("cotuple needs a common codomain")
        return QMorphism(self.coproduct(*[f.dom for f in fs]), cod,
                         tuple(r for f in fs for r in f.choi))

    def partial_tuple_raw(self, fs):
        A = fs[0].dom
        rows = [tuple(c for f in fs for c in f.choi[l]) for l in range(len(A.blocks))]
        return QMorphism(A, self.coproduct(*[f.cod for f in fs]), tuple(rows))

    def _combine(self, f, g, op):
        if (f.dom, f.cod) != (g.dom, g.cod):
            raise TypeMismatch("morphisms with different types")
        return QMorphism(f.dom, f.cod, tuple(tuple(op(a, b) for a, b in zip(r, s))
                                             for r, s in zip(f.choi, g.choi)))

    def sum(self, f, g):
        h = self._combine(f, g, np.add)
        if all(la.is_psd(np.eye(u.shape[0]) - u, self.eps) for u in h.unit_image()):
            return h
        return None

    def difference(self, g, f):
        h = self._combine(g, f, np.subtract)
        if not is_cp(h, self.eps * 10).cp:
            raise NotBelow(f"{f} is not below {g} in the CP order")
        return h

    def truth(self, A):
        return QMorphism(A, self.unit, tuple((np.eye(m, dtype=complex),) for m in A.blocks))

    def equal(self, f, g):
        if (f.dom, f.cod) != (g.dom, g.cod):
            return False
        return all(np.max(np.abs(a - b), initial=0.0) <= 100 * self.eps
                   for r, s in zip(f.choi, g.choi) for a, b in zip(r, s))

    def leq(self, f, g):
        """The strong order: ``g - f`` is completely positive."""
        return is_cp(self._combine(g, f, np.subtract), 10 * self.eps).cp

    def leq_pointwise(self, f, g):
        """``f(b) ≤ g(b)`` for positive ``b``; checked on the PSD cone's
        extreme rays of a fixed spanning family of pure states."""
        for k, n in enumerate(f.cod.blocks):
            for v in spanning_vectors(n):
                b = [np.zeros((d, d), dtype=complex) for d in f.cod.blocks]
                b[k] = np.outer(v, v.conj())
                if any(not la.is_psd(y - x, 10 * self.eps)
                       for x, y in zip(f.apply(b), g.apply(b))):
                    return False
        return True

    def scalar_value(self, s):
        return float(s.choi[0][0][0, 0].real)

    def scalar(self, v):
        return QMorphism(self.unit, self.unit, ((np.array([[complex(v)]]),),))

    def scale(self, r, f):
        return QMorphism(f.dom, f.cod, tuple(tuple(r * c for c in row) for row in f.choi))

    # -- logic -------------------------------------------------------------
    def output_density(self, f) -> list:
        """``ρ_f`` on the codomain with ``tr(ρ_f b) = tr f(b)``."""
        out = []
        for k, n in enumerate(f.cod.blocks):
            t = np.zeros((n, n), dtype=complex)
            for l, m in enumerate(f.dom.blocks):
                t = t + la.partial_trace_output(f.choi[l][k], n, m)
            out.append(t.T)
        return out

    def image(self, f):
        return self.predicate(f.cod, [la.support_projection(r, self.eps)
                                      for r in self.output_density(f)])

    def corner_compress(self, A: QObject, es: Sequence[np.ndarray]):
        """Corner object of the projections ``es`` and its isometries
        (zero-rank blocks dropped)."""
        vs = [la.corner_isometry(e, self.eps) for e in es]
        keep = [l for l, v in enumerate(vs) if v.shape[1] > 0]
        return QObject(tuple(vs[l].shape[1] for l in keep)), vs, keep

    def comprehension(self, A, p):
        floors = [la.one_projection(e, self.eps) for e in self.effects(p)]
        S, vs, keep = self.corner_compress(A, floors)
        pi = self.from_kraus(S, A, {(i, l): [vs[l].conj().T] for i, l in enumerate(keep)})
        zeta = self.from_kraus(A, S, {(l, i): [vs[l]] for i, l in enumerate(keep)})

        def mediate(h):
            hb = self.compose(zeta, h)
            if not self.equal(self.compose(pi, hb), h):
                raise NotBelow("map does not land inside the comprehension")
            return hb
        return ComprehensionWitness(S, pi, mediate, tuple(vs[l] for l in keep))

    def quotient(self, A, p):
        perp = [np.eye(m) - e for e, m in zip(self.effects(p), A.blocks)]
        supports = [la.support_projection(q, self.eps) for q in perp]
        Q, vs, keep = self.corner_compress(A, supports)
        roots = [la.sqrt_psd(q, self.eps) for q in perp]
        xi = self.from_kraus(A, Q, {(l, i): [roots[l] @ vs[l]] for i, l in enumerate(keep)})
        embed = self.from_kraus(Q, A, {(i, l): [vs[l].conj().T] for i, l in enumerate(keep)})
        eta = self.from_kraus(Q, A, {(i, l): [vs[l].conj().T @ la.pinv_sqrt_psd(perp[l], self.eps)]
                                     for i, l in enumerate(keep)})

        def mediate(f):
            fb = self.compose(f, eta)
            if not self.equal(self.compose(fb, xi), f):
                raise NotBelow("predicate is not below the kernel")
            return fb
        return QuotientWitness(Q, xi, mediate, embed)

    def sharp_predicates(self, A, rng=None, extra: int = 4) -> Iterator:
        """Coordinate projections in every block, then ``extra`` random ones."""
        per_block = [[np.diag(bits).astype(complex) for bits in product((0.0, 1.0), repeat=m)]
                     for m in A.blocks]
        for combo in product(*per_block):
            yield self.predicate(A, combo)
        if rng is not None:
            for _ in range(extra):
                yield self.predicate(A, [la.random_projection(rng, m, int(rng.integers(m + 1)))
                                         for m in A.blocks])

    def validity_formula(self, omega, p):
        return float(sum(np.trace(r @ e).real for r, e in
                         zip(self.densities(omega), self.effects(p))))

    def normalize_formula(self, omega):
        rhos = self.densities(omega)
        t = sum(np.trace(r).real for r in rhos)
        return self.state(omega.cod, [r / t for r in rhos])

    # -- sampling ----------------------------------------------------------
    def random_morphism(self, rng, A, B, total=False):
        if total and not B.blocks and A.blocks:
            raise ValueError("no total map into the zero algebra")
        kraus: dict = {}
        for l, m in enumerate(A.blocks):
            for k, n in enumerate(B.blocks):
                if not total and rng.random() < 0.2:
                    continue
                r = m if total else int(rng.integers(1, max(2, min(m * n, 3)) + 1))
                kraus[l, k] = [rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
                               for _ in range(r)]
        for l, m in enumerate(A.blocks):
            u = sum((K @ K.conj().T for (ll, _), ks in kraus.items() if ll == l for K in ks),
                    np.zeros((m, m), dtype=complex))
            if not np.any(u):
                continue
            if total:
                fix = la.pinv_sqrt_psd(u, 1e-12)
            else:
                top = float(np.linalg.eigvalsh(la.herm(u))[-1])
                fix = np.eye(m) / np.sqrt(top * rng.uniform(1.0, 1.6))
            for key in [kk for kk in kraus if kk[0] == l]:
                kraus[key] = [fix @ K for K in kraus[key]]
        return self.from_kraus(A, B, kraus)

    def random_state(self, rng, A, total=True):
        rhos = [la.random_density(rng, n, int(rng.integers(1, n + 1))) for n in A.blocks]
        w = rng.dirichlet(np.ones(len(A.blocks))) if A.blocks else []
        scale = 1.0 if total else rng.uniform(0.05, 1.0)
        return self.state(A, [scale * wi * r for wi, r in zip(w, rhos)])

    def random_effect_predicate(self, rng, A):
        return self.predicate(A, [la.random_effect(rng, m) for m in A.blocks])

    def sample_objects(self):
        return list(self.objects)


def spanning_vectors(n: int) -> list:
    """``|i⟩``, ``(|i⟩+|j⟩)/√2`` and ``(|i⟩+i|j⟩)/√2``: their projectors span M_n."""
    out = [np.eye(n, dtype=complex)[i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for ph in (1, 1j):
                v = np.zeros(n, dtype=complex)
                v[i], v[j] = 1 / np.sqrt(2), ph / np.sqrt(2)
                out.append(v)
    return out
