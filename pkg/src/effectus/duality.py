"""State-effect models and convex operational models built from an
instance's states and predicates, with base and order-unit norms and Gudder's
convex metric.

Commutative objects (finite sets) live in ``ℚ^n`` with the sum trace and the
dot pairing; quantum objects live in tuples of Hermitian blocks with the trace
pairing.  Infima are taken in closed form from Jordan decompositions and then
certified by explicit witnesses.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from .core import Effectus, validity
from .report import EXAMPLE, SAMPLED, Report


@dataclass(frozen=True)
class GudderWitness:
    """``(1−r)·x + r·z = (1−r)·y + r·w`` with ``z, w`` states."""

    r: Any
    z: Any
    w: Any
    residual: float


class Com:
    """A finite-dimensional convex operational model for one object."""

    exact: bool
    dim: int

    def pair(self, x, a): ...
    def trace(self, x): ...
    def unit(self): ...
    def state_positive(self, x) -> bool: ...
    def effect_positive(self, a) -> bool: ...
    def base_norm(self, x): ...
    def order_unit_norm(self, a): ...
    def jordan(self, x): ...
    def negativity_witness(self, a): ...
    def add(self, x, y): ...
    def scale(self, r, x): ...
    def zero(self): ...
    def is_zero(self, x) -> bool: ...
    def spanning_states(self) -> list: ...
    def spanning_effects(self) -> list: ...
    def state_of(self, omega): ...
    def effect_of(self, p): ...

    def sub(self, x, y):
        return self.add(x, self.scale(-1, y))


class CommutativeCom(Com):
    """Functions on an ``n``-point set, exact over ``Fraction``."""

    exact = True

    def __init__(self, n: int, kind: str):
        self.dim = n
        self.kind = kind

    def _vec(self, xs):
        return tuple(Fraction(v) for v in xs)

    def pair(self, x, a):
        return sum((u * v for u, v in zip(x, a)), Fraction(0))

    def trace(self, x):
        return sum(x, Fraction(0))

    def unit(self):
        return self._vec([1] * self.dim)

    def state_positive(self, x):
        return all(v >= 0 for v in x)

    effect_positive = state_positive

    def base_norm(self, x):
        return sum((abs(v) for v in x), Fraction(0))

    def order_unit_norm(self, a):
        return max((abs(v) for v in a), default=Fraction(0))

    def jordan(self, x):
        return (self._vec([max(v, 0) for v in x]), self._vec([max(-v, 0) for v in x]))

    def negativity_witness(self, a):
        """A point state on which ``a`` is negative, or None."""
        for i, v in enumerate(a):
            if v < 0:
                return self._point(i)
        return None

    def _point(self, i):
        return self._vec([1 if j == i else 0 for j in range(self.dim)])

    def add(self, x, y):
        return tuple(u + v for u, v in zip(x, y))

    def scale(self, r, x):
        return tuple(Fraction(r) * v for v in x)

    def zero(self):
        return self._vec([0] * self.dim)

    def is_zero(self, x):
        return all(v == 0 for v in x)

    def spanning_states(self):
        return [self._point(i) for i in range(self.dim)]

    def spanning_effects(self):
        return [self._point(i) for i in range(self.dim)] + [self.unit()]

    def state_of(self, omega):
        if self.kind == "pfn":
            v = omega.table[0]
            return self._vec([1 if j == v else 0 for j in range(self.dim)])
        return self._vec(omega.kernel[0])

    def effect_of(self, p):
        if self.kind == "pfn":
            return self._vec([0 if v is None else 1 for v in p.table])
        return self._vec([r[0] for r in p.kernel])

    def random_vector(self, rng):
        return self._vec([Fraction(int(v), 8) for v in rng.integers(-8, 9, size=self.dim)])

    def close(self, a, b):
        return a == b


def gell_mann(n: int) -> list:
    """Traceless Hermitian basis of ``M_n``: symmetric, antisymmetric, diagonal."""
    out = []
    for j in range(n):
        for k in range(j + 1, n):
            s = np.zeros((n, n), dtype=complex)
            s[j, k] = s[k, j] = 1
            a = np.zeros((n, n), dtype=complex)
            a[j, k], a[k, j] = -1j, 1j
            out += [s, a]
    for l in range(1, n):
        d = np.zeros(n)
        d[:l], d[l] = 1, -l
        out.append(np.diag(d * np.sqrt(2 / (l * (l + 1)))).astype(complex))
    return out


class MatrixCom(Com):
    """Hermitian parts of a finite direct sum of matrix algebras."""

    exact = False

    def __init__(self, blocks: Sequence[int], eps: float = 1e-9):
        self.blocks = tuple(blocks)
        self.dim = sum(n * n for n in self.blocks)
        self.eps = eps

    def pair(self, x, a):
        return float(sum(np.trace(u @ v).real for u, v in zip(x, a)))

    def trace(self, x):
        return float(sum(np.trace(u).real for u in x))

    def unit(self):
        return tuple(np.eye(n, dtype=complex) for n in self.blocks)

    def _eigs(self, x):
        return [np.linalg.eigvalsh((u + u.conj().T) / 2) if u.shape[0] else np.zeros(0)
                for u in x]

    def state_positive(self, x):
        return all(w.size == 0 or w[0] >= -self.eps for w in self._eigs(x))

    effect_positive = state_positive

    def base_norm(self, x):
        return float(sum(np.abs(w).sum() for w in self._eigs(x)))

    def order_unit_norm(self, a):
        return float(max((np.abs(w).max() for w in self._eigs(a) if w.size), default=0.0))

    def jordan(self, x):
        pos, neg = [], []
        for u in x:
            if u.shape[0] == 0:
                pos.append(u), neg.append(u)
                continue
            w, v = np.linalg.eigh((u + u.conj().T) / 2)
            pos.append((v * np.clip(w, 0, None)) @ v.conj().T)
            neg.append((v * np.clip(-w, 0, None)) @ v.conj().T)
        return tuple(pos), tuple(neg)

    def negativity_witness(self, a):
        """The pure state along the most negative eigenvector, or None."""
        best = None
        for b, u in enumerate(a):
            if u.shape[0] == 0:
                continue
            w, v = np.linalg.eigh((u + u.conj().T) / 2)
            if w[0] < -self.eps and (best is None or w[0] < best[0]):
                best = (w[0], b, v[:, 0])
        if best is None:
            return None
        return self._pure(best[1], best[2])

    def _pure(self, b, vec):
        return tuple(np.outer(vec, vec.conj()) if i == b else np.zeros((n, n), dtype=complex)
                     for i, n in enumerate(self.blocks))

    def add(self, x, y):
        return tuple(u + v for u, v in zip(x, y))

    def scale(self, r, x):
        return tuple(float(r) * u for u in x)

    def zero(self):
        return tuple(np.zeros((n, n), dtype=complex) for n in self.blocks)

    def is_zero(self, x):
        return all(np.max(np.abs(u), initial=0.0) <= 100 * self.eps for u in x)

    def spanning_states(self):
        from .instances.quantum import spanning_vectors
        return [self._pure(b, v) for b, n in enumerate(self.blocks)
                for v in spanning_vectors(n)]

    def spanning_effects(self):
        out = [self.unit()]
        for b, n in enumerate(self.blocks):
            blockunit = self._embed(b, np.eye(n, dtype=complex))
            out.append(blockunit)
            for g in gell_mann(n):
                g = g / np.abs(np.linalg.eigvalsh(g)).max()
                out.append(self._embed(b, (np.eye(n) + g) / 2))
        return out

    def _embed(self, b, m):
        return tuple(m if i == b else np.zeros((n, n), dtype=complex)
                     for i, n in enumerate(self.blocks))

    def state_of(self, omega):
        return tuple(c.T for c in omega.choi[0])

    def effect_of(self, p):
        return tuple(row[0] for row in p.choi)

    def random_vector(self, rng):
        out = []
        for n in self.blocks:
            g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            out.append((g + g.conj().T) / 2)
        return tuple(out)

    def close(self, a, b):
        return abs(a - b) <= 100 * self.eps


def build_com(E: Effectus, A) -> Com:
    if E.name == "quantum":
        return MatrixCom(A.blocks, E.eps)
    return CommutativeCom(A.size, E.name)


def gudder_sigma(com: Com, x, y) -> tuple:
    """``σ(x, y) = d/(d+2)`` with ``d`` the base-norm distance, together with a
    witness attaining the infimum.  Any witness ``(r, z, w)`` gives
    ``(1−r)‖x−y‖ = r‖w−z‖ ≤ 2r``, so no smaller ``r`` works."""
    diff = com.sub(x, y)
    d = com.base_norm(diff)
    if com.is_zero(diff) or d == 0:
        zero = Fraction(0) if com.exact else 0.0
        return zero, GudderWitness(zero, x, y, 0.0)
    sigma = d / (d + 2)
    pos, neg = com.jordan(diff)
    half = d / 2
    z = com.scale(1 / half, neg)
    w = com.scale(1 / half, pos)
    lhs = com.add(com.scale(1 - sigma, x), com.scale(sigma, z))
    rhs = com.add(com.scale(1 - sigma, y), com.scale(sigma, w))
    res = com.base_norm(com.sub(lhs, rhs))
    return sigma, GudderWitness(sigma, z, w, float(res))


def base_distance(com: Com, x, y):
    return com.base_norm(com.sub(x, y))


# -- law suites ----------------------------------------------------------------

def _scalars(E: Effectus, rng, k: int) -> list:
    if E.name == "pfn":
        return [0, 1]
    if E.exact:
        return [Fraction(int(v), 8) for v in rng.integers(0, 9, size=k)]
    return list(rng.uniform(0, 1, size=k))


def _convex(E: Effectus, r, x, y):
    if E.name == "pfn":
        return x if r == 1 else y
    return E.sum(E.scale(r, x), E.scale(1 - r, y))


def sem_law_suite(E: Effectus, A, samples: int = 20, seed: int = 0,
                  effect_family: Callable | None = None) -> Report:
    """SE1–SE4 and CO1–CO4 for the model of ``A``; ``effect_family`` replaces
    the spanning effects (used to show that a truncated family fails)."""
    rng = np.random.default_rng(seed)
    com = build_com(E, A)
    near = com.close
    report = Report(f"duality/{E.name}/{A}")
    states = [E.random_state(rng, A) for _ in range(samples)]
    preds = [E.random_predicate(rng, A) for _ in range(samples)]
    scalars = _scalars(E, rng, samples)

    law = report.law("SE1", "validity is a unital module map in the effect", SAMPLED)
    for i, omega in enumerate(states):
        p, q = preds[i], preds[(i + 1) % samples]
        law.check(near(validity(E, omega, E.truth(A)), 1), omega)
        s = E.sum(p, q)
        if s is not None:
            law.check(near(validity(E, omega, s), validity(E, omega, p) + validity(E, omega, q)),
                      (omega, p, q))
        r = scalars[i % len(scalars)]
        law.check(near(validity(E, omega, E.scale(r, p)), r * validity(E, omega, p)),
                  (omega, p, r))

    law = report.law("SE2", "validity is affine in the state", SAMPLED)
    for i, omega in enumerate(states):
        other, p = states[(i + 1) % samples], preds[i]
        r = scalars[i % len(scalars)]
        mix = _convex(E, r, omega, other)
        law.check(near(validity(E, mix, p),
                       r * validity(E, omega, p) + (1 - r) * validity(E, other, p)),
                  (omega, other, r))

    family = effect_family(com) if effect_family else com.spanning_effects()
    tests = [com.effect_of(p) for p in preds] + family

    law = report.law("SE3", "pointwise order of validities reflects the effect order", SAMPLED)
    for i, a in enumerate(tests):
        b = tests[(i + 1) % len(tests)]
        diff = com.sub(b, a)
        leq = com.effect_positive(diff)
        wit = com.negativity_witness(diff)
        # a ≤ b exactly when no state sees b − a negative; the witness is that state
        law.check(leq == (wit is None), (a, b))
        if wit is not None:
            law.check(com.pair(wit, b) < com.pair(wit, a), (a, b, "witness"))

    spanning_states = com.spanning_states()
    law = report.law("SE4", "the effect family separates states", SAMPLED)
    cand = [com.state_of(s) for s in states] + spanning_states
    for i, x in enumerate(cand):
        y = cand[(i + 1) % len(cand)]
        if com.is_zero(com.sub(x, y)):
            continue
        law.check(any(not near(com.pair(x, a), com.pair(y, a)) for a in family), (x, y))

    law = report.law("CO1", "pairing of positive elements is non-negative", SAMPLED)
    for x in cand:
        for a in tests:
            law.check(com.pair(x, a) >= (0 if com.exact else -100 * com.eps), (x, a))

    law = report.law("CO2", "pairing with the unit is the trace", SAMPLED)
    for _ in range(samples):
        x = com.random_vector(rng)
        law.check(near(com.pair(x, com.unit()), com.trace(x)), x)

    law = report.law("CO3", "positive states order-separate effects", SAMPLED)
    for _ in range(samples):
        a = com.random_vector(rng)
        wit = com.negativity_witness(a)
        law.check(com.effect_positive(a) == (wit is None), a)
        if wit is not None:
            law.check(com.state_positive(wit) and com.pair(wit, a) < 0, a)

    law = report.law("CO4", "effects separate vectors", SAMPLED)
    gram = np.array([[float(np.real(com.pair(x, a))) for a in family] for x in spanning_states])
    law.check(np.linalg.matrix_rank(gram) == len(spanning_states) == com.dim,
              (gram.shape, np.linalg.matrix_rank(gram)))
    for _ in range(samples):
        x = com.random_vector(rng)
        if not com.is_zero(x):
            law.check(any(not near(com.pair(x, a), 0) for a in family), x)

    law = report.law("bilinear pairing", "pairing is bilinear", SAMPLED)
    for _ in range(samples):
        x, y, a = com.random_vector(rng), com.random_vector(rng), com.random_vector(rng)
        r = scalars[0] if scalars else 1
        law.check(near(com.pair(com.add(com.scale(r, x), y), a),
                       r * com.pair(x, a) + com.pair(y, a)), (x, y, a))

    law = report.law("Gudder relation", "d = 2σ/(1−σ) with σ ≤ 1/2 and an explicit witness",
                     SAMPLED)
    for i, omega in enumerate(states):
        x, y = com.state_of(omega), com.state_of(states[(i + 1) % samples])
        sigma, wit = gudder_sigma(com, x, y)
        d = base_distance(com, x, y)
        ok = sigma <= Fraction(1, 2) if com.exact else sigma <= 0.5 + 1e-12
        ok = ok and (wit.residual == 0 if com.exact else wit.residual <= 1e-7)
        ok = ok and com.state_positive(wit.z) and com.state_positive(wit.w)
        if sigma:
            ok = ok and near(com.trace(wit.z), 1) and near(com.trace(wit.w), 1)
            ok = ok and near(d, 2 * sigma / (1 - sigma))
        law.check(ok, (x, y))

    law = report.law("metric separation", "σ(x, y) = 0 only when x = y", SAMPLED)
    for i, omega in enumerate(states):
        x, y = com.state_of(omega), com.state_of(states[(i + 1) % samples])
        sigma, _ = gudder_sigma(com, x, y)
        law.check((sigma == 0 if com.exact else abs(sigma) <= 1e-12)
                  == com.is_zero(com.sub(x, y)), (x, y))
    return report


def identity_only(com: Com) -> list:
    return [com.unit()]


def law_suite_duality(E: Effectus, samples: int = 20, seed: int = 0) -> Report:
    report = Report(f"duality/{E.name}")
    for A in E.sample_objects():
        if build_com(E, A).dim == 0:
            continue  # the zero object has no states
        report.extend(sem_law_suite(E, A, samples, seed), prefix=str(A))
    if E.name == "quantum":
        com = MatrixCom((2,), E.eps)
        zero = com._pure(0, np.array([1, 0], dtype=complex))
        plus = com._pure(0, np.array([1, 1], dtype=complex) / np.sqrt(2))
        sigma, wit = gudder_sigma(com, zero, plus)
        d = base_distance(com, zero, plus)
        law = report.law("pure pair |0⟩,|+⟩", "trace distance √2", EXAMPLE)
        law.check(abs(d - np.sqrt(2)) <= 1e-9
                  and abs(sigma - np.sqrt(2) / (np.sqrt(2) + 2)) <= 1e-9
                  and wit.residual <= 1e-9, (d, sigma))
    return report
