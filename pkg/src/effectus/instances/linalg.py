"""Hermitian linear algebra used by the quantum instance.

Every factorization goes through ``numpy.linalg.eigh`` on a symmetrized
input.  Choi convention: for ``Φ: M_n -> M_m``,
``C = Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`` (input factor first), an ``nm × nm`` matrix.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NotProjection, NotPsd, ShapeMismatch

EPS = 1e-9


def herm(a: np.ndarray) -> np.ndarray:
    return (a + a.conj().T) / 2


def eigh(a: np.ndarray):
    if a.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=complex)
    return np.linalg.eigh(herm(a))


def min_eig(a: np.ndarray) -> float:
    if a.shape[0] == 0:
        return 0.0
    return float(np.linalg.eigvalsh(herm(a))[0])


def is_psd(a: np.ndarray, eps: float = EPS) -> bool:
    return min_eig(a) >= -eps


def is_effect(a: np.ndarray, eps: float = EPS) -> bool:
    return is_psd(a, eps) and is_psd(np.eye(a.shape[0]) - a, eps)


def is_projection(a: np.ndarray, eps: float = EPS) -> bool:
    return bool(np.max(np.abs(a @ a - a), initial=0.0) <= 10 * eps
                and np.max(np.abs(a - a.conj().T), initial=0.0) <= 10 * eps)


def sqrt_psd(a: np.ndarray, eps: float = EPS) -> np.ndarray:
    """Unique PSD square root; eigenvalues in [-eps, 0) are clamped to 0."""
    w, v = eigh(a)
    if w.size and w[0] < -eps:
        raise NotPsd(f"minimum eigenvalue {w[0]:.3e} below -{eps}")
    return (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def pinv_sqrt_psd(a: np.ndarray, eps: float = EPS) -> np.ndarray:
    """Inverse of ``√a`` on its support, zero on the kernel."""
    w, v = eigh(a)
    inv = np.array([1 / np.sqrt(x) if x > eps else 0.0 for x in w])
    return (v * inv) @ v.conj().T


def support_projection(a: np.ndarray, eps: float = EPS) -> np.ndarray:
    """Projection onto the eigenvectors with eigenvalue > eps (the ceiling)."""
    w, v = eigh(a)
    if w.size and w[0] < -eps:
        raise NotPsd(f"minimum eigenvalue {w[0]:.3e} below -{eps}")
    return _reproject(v[:, w > eps])


def one_projection(a: np.ndarray, eps: float = EPS) -> np.ndarray:
    """Projection onto the eigenvectors with eigenvalue >= 1 - eps (the floor)."""
    w, v = eigh(a)
    return _reproject(v[:, w >= 1 - eps])


def _reproject(cols: np.ndarray) -> np.ndarray:
    if cols.shape[1] == 0:
        return np.zeros((cols.shape[0],) * 2, dtype=complex)
    q = _orthonormalize(cols)
    return q @ q.conj().T


def _orthonormalize(b: np.ndarray) -> np.ndarray:
    """Löwdin orthonormalization ``B (B*B)^{-1/2}``, symmetric in the columns."""
    g = herm(b.conj().T @ b)
    w, v = np.linalg.eigh(g)
    return b @ ((v / np.sqrt(w)) @ v.conj().T)


def corner_isometry(e: np.ndarray, eps: float = EPS) -> np.ndarray:
    """Isometry ``V`` with ``V V* = e`` and ``V* V = 1``.

    Columns are chosen from the eigenvectors of ``e`` with eigenvalue near 1;
    the phase of each column is fixed so that its largest-modulus entry (first
    on ties) is real and positive.  For diagonal projections this gives the
    standard basis vectors in ascending order.
    """
    if not is_projection(e, eps):
        raise NotProjection("corner compression needs a projection")
    n = e.shape[0]
    w, v = eigh(e)
    cols = v[:, w > 0.5]
    r = cols.shape[1]
    if r == 0:
        return np.zeros((n, 0), dtype=complex)
    # greedy column choice from e itself gives a basis that is deterministic
    # and, for coordinate projections, is the coordinate basis in order
    chosen = []
    basis = np.zeros((n, 0), dtype=complex)
    for j in range(n):
        c = e[:, j]
        resid = c - basis @ (basis.conj().T @ c)
        if np.linalg.norm(resid) > 1e-6:
            chosen.append(j)
            basis = np.column_stack([basis, resid / np.linalg.norm(resid)])
        if len(chosen) == r:
            break
    V = _orthonormalize(e[:, chosen])
    for k in range(r):
        i = int(np.argmax(np.abs(V[:, k]) > np.abs(V[:, k]).max() - 1e-12))
        ph = V[i, k] / abs(V[i, k])
        V[:, k] = V[:, k] / ph
    return V


# -- Choi / superoperator / Kraus --------------------------------------------

def kraus_to_choi(kraus, n: int | None = None, m: int | None = None) -> np.ndarray:
    """Choi matrix of ``b ↦ Σ K b K*`` for ``K: n -> m`` (``m × n`` matrices)."""
    kraus = [np.atleast_2d(np.asarray(k, dtype=complex)) for k in kraus]
    if not kraus:
        if n is None or m is None:
            raise ShapeMismatch("empty Kraus family needs explicit shapes")
        return np.zeros((n * m, n * m), dtype=complex)
    m0, n0 = kraus[0].shape
    if any(k.shape != (m0, n0) for k in kraus) or (n, m) not in ((None, None), (n0, m0)):
        raise ShapeMismatch("inconsistent Kraus shapes")
    vs = np.stack([k.T.reshape(-1) for k in kraus], axis=1)
    return vs @ vs.conj().T


def choi_to_super(c: np.ndarray, n: int, m: int) -> np.ndarray:
    """Row-major superoperator ``S`` with ``vec(Φ(X)) = S vec(X)``."""
    return c.reshape(n, m, n, m).transpose(1, 3, 0, 2).reshape(m * m, n * n)


def super_to_choi(s: np.ndarray, n: int, m: int) -> np.ndarray:
    return s.reshape(m, m, n, n).transpose(2, 0, 3, 1).reshape(n * m, n * m)


def apply_choi(c: np.ndarray, x: np.ndarray, m: int) -> np.ndarray:
    n = x.shape[0]
    return np.einsum("ij,iajb->ab", x, c.reshape(n, m, n, m))


def choi_of_map(phi, n: int, m: int) -> np.ndarray:
    """Choi matrix of an arbitrary linear ``phi: M_n -> M_m`` by evaluation."""
    c = np.zeros((n * m, n * m), dtype=complex)
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1
            c[i * m:(i + 1) * m, j * m:(j + 1) * m] = phi(e)
    return c


def partial_trace_output(c: np.ndarray, n: int, m: int) -> np.ndarray:
    """``T[i, j] = tr Φ(|i⟩⟨j|)``."""
    return c.reshape(n, m, n, m).trace(axis1=1, axis2=3)


def choi_to_kraus(c: np.ndarray, n: int, m: int, eps: float = EPS) -> list:
    w, v = eigh(c)
    out = []
    for lam, vec in zip(w, v.T):
        if lam > eps:
            out.append((np.sqrt(lam) * vec).reshape(n, m).T)
    return out


@dataclass(frozen=True)
class CpWitness:
    """Most negative Choi eigenvalue and the block it came from."""

    cp: bool
    min_eigenvalue: float
    block: tuple | None


def transpose_choi(n: int) -> np.ndarray:
    return choi_of_map(lambda x: x.T, n, n)


def antisymmetric_kraus(n: int) -> list:
    """``S_ij = (|i⟩⟨j| − |j⟩⟨i|)/√2`` for ``i < j``."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            s = np.zeros((n, n), dtype=complex)
            s[i, j], s[j, i] = 1 / np.sqrt(2), -1 / np.sqrt(2)
            out.append(s)
    return out


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_projection(rng: np.random.Generator, n: int, rank: int) -> np.ndarray:
    u = random_unitary(rng, n)[:, :rank]
    return u @ u.conj().T


def random_effect(rng: np.random.Generator, n: int, lo: float = 0.0, hi: float = 1.0):
    u = random_unitary(rng, n)
    w = rng.uniform(lo, hi, size=n)
    return (u * w) @ u.conj().T


def random_density(rng: np.random.Generator, n: int, rank: int | None = None):
    r = rank or n
    g = rng.normal(size=(n, r)) + 1j * rng.normal(size=(n, r))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def range_intersection(p: np.ndarray, q: np.ndarray, eps: float = 1e-7) -> np.ndarray:
    """Projection onto ``ran p ∩ ran q`` = ``ker(1-p) ∩ ker(1-q)``.

    The stacked operator ``(1-p)^2 + (1-q)^2`` is Hermitian PSD; its null
    space is exactly the intersection.
    """
    n = p.shape[0]
    a, b = np.eye(n) - p, np.eye(n) - q
    w, v = eigh(a.conj().T @ a + b.conj().T @ b)
    return _reproject(v[:, w <= eps])


def range_span(p: np.ndarray, q: np.ndarray, eps: float = 1e-7) -> np.ndarray:
    """Projection onto ``ran p + ran q``."""
    return support_projection(p + q, eps)
