import numpy as np
import pytest
from hypothesis import given, strategies as st

from effectus.core import validity
from effectus.errors import NotPsd
from effectus.instances import M, Quantum, is_cp
from effectus.instances import linalg as la

from conftest import ket, proj


def test_identity_kraus_gives_rank_one_choi():
    c = la.kraus_to_choi([np.eye(2)])
    omega = np.zeros(4)
    omega[0] = omega[3] = 1
    assert np.allclose(c, np.outer(omega, omega))


@pytest.mark.parametrize("n", [2, 3])
def test_antisymmetric_kraus_is_reduction_map(n, rng):
    ks = la.antisymmetric_kraus(n)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    out = sum(k @ a @ k.conj().T for k in ks)
    assert np.allclose(out, (np.trace(a) * np.eye(n) - a.T) / 2)


def test_transpose_is_not_cp(quantum):
    t = quantum.from_map(M(2), M(2), lambda l, k, x: x.T)
    w = is_cp(t)
    assert not w.cp
    assert w.min_eigenvalue == pytest.approx(-1, abs=1e-9)
    assert np.allclose(t.choi[0][0], la.transpose_choi(2))


@pytest.mark.parametrize("n", [2, 3])
def test_reduction_map_is_cp(quantum, n):
    f = quantum.from_map(M(n), M(n), lambda l, k, x: (np.trace(x) * np.eye(n) - x.T) / (n - 1))
    assert is_cp(f).cp


def test_sqrt_psd():
    assert np.allclose(la.sqrt_psd(np.diag([4.0, 1.0])), np.diag([2.0, 1.0]))
    with pytest.raises(NotPsd):
        la.sqrt_psd(np.diag([1.0, -0.5]))


def test_support_and_one_projection():
    p = np.diag([1.0, 0.5, 0.0])
    assert np.allclose(la.support_projection(p), np.diag([1, 1, 0]))
    assert np.allclose(la.one_projection(p), np.diag([1, 0, 0]))


def test_corner_compress_drops_empty_blocks(quantum):
    S, vs, keep = quantum.corner_compress(M(2, 1), [np.diag([0.0, 1.0]), np.zeros((1, 1))])
    assert S == M(1) and keep == [0]
    assert np.allclose(vs[0] @ vs[0].conj().T, np.diag([0, 1]))


def test_image_of_compression(quantum):
    P = np.diag([1.0, 1.0, 0.0])
    f = quantum.channel(M(3), [[P]])
    [im] = quantum.effects(quantum.image(f))
    assert np.allclose(im, P)


def test_born_rule(quantum):
    rho = proj(ket(1, 1))
    omega = quantum.state(M(2), [rho])
    p = quantum.predicate(M(2), [np.diag([1.0, 0.0])])
    assert validity(quantum, omega, p) == pytest.approx(0.5, abs=1e-12)


def test_block_diagonal_validity(quantum):
    omega = quantum.state(M(2, 1), [np.diag([0.25, 0.25]), np.array([[0.5]])])
    p = quantum.predicate(M(2, 1), [np.diag([1.0, 0.0]), np.array([[1.0]])])
    assert validity(quantum, omega, p) == pytest.approx(0.75)


def test_random_channel_is_total_and_cp(quantum, rng):
    for A in (M(2), M(3), M(2, 1)):
        f = quantum.random_morphism(rng, A, A, total=True)
        assert quantum.is_total(f) and is_cp(f).cp


@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_choi_superoperator_and_kraus_agree(seed, n, m, r):
    rng = np.random.default_rng(seed)
    ks = [rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n)) for _ in range(r)]
    c = la.kraus_to_choi(ks)
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    direct = sum(k @ x @ k.conj().T for k in ks)
    assert np.allclose(la.apply_choi(c, x, m), direct)
    s = la.choi_to_super(c, n, m)
    assert np.allclose((s @ x.reshape(-1)).reshape(m, m), direct)
    assert np.allclose(la.super_to_choi(s, n, m), c)
    back = la.choi_to_kraus(c, n, m)
    assert np.allclose(sum(k @ x @ k.conj().T for k in back), direct)


@given(st.integers(0, 2**32 - 1))
def test_heisenberg_composition_order(seed):
    """compose(g, f) applies f first as a process, so as Heisenberg maps
    the effect is pulled back through g and then f."""
    rng = np.random.default_rng(seed)
    Q = Quantum()
    f = Q.random_morphism(rng, M(2), M(3))
    g = Q.random_morphism(rng, M(3), M(2))
    b = [la.random_effect(rng, 2)]
    assert np.allclose(Q.compose(g, f).apply(b)[0], f.apply(g.apply(b))[0], atol=1e-9)
