from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from effectus import duality as du
from effectus.instances import M, Pfn, Prob, Quantum


def test_base_norm_examples():
    c = du.CommutativeCom(2, "prob")
    assert c.base_norm((Fraction(1), Fraction(-1))) == 2
    m = du.MatrixCom((2,))
    diff = (np.diag([1.0, -1.0]).astype(complex),)
    assert m.base_norm(diff) == pytest.approx(2)
    x = (np.diag([0.3, 0.7]).astype(complex),)
    assert du.base_distance(m, x, x) == pytest.approx(0)


def test_orthogonal_point_masses_have_sigma_half():
    c = du.CommutativeCom(2, "prob")
    sigma, w = du.gudder_sigma(c, c._point(0), c._point(1))
    assert sigma == Fraction(1, 2)
    assert w.residual == 0
    assert 2 * sigma / (1 - sigma) == 2


def test_pure_pair_distance():
    m = du.MatrixCom((2,))
    zero = m._pure(0, np.array([1, 0], dtype=complex))
    plus = m._pure(0, np.array([1, 1], dtype=complex) / np.sqrt(2))
    d = du.base_distance(m, zero, plus)
    assert d == pytest.approx(np.sqrt(2), abs=1e-9)
    sigma, w = du.gudder_sigma(m, zero, plus)
    assert 2 * sigma / (1 - sigma) == pytest.approx(d, abs=1e-9)
    assert w.residual <= 1e-9


@given(st.lists(st.integers(0, 8), min_size=3, max_size=3).filter(sum),
       st.lists(st.integers(0, 8), min_size=3, max_size=3).filter(sum))
def test_gudder_relation_exact(a, b):
    c = du.CommutativeCom(3, "prob")
    x = tuple(Fraction(v, sum(a)) for v in a)
    y = tuple(Fraction(v, sum(b)) for v in b)
    sigma, w = du.gudder_sigma(c, x, y)
    d = du.base_distance(c, x, y)
    assert sigma <= Fraction(1, 2)
    assert w.residual == 0
    if d:
        assert 2 * sigma / (1 - sigma) == d
        assert c.state_positive(w.z) and c.state_positive(w.w)
        assert c.trace(w.z) == 1 == c.trace(w.w)


@pytest.mark.parametrize("E,A", [(Pfn(), Pfn().obj(3)), (Prob(), Prob().obj(3)),
                                 (Quantum(), M(2)), (Quantum(), M(2, 1))])
def test_semantic_laws(E, A):
    assert du.sem_law_suite(E, A, samples=10).passed


def test_truncated_effect_family_fails_separation():
    E = Prob()
    r = du.sem_law_suite(E, E.obj(2), samples=10, effect_family=du.identity_only)
    assert not r["SE4"].passed and not r["CO4"].passed


def test_gell_mann_basis_is_traceless_and_orthogonal():
    gs = du.gell_mann(3)
    assert len(gs) == 8
    for i, g in enumerate(gs):
        assert abs(np.trace(g)) < 1e-12
        for h in gs[i + 1:]:
            assert abs(np.trace(g @ h)) < 1e-12
