from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from effectus import logic
from effectus.core import truth_of
from effectus.errors import NotSharp
from effectus.instances import M, Pfn, Prob, Quantum
from effectus.instances import linalg as la
from effectus.instances import pfn as pf
from effectus.instances import prob as pr

from conftest import ket, proj


def test_box_is_one_minus_heisenberg_of_complement(quantum, rng):
    f = quantum.random_morphism(rng, M(2), M(3))
    q = la.random_effect(rng, 3)
    [box] = quantum.effects(logic.f_box(quantum, f, quantum.predicate(M(3), [q])))
    [pulled] = f.apply([np.eye(3) - q])
    assert np.allclose(box, np.eye(2) - pulled)
    alt = logic.f_box_sum(quantum, f, quantum.predicate(M(3), [q]))
    assert np.allclose(quantum.effects(alt)[0], box)


def test_floor_and_ceiling_of_diagonal(quantum):
    p = quantum.predicate(M(3), [np.diag([1.0, 0.5, 0.0])])
    assert np.allclose(quantum.effects(logic.floor(quantum, p))[0], np.diag([1, 0, 0]))
    assert np.allclose(quantum.effects(logic.ceiling(quantum, p))[0], np.diag([1, 1, 0]))


def test_comprehension_is_corner_where_predicate_is_certain(quantum):
    p = quantum.predicate(M(3), [np.diag([1.0, 0.5, 0.0])])
    c = logic.comprehension(quantum, M(3), p)
    assert c.obj == M(1)
    # p holds with certainty after the inclusion
    assert quantum.equal(quantum.compose(p, c.pi), truth_of(quantum, c.pi))


def test_quotient_of_diagonal(quantum):
    p = quantum.predicate(M(3), [np.diag([1.0, 0.5, 0.0])])
    q = logic.quotient(quantum, M(3), p)
    assert q.obj == M(2)
    # 1 ∘ ξ = p⊥
    assert np.allclose(quantum.effects(truth_of(quantum, q.xi))[0], np.diag([0, 0.5, 1]))


def test_meet_and_join_of_non_commuting_rays(quantum):
    a = quantum.predicate(M(2), [proj(ket(1, 0))])
    b = quantum.predicate(M(2), [proj(ket(1, 1))])
    meet = quantum.effects(logic.sharp_meet(quantum, a, b))[0]
    join = quantum.effects(logic.sharp_join(quantum, a, b))[0]
    assert np.allclose(meet, np.zeros((2, 2)), atol=1e-9)
    assert np.allclose(join, np.eye(2), atol=1e-9)
    # independent route through range computations
    assert np.allclose(meet, la.range_intersection(proj(ket(1, 0)), proj(ket(1, 1))))
    assert np.allclose(join, la.range_span(proj(ket(1, 0)), proj(ket(1, 1))))


@given(st.integers(0, 2**32 - 1), st.integers(1, 2), st.integers(1, 2))
def test_meet_matches_range_intersection_in_m3(seed, r1, r2):
    rng = np.random.default_rng(seed)
    Q = Quantum()
    P1, P2 = la.random_projection(rng, 3, r1), la.random_projection(rng, 3, r2)
    p, q = Q.predicate(M(3), [P1]), Q.predicate(M(3), [P2])
    meet = Q.effects(logic.sharp_meet(Q, p, q))[0]
    join = Q.effects(logic.sharp_join(Q, p, q))[0]
    assert np.allclose(meet, la.range_intersection(P1, P2), atol=1e-6)
    assert np.allclose(join, la.range_span(P1, P2), atol=1e-6)


def test_meet_requires_sharp(quantum):
    p = quantum.predicate(M(2), [np.diag([0.5, 0.5])])
    with pytest.raises(NotSharp):
        logic.sharp_meet(quantum, p, p)


def test_pfn_connectives_are_set_operations(pfn):
    a, b = pf.predicate(4, {0, 1}), pf.predicate(4, {1, 2})
    assert pf.subset_of(logic.sharp_meet(pfn, a, b)) == {1}
    assert pf.subset_of(logic.sharp_join(pfn, a, b)) == {0, 1, 2}
    assert pf.subset_of(logic.sharp_complement(pfn, a)) == {2, 3}


def test_prob_floor_and_ceiling(prob):
    p = pr.predicate([1, Fraction(1, 2), 0])
    assert pr.values_of(logic.floor(prob, p)) == (1, 0, 0)
    assert pr.values_of(logic.ceiling(prob, p)) == (1, 1, 0)
    assert not logic.is_sharp(prob, p)


def test_kernel_of_partial_map(pfn):
    f = pf.morphism(3, 2, [0, None, 1])
    assert pf.subset_of(logic.kernel(pfn, f)) == {1}


def test_factorization_of_compression(quantum):
    P = np.diag([1.0, 1.0, 0.0])
    f = quantum.channel(M(3), [[P]])
    fac = logic.factorize(quantum, f)
    assert fac.theta.dom == M(2) and fac.theta.cod == M(2)
    assert quantum.equal(logic.reassemble(quantum, fac), f)
    assert quantum.is_total(fac.theta) and logic.is_faithful(quantum, fac.theta)


@given(st.lists(st.one_of(st.none(), st.integers(0, 2)), min_size=4, max_size=4))
def test_factorization_reassembles_partial_functions(table):
    E = Pfn(4)
    f = pf.morphism(4, 3, table)
    fac = logic.factorize(E, f)
    assert E.equal(logic.reassemble(E, fac), f)
    assert E.is_total(fac.theta) and logic.is_faithful(E, fac.theta)


def test_sharp_morphisms(quantum, rng):
    assert logic.is_sharp_morphism(quantum, quantum.channel(M(2), [[la.random_unitary(rng, 2)]]))
    half = quantum.channel(M(2), [[np.sqrt(0.5) * np.eye(2)]])
    assert not logic.is_sharp_morphism(quantum, half)


@given(st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_floor_is_greatest_sharp_below(vals):
    E = Prob()
    p = pr.predicate([Fraction(v, 4) for v in vals])
    fl = logic.floor(E, p)
    assert logic.is_sharp(E, fl) and E.leq(fl, p)
    for s in E.sharp_predicates(p.dom):
        if E.leq(s, p):
            assert E.leq(s, fl)
