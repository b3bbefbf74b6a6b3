from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from effectus.core import (from_total, normalize, partial_tuple, predicate_transform,
                           state_transform, to_total, truth_of, validity)
from effectus.instances import Pfn, Prob
from effectus.instances import pfn as pf
from effectus.instances import prob as pr

half = Fraction(1, 2)


def test_validity_of_fair_coin(prob):
    omega = pr.state([half, half])
    p = pr.predicate([1, 0])
    assert validity(prob, omega, p) == half
    assert validity(prob, omega, p) == prob.validity_formula(omega, p)


def test_predicate_and_state_transform(prob):
    f = pr.morphism(2, 2, [[half, half], [0, 1]])
    q = pr.predicate([1, 0])
    assert pr.values_of(predicate_transform(prob, f, q)) == (half, 0)
    omega = pr.state([1, 0])
    assert pr.values_of(state_transform(prob, f, omega)) == (half, half)


def test_partial_tuple_requires_summable_domains(prob):
    f = pr.morphism(1, 1, [[Fraction(3, 4)]])
    assert partial_tuple(prob, [f, f]) is None
    g = pr.morphism(1, 1, [[Fraction(1, 4)]])
    t = partial_tuple(prob, [f, g])
    assert t.kernel == ((Fraction(3, 4), Fraction(1, 4)),)


def test_to_total_adds_missing_mass(prob):
    s = pr.state([Fraction(1, 4)])
    t = to_total(prob, s)
    assert t.kernel == ((Fraction(1, 4), Fraction(3, 4)),)
    assert prob.equal(from_total(prob, t, s.cod), s)


def test_to_total_on_partial_function(pfn):
    f = pf.morphism(3, 2, [1, None, 0])
    t = to_total(pfn, f)
    assert t.table == (1, 2, 0)
    assert pfn.equal(from_total(pfn, t, f.cod), f)


def test_pfn_sum_of_disjoint_and_overlapping(pfn):
    f = pf.morphism(2, 2, [0, None])
    g = pf.morphism(2, 2, [None, 1])
    assert pfn.sum(f, g).table == (0, 1)
    assert pfn.sum(f, f) is None


def test_pfn_homset_sizes(pfn):
    assert len(pfn.enumerate_homset(pfn.obj(1), pfn.obj(1))) == 2
    assert len(pfn.enumerate_homset(pfn.obj(2), pfn.obj(2))) == 9
    assert len(pfn.enumerate_homset(pfn.obj(0), pfn.obj(3))) == 1


def test_prob_image_is_support(prob):
    omega = pr.state([half, Fraction(1, 4), 0])
    assert pr.values_of(prob.image(omega)) == (1, 1, 0)


def test_prob_image_is_least_certain_predicate_on_grid(prob):
    omega = pr.state([half, Fraction(1, 4), 0])
    im = prob.image(omega)
    certain = [p for p in prob.enumerate_grid(prob.obj(3), prob.unit, grid=2)
               if prob.equal(prob.compose(p, omega), truth_of(prob, omega))]
    assert all(prob.leq(im, p) for p in certain)
    assert any(prob.equal(im, p) for p in certain)


def test_normalize_substate(prob):
    s = pr.state([Fraction(1, 8), Fraction(1, 8)])
    assert pr.values_of(normalize(prob, s)) == (half, half)


def test_constant_quarter_round_trip(prob):
    f = pr.morphism(2, 1, [[Fraction(1, 4)], [Fraction(1, 4)]])
    assert prob.equal(from_total(prob, to_total(prob, f), f.cod), f)


kernel_rows = st.lists(st.integers(0, 6), min_size=3, max_size=3).filter(lambda r: sum(r) <= 6)


@st.composite
def kernels(draw, n, m):
    rows = [draw(st.lists(st.integers(0, 6), min_size=m, max_size=m).filter(
        lambda r: sum(r) <= 6)) for _ in range(n)]
    return pr.morphism(n, m, [[Fraction(v, 6) for v in r] for r in rows])


@given(kernels(2, 3), kernels(3, 2))
def test_composition_matches_double_sum(f, g):
    E = Prob()
    assert E.equal(E.compose(g, f), pr.compose_double_sum(g, f))


@given(kernels(2, 2), kernels(2, 2), kernels(2, 2))
def test_composition_is_associative(f, g, h):
    E = Prob()
    assert E.equal(E.compose(h, E.compose(g, f)), E.compose(E.compose(h, g), f))


@given(kernels(3, 2))
def test_round_trip_through_total(f):
    E = Prob()
    t = to_total(E, f)
    assert E.is_total(t)
    assert E.equal(from_total(E, t, f.cod), f)


@given(st.lists(st.one_of(st.none(), st.integers(0, 2)), min_size=3, max_size=3))
def test_pfn_embedding_preserves_graph(table):
    f = pf.morphism(3, 3, table)
    assert pr.to_pfn(pr.from_pfn(f)) == f


def test_pfn_and_prob_compositions_agree():
    P, D = Pfn(), Prob()
    rng = np.random.default_rng(3)
    for _ in range(50):
        f = P.random_morphism(rng, P.obj(3), P.obj(2))
        g = P.random_morphism(rng, P.obj(2), P.obj(3))
        assert D.equal(pr.from_pfn(P.compose(g, f)),
                       D.compose(pr.from_pfn(g), pr.from_pfn(f)))
