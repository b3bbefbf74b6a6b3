from fractions import Fraction

import numpy as np
import pytest

from effectus import measurement as ms
from effectus.core import truth_of, validity
from effectus.errors import NotInstrument, NotSharp, TypeMismatch
from effectus.instances import M, Pfn
from effectus.instances import pfn as pf
from effectus.instances import prob as pr

half, quarter = Fraction(1, 2), Fraction(1, 4)


def coin(prob):
    omega = ms.state_test(prob, pr.state([half, half]))
    obs = ms.binary_observable(prob, pr.predicate([1, 0]))
    return omega, obs


def test_coin_flip_table(prob):
    omega, obs = coin(prob)
    t = ms.run_experiment(prob, omega, [obs])
    assert t[("0",)] == half and t[("1",)] == half
    assert t.to_tsv() == "o1\tp\n0\t1/2\n1\t1/2\n"


def test_repeated_luders_is_diagonal(prob):
    omega = ms.state_test(prob, pr.state([quarter, Fraction(3, 4)]))
    p = pr.predicate([1, 0])
    lu = ms.luders_instrument(prob, ["0", "1"], [p, prob.ortho(p)])
    t = ms.run_experiment(prob, omega, [lu, lu])
    assert t.entries == {("0", "0"): quarter, ("0", "1"): 0,
                         ("1", "0"): 0, ("1", "1"): Fraction(3, 4)}
    assert t.marginal([1]).entries == {("0",): quarter, ("1",): Fraction(3, 4)}


def test_no_signalling_from_later_step(prob, rng):
    omega = ms.state_test(prob, pr.state([quarter, Fraction(3, 4)]))
    p = pr.predicate([1, half])
    first = ms.generalized_luders(prob, ["a", "b"], [p, prob.ortho(p)])
    second = ms.binary_observable(prob, pr.predicate([0, 1]))
    alone = ms.run_experiment(prob, omega, [first, ms.identity_instrument(prob, prob.obj(2))])
    both = ms.run_experiment(prob, omega, [first, second])
    assert both.marginal([0]).entries == alone.marginal([0]).entries


def test_conditional_on_impossible_outcome_is_undefined(prob):
    omega = ms.state_test(prob, pr.state([1, 0]))
    obs = ms.binary_observable(prob, pr.predicate([1, 0]))
    lu = ms.luders_instrument(prob, ["0", "1"], [pr.predicate([1, 0]), pr.predicate([0, 1])])
    t = ms.run_experiment(prob, omega, [lu, obs])
    assert t.conditional([1], {0: "1"}) is None
    assert t.conditional([1], {0: "0"}).entries == {("0",): 1, ("1",): 0}


def test_coarse_graining_sums_components(prob):
    obs = ms.observable(prob, ["a", "b", "c"], [pr.predicate([half, 0]),
                                                pr.predicate([quarter, 1]),
                                                pr.predicate([quarter, 0])])
    cg = ms.coarse_grain(prob, obs, {"a": "x", "b": "y", "c": "x"})
    assert pr.values_of(cg["x"]) == (Fraction(3, 4), 0)


def test_composing_with_identity_keeps_instrument(prob):
    p = pr.predicate([1, 0])
    lu = ms.luders_instrument(prob, ["0", "1"], [p, prob.ortho(p)])
    both = ms.compose_tests(prob, lu, ms.identity_instrument(prob, prob.obj(2)))
    assert all(prob.equal(both[(x, "*")], lu[x]) for x in lu.labels)


def test_instrument_must_sum_to_truth(prob):
    with pytest.raises(NotInstrument):
        ms.make_test(prob, ["0"], [pr.predicate([half, 1])])


def test_ill_typed_experiment(prob):
    omega = ms.state_test(prob, pr.state([half, half]))
    obs = ms.binary_observable(prob, pr.predicate([1, 0, 0]))
    with pytest.raises(TypeMismatch):
        ms.run_experiment(prob, omega, [obs])


def test_luders_needs_sharp_predicates(prob):
    p = pr.predicate([half, half])
    with pytest.raises(NotSharp):
        ms.luders_instrument(prob, ["0", "1"], [p, prob.ortho(p)])


def test_three_level_instrument(quantum):
    f = ms.three_level_instrument(quantum)
    fl = ms.ideality_flags(quantum, f)
    assert fl.idempotent and fl.c_idempotent
    assert not fl.repeatable_q_ideal and not fl.nondegenerate
    assert fl.consistent()


def test_disturbed_instrument(quantum):
    g = ms.disturbed_instrument(quantum)
    v = ms.is_repeatable(quantum, g)
    assert not v.holds
    half_p0 = truth_of(quantum, quantum.compose(g["1"], g["0"]))
    assert np.allclose(quantum.effects(half_p0)[0], np.diag([0.5, 0]))
    ket0 = quantum.state(M(2), [np.diag([1.0, 0.0])])
    assert validity(quantum, ket0, half_p0) == pytest.approx(0.5, abs=1e-9)
    assert not ms.is_first_kind(quantum, g, ms.spanning_states(quantum, M(2)))


def test_hadamard_experiment_from_mixed_state(quantum):
    prep = ms.state_test(quantum, quantum.state(M(2), [np.eye(2) / 2]))
    lu = ms.luders_instrument(quantum, ["0", "1"], [quantum.predicate(M(2), [ms.P0]),
                                                    quantum.predicate(M(2), [ms.P1])])
    h = ms.make_test(quantum, ["H"], [quantum.channel(M(2), [[ms.HADAMARD]])])
    t = ms.run_experiment(quantum, prep, [lu, h, lu])
    assert t[("0", "H", "1")] == pytest.approx(0.25, abs=1e-9)
    assert t.total() == pytest.approx(1, abs=1e-9)


@pytest.mark.parametrize("name", ["pfn", "prob", "quantum"])
def test_luders_flags_and_uniqueness(name, pfn, prob, quantum, rng):
    E = {"pfn": pfn, "prob": prob, "quantum": quantum}[name]
    A = E.sample_objects()[-1]
    obs = ms.random_sharp_observable(E, rng, A)
    lu = ms.luders_instrument(E, obs.labels, obs.components)
    fl = ms.ideality_flags(E, lu)
    assert fl.repeatable_q_ideal and fl.c_ideal and fl.consistent()
    res = ms.check_uniqueness_cq(E, lu, ms.direct_luders(E, obs))
    assert res.applicable and res.equal


def test_generalized_luders_squares(quantum):
    p = quantum.predicate(M(2), [np.diag([0.75, 0.25])])
    gl = ms.generalized_luders(quantum, ["0", "1"], [p, quantum.ortho(p)])
    sq = truth_of(quantum, quantum.compose(gl["1"], gl["1"]))
    assert np.allclose(quantum.effects(sq)[0], np.diag([1 / 16, 9 / 16]))
    assert not ms.is_repeatable(quantum, gl).holds


def test_boolean_idempotents_on_four_points():
    E = Pfn(4)
    report = ms.law_suite_boolean_idempotents(E, E.obj(4))
    assert report.passed


def test_boolean_meet_of_restrictions():
    E = Pfn(4)
    f = pf.morphism(4, 4, [0, 1, None, None])
    g = pf.morphism(4, 4, [None, 1, 2, None])
    assert ms.is_boolean(E, f) and ms.is_boolean(E, g)
    assert ms.boolean_meet(E, f, g).table == (None, 1, None, None)
    assert ms.boolean_join(E, f, g).table == (0, 1, 2, None)
    assert ms.boolean_complement(E, f).table == (None, None, 2, 3)


def test_central_observable_gives_boolean_instrument(quantum):
    A = M(2, 1)
    z = quantum.predicate(A, [np.eye(2), np.zeros((1, 1))])
    f = ms.central_multiplication(quantum, A, [z, quantum.ortho(z)])
    assert f is not None and ms.is_boolean_instrument(quantum, f)
    assert ms.is_boolean(quantum, f["0"])
    p = quantum.predicate(A, [np.diag([1.0, 0.0]), np.eye(1)])
    assert ms.central_multiplication(quantum, A, [p, quantum.ortho(p)]) is None
    corner = quantum.channel(A, [[np.diag([1.0, 0.0])], [np.eye(1)]])
    assert not ms.is_boolean(quantum, corner)


def test_hadamard_experiment_from_ket_zero(quantum):
    prep = ms.state_test(quantum, quantum.state(M(2), [ms.P0]))
    lu = ms.luders_instrument(quantum, ["0", "1"], [quantum.predicate(M(2), [ms.P0]),
                                                    quantum.predicate(M(2), [ms.P1])])
    h = ms.make_test(quantum, ["H"], [quantum.channel(M(2), [[ms.HADAMARD]])])
    t = ms.run_experiment(quantum, prep, [lu, h, lu])
    assert t[("0", "H", "1")] == pytest.approx(0.5, abs=1e-9)
