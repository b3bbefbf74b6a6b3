"""One test per acceptance criterion.  Each records a ``PASS``/``FAIL`` line
that is printed in the terminal summary and on stdout."""
import time

import numpy as np
import pytest

from effectus import duality, logic, measurement as ms, totalization as tz
from effectus.core import SuiteConfig, law_suite_effectus, law_suite_round_trips, truth_of, validity
from effectus.instances import M, Pfn, Prob, Quantum, is_cp
from effectus.report import EXHAUSTIVE
from effectus.suites import measurement_regressions, quantum_regressions

from conftest import ACCEPTANCE_LINES

INSTANCES = [Pfn(3), Prob(), Quantum(1e-9)]


def record(n: int, text: str, ok: bool, detail=None):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}"
    if not ok and detail is not None:
        line += f"  [{detail}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def failures(reports):
    return [f"{r.name}/{x.law}: {x.witness}" for r in reports for x in r.failed()]


def test_criterion_1_effectus_laws():
    start = time.perf_counter()
    reports = [law_suite_effectus(E, SuiteConfig(200, 0)) for E in INSTANCES]
    elapsed = time.perf_counter() - start
    pfn_rep = reports[0]
    exhaustive = all(r.regime == EXHAUSTIVE for r in pfn_rep.results)
    sizes = sorted(o.size for o in INSTANCES[0].sample_objects())
    qobjs = set(INSTANCES[2].sample_objects())
    ok = (not failures(reports) and exhaustive and sizes == [0, 1, 2, 3]
          and {M(2), M(3), M(2, 1)} <= qobjs and elapsed <= 60)
    record(1, f"effectus laws on all three instances in {elapsed:.1f}s", ok,
           failures(reports) or (exhaustive, sizes, elapsed))


def test_criterion_2_sharp_lattice():
    P4 = Pfn(4)
    D = Prob()
    Q = Quantum()
    reports = [logic.law_suite_sharp_lattice(P4, [P4.obj(n) for n in range(5)]),
               logic.law_suite_sharp_lattice(D, [D.obj(n) for n in range(1, 5)]),
               logic.law_suite_sharp_lattice(Q, [M(2), M(3)], pairs=500, seed=0)]
    counted = all(x.checked > 0 for r in reports for x in r.results)
    record(2, "orthomodular lattice of sharp predicates", not failures(reports) and counted,
           failures(reports))


def test_criterion_3_worked_examples():
    Q = Quantum()
    A = M(2)
    t = Q.from_map(A, A, lambda l, k, x: x.T)
    w = is_cp(t)
    red = Q.from_map(A, A, lambda l, k, x: (np.trace(x) * np.eye(2) - x.T) / 2)
    ok_cp = not w.cp and abs(w.min_eigenvalue + 1) <= 1e-9 and is_cp(red).cp

    f = ms.three_level_instrument(Q)
    fl = ms.ideality_flags(Q, f)
    a0 = truth_of(Q, f["0"])
    floor0 = Q.effects(logic.floor(Q, a0))[0]
    ok_three = (fl.idempotent and fl.c_idempotent and not logic.is_sharp(Q, a0)
                and np.allclose(floor0, np.diag([1, 0, 0]), atol=1e-9))

    g = ms.disturbed_instrument(Q)
    half_p0 = truth_of(Q, Q.compose(g["1"], g["0"]))
    value = validity(Q, Q.state(A, [np.diag([1.0, 0.0])]), half_p0)
    ok_dist = (not ms.is_repeatable(Q, g).holds
               and np.allclose(Q.effects(half_p0)[0], np.diag([0.5, 0]), atol=1e-9)
               and abs(value - 0.5) <= 1e-9)

    rng = np.random.default_rng(0)
    ok_born = True
    for _ in range(50):
        from effectus.instances import linalg as la
        rho, P = la.random_density(rng, 3), la.random_projection(rng, 3, 1)
        v = validity(Q, Q.state(M(3), [rho]), Q.predicate(M(3), [P]))
        ok_born &= abs(v - np.trace(P @ rho).real) <= 1e-9

    reports = [quantum_regressions(Q), measurement_regressions(Q)]
    ok = ok_cp and ok_three and ok_dist and ok_born and not failures(reports)
    record(3, "transpose/reduction CP flags, three-level and disturbed instruments, Born rule",
           ok, (ok_cp, ok_three, ok_dist, ok_born, failures(reports)))


def test_criterion_4_luders_characterization():
    reports = [ms.law_suite_luders(E, count=20, seed=0) for E in INSTANCES]
    counts = [r["Lüders flags"].checked for r in reports]
    ok = not failures(reports) and counts == [20, 20, 20]
    record(4, "Lüders flags and uniqueness on 20 sharp observables per instance", ok,
           failures(reports) or counts)


def test_criterion_5_boolean_structure():
    P4 = Pfn(4)
    reports = [ms.law_suite_boolean_idempotents(P4, P4.obj(n)) for n in range(5)]
    reports.append(ms.law_suite_quantum_boolean(Quantum(), 0))
    record(5, "Boolean idempotents on sets ≤ 4 and centrality on M2⊕M1",
           not failures(reports), failures(reports))


def test_criterion_6_factorization():
    reports = [logic.law_suite_factorization(E, 100, 0) for E in INSTANCES]
    counts = [r["factorization"].checked for r in reports]
    ok = not failures(reports) and all(c >= 100 for c in counts)
    record(6, "image/kernel factorization on 100 morphisms per instance", ok,
           failures(reports) or counts)


def test_criterion_7_duality():
    reports = [duality.law_suite_duality(E, seed=0) for E in INSTANCES]
    com = duality.MatrixCom((2,))
    zero = com._pure(0, np.array([1, 0], dtype=complex))
    plus = com._pure(0, np.array([1, 1], dtype=complex) / np.sqrt(2))
    sigma, wit = duality.gudder_sigma(com, zero, plus)
    d = 2 * sigma / (1 - sigma)
    ok = not failures(reports) and abs(d - np.sqrt(2)) <= 1e-9 and wit.residual <= 1e-9
    record(7, f"semantic and convex-model laws, Gudder d(|0⟩,|+⟩) = {d:.12f}", ok,
           failures(reports) or d)


def test_criterion_8_totalization():
    reports = []
    for R in (tz.NAT, tz.QPOS):
        reports.append(tz.gbc_law_suite(R, 3, seed=0))
        reports.append(tz.caus_recover(R, 3, seed=0))
    functorial = reports[1]["functorial"]
    ok = not failures(reports) and functorial.regime == EXHAUSTIVE
    record(8, "grounded biproduct laws and the partial-function bijection", ok,
           failures(reports) or functorial.regime)


def test_criterion_9_round_trips():
    reports = [law_suite_round_trips(E, 100, 0) for E in INSTANCES]
    counts = [(r["partial/total round trip"].checked, r["normalization unique"].checked)
              for r in reports]
    ok = not failures(reports) and all(a == 100 and b == 100 for a, b in counts)
    record(9, "partial/total round trip and unique normalization", ok,
           failures(reports) or counts)
