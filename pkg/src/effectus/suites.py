"""Registry of law suites shared by the command line and the acceptance tests."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import duality, logic, measurement, totalization
from .algebra import finite, modules
from .core import SuiteConfig, law_suite_effectus, law_suite_round_trips, validity
from .instances import M, Pfn, Prob, Quantum, is_cp
from .instances import linalg as la
from .report import EXAMPLE, Report

SUITES = ("algebra", "effectus", "logic", "measurement", "duality", "totalization")
INSTANCES = ("pfn", "prob", "quantum")


@dataclass(frozen=True)
class RunConfig:
    instance: str = "all"
    seed: int = 0
    eps: float = 1e-9
    max_size: int = 3
    samples: int = 200
    output: str = "tsv"

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("tolerance must be positive")

    def instances(self) -> list:
        names = INSTANCES if self.instance == "all" else (self.instance,)
        out = []
        for n in names:
            if n == "pfn":
                out.append(Pfn(self.max_size))
            elif n == "prob":
                out.append(Prob())
            elif n == "quantum":
                out.append(Quantum(self.eps))
            else:
                raise ValueError(f"unknown instance {n!r}")
        return out


def algebra(cfg: RunConfig) -> list:
    rng = np.random.default_rng(cfg.seed)
    reports = []
    for name, ea in [("grid4", finite.grid(4)), ("powerset3", finite.powerset(3)),
                     ("horizontal-sum", finite.horizontal_sum("a", "b"))]:
        reports.append(finite.law_suite_effect_algebra(ea))
        reports[-1].name = f"effect-algebra/{name}"
    for n in (1, 2, 3, 4):
        reports.append(finite.law_suite_mv(finite.grid(n)))
        reports[-1].name = f"mv/grid{n}"
    scalars = [Fraction(k, 8) for k in range(9)]
    sub = modules.Subdistributions(3)
    samples = [sub.element(_subdist(rng, 3)) for _ in range(12)] + [sub.zero()]
    reports.append(modules.law_suite_weight_module(sub, samples, scalars[::2]))
    fz = modules.FuzzyPredicates(3)
    fsamples = [tuple(Fraction(int(v), 8) for v in rng.integers(0, 9, size=3))
                for _ in range(12)]
    reports.append(modules.law_suite_effect_module(fz, fsamples, scalars[::2]))
    reports.append(modules.law_suite_effect_monoid(scalars))
    qs = modules.Substates((2, 1), cfg.eps)
    dens = [_qsub(rng, (2, 1)) for _ in range(8)]
    reports.append(modules.law_suite_weight_module(qs, dens, [0.0, 0.25, 0.5, 1.0]))
    qe = modules.Effects((2, 1), cfg.eps)
    effs = [(la.random_effect(rng, 2, 0, 0.5), la.random_effect(rng, 1, 0, 0.5))
            for _ in range(8)]
    reports.append(modules.law_suite_effect_module(qe, effs, [0.0, 0.25, 0.5, 1.0]))
    return reports


def _subdist(rng, n):
    cuts = sorted(int(c) for c in rng.integers(0, 17, size=n))
    return [Fraction(b - a, 16) for a, b in zip([0] + cuts[:-1], cuts)]


def _qsub(rng, blocks):
    w = rng.uniform(0, 1)
    r = [la.random_density(rng, n) for n in blocks]
    s = rng.uniform(0, 1)
    return (w * s * r[0], w * (1 - s) * r[1])


def effectus(cfg: RunConfig) -> list:
    reports = []
    for E in cfg.instances():
        reports.append(law_suite_effectus(E, SuiteConfig(cfg.samples, cfg.seed)))
        reports.append(law_suite_round_trips(E, 100, cfg.seed))
        if E.name == "quantum":
            reports.append(quantum_regressions(E))
    return reports


def quantum_regressions(Q) -> Report:
    report = Report("quantum/examples")
    A = M(2)
    transpose = Q.from_map(A, A, lambda l, k, x: x.T)
    w = is_cp(transpose)
    report.law("transpose is not CP", "Choi minimum eigenvalue −1", EXAMPLE).check(
        not w.cp and abs(w.min_eigenvalue + 1) <= 1e-9, w.min_eigenvalue)
    flipped = Q.from_map(A, A, lambda l, k, x: (np.trace(x) * np.eye(2) - x.T) / 2)
    w2 = is_cp(flipped)
    report.law("reduction map is CP", "(tr(A)I − Aᵀ)/2 has PSD Choi matrix", EXAMPLE).check(
        w2.cp, w2.min_eigenvalue)
    rng = np.random.default_rng(0)
    law = report.law("Born rule", "ω ⊨ p = tr(Pρ)", EXAMPLE)
    for _ in range(20):
        rho = la.random_density(rng, 2)
        P = la.random_projection(rng, 2, 1)
        v = validity(Q, Q.state(A, [rho]), Q.predicate(A, [P]))
        law.check(abs(v - np.trace(P @ rho).real) <= 1e-9, v)
    return report


def logic_suite(cfg: RunConfig) -> list:
    reports = []
    for E in cfg.instances():
        reports.append(logic.law_suite_logic(E, seed=cfg.seed))
        reports.append(logic.law_suite_factorization(E, 100, cfg.seed))
        if E.name == "quantum":
            objs = [M(2), M(3)]
            reports.append(logic.law_suite_sharp_lattice(E, objs, pairs=500, seed=cfg.seed))
        elif E.name == "pfn":
            reports.append(logic.law_suite_sharp_lattice(Pfn(4), [Pfn(4).obj(n)
                                                                  for n in range(5)]))
        else:
            reports.append(logic.law_suite_sharp_lattice(E, [E.obj(n) for n in range(1, 5)]))
    return reports


def measurement_suite(cfg: RunConfig) -> list:
    reports = []
    for E in cfg.instances():
        reports.append(measurement.law_suite_luders(E, seed=cfg.seed))
        reports.append(measurement.law_suite_measurement(E, seed=cfg.seed))
        if E.name == "pfn":
            P4 = Pfn(4)
            for n in range(5):
                reports.append(measurement.law_suite_boolean_idempotents(P4, P4.obj(n)))
        if E.name == "quantum":
            reports.append(measurement.law_suite_quantum_boolean(E, cfg.seed))
            reports.append(measurement_regressions(E))
    return reports


def measurement_regressions(Q) -> Report:
    from .logic import floor, is_sharp
    report = Report("measurement/examples")
    f = measurement.three_level_instrument(Q)
    fl = measurement.ideality_flags(Q, f)
    a0 = f.components[0]
    from .core import truth_of
    p0 = truth_of(Q, a0)
    fl0 = Q.effects(floor(Q, p0))[0]
    report.law("three-level instrument", "idempotent and C-idempotent, observable not sharp, "
               "not Q-ideal repeatable", EXAMPLE).check(
        fl.idempotent and fl.c_idempotent and not is_sharp(Q, p0)
        and np.allclose(fl0, np.diag([1, 0, 0]), atol=1e-9)
        and not fl.repeatable_q_ideal, fl)
    g = measurement.disturbed_instrument(Q)
    v = measurement.is_repeatable(Q, g)
    half_p0 = truth_of(Q, Q.compose(g["1"], g["0"]))
    ket0 = Q.state(M(2), [np.diag([1, 0])])
    value = validity(Q, ket0, half_p0)
    report.law("disturbed instrument", "not repeatable, 1∘g₀∘g₁ = ½P₀ with value ½ at |0⟩",
               EXAMPLE).check(
        not v.holds and np.allclose(Q.effects(half_p0)[0], np.diag([0.5, 0]), atol=1e-9)
        and abs(value - 0.5) <= 1e-9, value)
    states = measurement.spanning_states(Q, M(2))
    report.law("disturbed instrument is not of the first kind",
               "first kind iff repeatable", EXAMPLE).check(
        not measurement.is_first_kind(Q, g, states))
    obs = measurement.binary_observable(Q, Q.predicate(M(2), [np.diag([1, 0])]))
    lu = measurement.luders_instrument(Q, obs.labels, obs.components)
    res = measurement.check_uniqueness_cq(Q, lu, g)
    report.law("Lüders differs from the disturbed instrument", "flags differ and maps differ",
               EXAMPLE).check(not res.equal and measurement.ideality_flags(Q, lu)
                              != measurement.ideality_flags(Q, g))
    p = Q.predicate(M(2), [np.diag([0.75, 0.25])])
    gl = measurement.generalized_luders(Q, ["0", "1"], [p, Q.ortho(p)])
    sq = truth_of(Q, Q.compose(gl["1"], gl["1"]))
    report.law("generalized Lüders is not repeatable", "1∘f₁∘f₁ = p² ≠ p", EXAMPLE).check(
        not measurement.is_repeatable(Q, gl)
        and np.allclose(Q.effects(sq)[0], np.diag([0.0625, 0.5625]), atol=1e-9))
    return report


def duality_suite(cfg: RunConfig) -> list:
    return [duality.law_suite_duality(E, seed=cfg.seed) for E in cfg.instances()]


def totalization_suite(cfg: RunConfig) -> list:
    reports = []
    for R in (totalization.NAT, totalization.QPOS):
        reports.append(totalization.gbc_law_suite(R, cfg.max_size, seed=cfg.seed))
        reports.append(totalization.caus_recover(R, cfg.max_size, seed=cfg.seed))
    reports.append(totalization.summability_reflection())
    for n in (1, 2, 4):
        reports.append(totalization.law_suite_interval(n))
    return reports


RUNNERS = {
    "algebra": algebra,
    "effectus": effectus,
    "logic": logic_suite,
    "measurement": measurement_suite,
    "duality": duality_suite,
    "totalization": totalization_suite,
}


def run(suite: str, cfg: RunConfig) -> list:
    names = SUITES if suite == "all" else (suite,)
    out = []
    for n in names:
        out += RUNNERS[n](cfg)
    return out
