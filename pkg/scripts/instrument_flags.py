"""Tabulate measurement properties of the worked quantum instruments and of
Lüders instruments across the three instances."""
import numpy as np

from effectus import measurement as ms
from effectus.instances import M, Pfn, Prob, Quantum

FIELDS = ["repeatable", "idempotent", "c_ideal", "q_ideal", "c_idempotent",
          "q_idempotent", "images_match", "side_effect_free"]


def row(name, E, f):
    fl = ms.ideality_flags(E, f)
    marks = ["x" if getattr(fl, k) else "." for k in FIELDS]
    print(f"{name:<28}" + " ".join(f"{m:^5}" for m in marks) + f"  consistent={fl.consistent()}")


if __name__ == "__main__":
    print(" " * 28 + " ".join(f"{k[:5]:^5}" for k in FIELDS))
    Q = Quantum()
    rng = np.random.default_rng(1)
    for E in (Pfn(), Prob(), Q):
        A = E.sample_objects()[-1]
        obs = ms.random_sharp_observable(E, rng, A, 2)
        lu = ms.luders_instrument(E, obs.labels, obs.components)
        row(f"{E.name} Lüders on {A}", E, lu)
        row(f"{E.name} disturbed Lüders", E, ms.disturb(E, rng, lu))
    row("three-level instrument", Q, ms.three_level_instrument(Q))
    row("Hadamard-disturbed", Q, ms.disturbed_instrument(Q))
    p = Q.predicate(M(2), [np.diag([0.75, 0.25])])
    row("generalized Lüders (3/4,1/4)", Q, ms.generalized_luders(Q, ["0", "1"], [p, Q.ortho(p)]))
    e = Q.predicate(M(2, 1), [0.3 * np.eye(2), np.array([[0.8]])])
    row("central multiplication", Q, ms.central_multiplication(Q, M(2, 1), [e, Q.ortho(e)]))
