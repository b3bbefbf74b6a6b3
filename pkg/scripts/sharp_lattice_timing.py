"""Time the orthomodular-lattice suite on seeded projection pairs."""
import argparse
import time

from effectus.instances import M, Quantum
from effectus.logic import law_suite_sharp_lattice

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    Q = Quantum()
    for A in (M(2), M(3), M(2, 2)):
        t = time.perf_counter()
        report = law_suite_sharp_lattice(Q, [A], pairs=args.pairs, seed=args.seed)
        print(f"{A}: passed={report.passed} in {time.perf_counter() - t:.2f}s")
        if not report.passed:
            print(report.summary())
