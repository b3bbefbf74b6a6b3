"""Compare Gudder's σ with the base-norm distance on random state pairs and
print the witness residuals."""
import argparse

import numpy as np

from effectus import duality as du
from effectus.instances import M, Prob, Quantum

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print("instance\td\tsigma\t2s/(1-s)\tresidual")
    for E, A in ((Prob(), Prob().obj(3)), (Quantum(), M(2)), (Quantum(), M(2, 1))):
        com = du.build_com(E, A)
        for _ in range(args.pairs):
            x = com.state_of(E.random_state(rng, A))
            y = com.state_of(E.random_state(rng, A))
            s, w = du.gudder_sigma(com, x, y)
            d = du.base_distance(com, x, y)
            print(f"{E.name}/{A}\t{float(d):.6f}\t{float(s):.6f}\t"
                  f"{float(2 * s / (1 - s)):.6f}\t{w.residual:.2e}")
