"""Run the randomized operator-inequality suite and print the report.

Checks the Green-operator bound chain (boundedness, monotonicity, Lipschitz
estimate, resolvent sandwich, discretization order) on seeded random
admissible states.

CLI equivalent: fhn-pulse verify ...
"""

import argparse
import time

from fhn_pulse import Grid, Params, verify_inequality_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--beta", type=float, default=0.4)
    ap.add_argument("--gamma", type=float, default=0.3)
    ap.add_argument("--d", type=float, default=0.005)
    ap.add_argument("--x-max", type=float, default=30.0)
    ap.add_argument("--n", type=int, default=4096)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    params = Params(d=args.d, tau=1.0, gamma=args.gamma, beta=args.beta)
    grid = Grid(args.x_max, args.n)
    t0 = time.time()
    report = verify_inequality_suite(
        params, grid, n_samples=args.samples, seed=args.seed
    )
    print(report.to_text())
    print(f"elapsed: {time.time() - t0:.1f}s")
    return 0 if report.all_passed else 3


if __name__ == "__main__":
    raise SystemExit(main())
