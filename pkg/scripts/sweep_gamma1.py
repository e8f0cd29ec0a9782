"""Tabulate the inhibitor-strength threshold gamma1(beta) over a beta range.

Writes a CSV with both evaluation routes (direct formula and the potential
bisection) so their agreement can be checked downstream.

CLI equivalent: fhn-pulse sweep --beta-min ... --beta-max ... --steps ...
"""

import argparse
import csv

from fhn_pulse import gamma1_direct, gamma1_via_potential


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--beta-min", type=float, default=0.34)
    ap.add_argument("--beta-max", type=float, default=0.49)
    ap.add_argument("--steps", type=int, default=151)
    ap.add_argument("--out", default="gamma1_sweep.csv")
    args = ap.parse_args()

    if not (0.0 < args.beta_min < args.beta_max < 0.5):
        ap.error("need 0 < beta-min < beta-max < 1/2")

    rows = []
    for k in range(args.steps):
        t = k / (args.steps - 1) if args.steps > 1 else 0.0
        beta = args.beta_min + t * (args.beta_max - args.beta_min)
        g_direct = gamma1_direct(beta)
        g_pot = gamma1_via_potential(beta)
        rows.append((beta, g_direct, g_pot, abs(g_direct - g_pot)))

    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["beta", "gamma1_direct", "gamma1_potential", "abs_diff"])
        for row in rows:
            w.writerow([f"{val:.17g}" for val in row])

    worst = max(r[3] for r in rows)
    print(f"wrote {args.out}: {len(rows)} rows, max |direct - potential| = {worst:.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
