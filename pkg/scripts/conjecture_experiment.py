#!/usr/bin/env python3
"""Larger sweep of the supremum-equals-concurrence comparison.

Writes one CSV row per trial and prints a per-dims summary.  Equivalent to
``bellgamma conjecture`` but with a heavier default optimizer budget, for
poking at the conjecture rather than gating on it.
"""

import argparse
import csv
import sys

import bellgamma as bg


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", action="append", default=None, metavar="MxN")
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int, default=6)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out", default="conjecture_rows.csv")
    args = parser.parse_args()

    dims_list = args.dims or ["2x2", "2x3", "3x3"]
    opts = bg.OptimizerOptions(restarts=args.restarts, max_sweeps=40, seed=args.seed)
    report = bg.conjecture_sweep(
        dims_list,
        args.trials,
        args.seed,
        bg.CONCURRENCE_MATCHED,
        opts=opts,
        threads=args.threads,
    )

    with open(args.out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["dims", "trial", "i_concurrence", "gamma_schmidt", "best_gamma",
             "deviation", "overshoot", "converged"]
        )
        for r in report.rows:
            writer.writerow(
                [r.dims, r.trial, f"{r.i_concurrence:.17g}",
                 f"{r.schmidt_gamma:.17g}", f"{r.best_gamma:.17g}",
                 f"{r.deviation:.17g}", int(r.overshoot), int(r.converged)]
            )

    for s in report.summaries:
        print(
            f"{s.dims}: trials={s.trials} max|best - i_concurrence|="
            f"{s.max_deviation:.3e} overshoots={s.overshoots}"
        )
    print(f"rows written to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
