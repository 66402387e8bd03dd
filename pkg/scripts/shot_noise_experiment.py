#!/usr/bin/env python3
"""Shot-noise convergence of the Bell-projection estimator.

For a chosen state, simulates the projection protocol at several shot
counts and tabulates the median absolute error, which should fall off as
1/sqrt(shots) (or faster where leading-order noise cancels).
"""

import argparse

import numpy as np

import bellgamma as bg


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--state", default=None, help=".qstate.json file (default: embedded 2x3 Bell state)")
    parser.add_argument("--shots", action="append", type=int, default=None)
    parser.add_argument("--reps", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if args.state is not None:
        state = bg.load_state(args.state)
    else:
        amp = np.zeros((2, 3), dtype=complex)
        amp[0, 0] = amp[1, 1] = 1 / np.sqrt(2)
        state = bg.PureState(bg.BipartiteDims(2, 3), amp)

    shots_list = args.shots or [10**3, 10**4, 10**5, 10**6]
    _, medians = bg.shot_error_table(
        state, shots_list, reps=args.reps, seed=args.seed
    )
    print(f"{'shots':>10}  {'median_abs_error':>18}  {'x sqrt(shots)':>14}")
    for shots in shots_list:
        med = medians[shots]
        print(f"{shots:>10}  {med:>18.6e}  {med * np.sqrt(shots):>14.6e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
