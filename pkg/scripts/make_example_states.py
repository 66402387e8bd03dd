#!/usr/bin/env python3
"""Write a few example .qstate.json files for trying out the CLI."""

import pathlib
import sys

import numpy as np

import bellgamma as bg


def main() -> int:
    out_dir = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path("examples_states")
    out_dir.mkdir(parents=True, exist_ok=True)
    dims = bg.BipartiteDims(2, 3)

    amp = np.zeros((2, 3), dtype=complex)
    amp[0, 0] = amp[1, 1] = 1 / np.sqrt(2)
    bg.save_state(out_dir / "bell_2x3.qstate.json", bg.PureState(dims, amp))

    bg.save_state(out_dir / "product_2x3.qstate.json", bg.max_entangled(1, dims))
    bg.save_state(out_dir / "random_2x3.qstate.json", bg.random_pure(dims, 2024))
    bg.save_state(out_dir / "mixed_2x3.qstate.json", bg.random_density(dims, 2024))
    bg.save_state(
        out_dir / "max_entangled_3x3.qstate.json",
        bg.max_entangled(3, bg.BipartiteDims(3, 3)),
    )

    for path in sorted(out_dir.glob("*.qstate.json")):
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
