#!/usr/bin/env python3
"""Quantum FOTOC growth and classical trajectories near the separatrix.

One dynamics run seeded at the unstable point plus a fan of classical
trajectories at energies straddling the separatrix E = 0.
"""

import argparse
import sys

from gpdwell.cli import main as gpdwell_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a", type=float, default=10.0)
    parser.add_argument("--tmax", type=float, default=0.6)
    parser.add_argument("--outdir", default="data")
    args = parser.parse_args()

    worst = gpdwell_main([
        "dynamics", "--a", str(args.a), "--x0", "0", "--p0", "0",
        "--tmax", str(args.tmax),
        "--output", f"{args.outdir}/fotoc_a{args.a:g}.csv",
    ])
    # Confined (E < 0), separatrix-grazing, and free (E > 0) orbits.
    for label, x0, p0 in [("confined", 1.5, 0.0),
                          ("grazing", 0.05, 0.0),
                          ("free", 1.5, 4.0)]:
        code = gpdwell_main([
            "classical", "--a", str(args.a), "--x0", str(x0), "--p0", str(p0),
            "--tmax", "10",
            "--output", f"{args.outdir}/classical_{label}_a{args.a:g}.csv",
        ])
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
