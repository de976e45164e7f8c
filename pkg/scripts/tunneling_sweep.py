#!/usr/bin/env python3
"""Transmission, level splitting, and overlap sweeps over beta.

Emits the wkb table (beta, mu_0, E_0, E_1, dE, T_0) and the overlap
matrix table for each requested well depth.
"""

import argparse
import sys

from gpdwell.cli import main as gpdwell_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a", type=float, nargs="+", default=[2.0, 5.0])
    parser.add_argument("--betas", default="0:0.5:0.1")
    parser.add_argument("--D", type=int, default=4000)
    parser.add_argument("--outdir", default="data")
    args = parser.parse_args()

    worst = 0
    for a in args.a:
        code = gpdwell_main([
            "wkb", "--a", str(a), "--betas", args.betas, "--D", str(args.D),
            "--output", f"{args.outdir}/wkb_a{a:g}.csv",
        ])
        worst = max(worst, code)
        code = gpdwell_main([
            "overlaps", "--a", str(a), "--betas", args.betas, "--D", str(args.D),
            "--output", f"{args.outdir}/overlaps_a{a:g}.csv",
        ])
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
