#!/usr/bin/env python3
"""Sweep the critical well depth a_c and energy E_c over beta.

Produces the data behind the critical-parameter curves: a CSV table of
(beta, a_c, E_c) with the quadratic fit coefficients in the footer.
"""

import argparse
import sys

from gpdwell.cli import main as gpdwell_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--betas", default="0:4:0.5")
    parser.add_argument("--D", type=int, default=4000)
    parser.add_argument("--tol", type=float, default=1e-4)
    parser.add_argument("--output", default="data/critical_scan.csv")
    args = parser.parse_args()
    return gpdwell_main([
        "scan-critical",
        "--betas", args.betas,
        "--D", str(args.D),
        "--tol", str(args.tol),
        "--output", args.output,
    ])


if __name__ == "__main__":
    sys.exit(main())
