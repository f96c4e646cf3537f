#!/usr/bin/env python3
"""Emit the CSV data behind every reference figure into an output directory.

Usage: python scripts/run_figures.py [--outdir data] [--only fig5a fig9 ...]

The full set takes roughly 15-20 minutes; the N-vs-omega panels (fig3,
fig4a-d) dominate because every grid point integrates to gamma*t = 1000.
"""
import argparse
import sys
import time

from fmqubit.cli import FIGURES, figure_command


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="data")
    parser.add_argument("--only", nargs="*", choices=sorted(FIGURES), default=None)
    parser.add_argument("--tau-q", dest="tau_q", type=float, default=None)
    args = parser.parse_args()

    import os

    os.makedirs(args.outdir, exist_ok=True)
    ids = args.only if args.only else sorted(FIGURES)
    for figure_id in ids:
        start = time.time()
        paths = figure_command(figure_id, outdir=args.outdir, tau_q=args.tau_q)
        print(f"{figure_id}: {len(paths)} file(s) in {time.time() - start:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
