#!/usr/bin/env python3
"""Emit every figure bundle into an output directory.

Usage:
    python scripts/reproduce_figures.py [outdir] [--points N] [--samples N] [--jobs N]

The heavy bundles are the two-parameter heatmaps (fig4, fig6) and the
64-dimensional open-system trace (fig7); at the default 41-point resolution
the whole set takes a few minutes.
"""

import argparse
import os
import time

from holsim import figures


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", nargs="?", default="out/figures")
    parser.add_argument("--points", type=int, default=41)
    parser.add_argument("--samples", type=int, default=400)
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    args = parser.parse_args()

    for name in figures.figure_names():
        start = time.time()
        manifest = figures.emit_figure(name, args.outdir, points=args.points,
                                       samples=args.samples, jobs=args.jobs)
        print(f"{name}: {manifest} ({time.time() - start:.1f}s)")


if __name__ == "__main__":
    main()
