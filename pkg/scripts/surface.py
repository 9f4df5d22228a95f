"""Entropy surface S_L(a) of the Ising chain, for a 3-D plot.

Writes ``a,L,S_bits`` rows; a gnuplot companion is ``surface.gp``.
"""

import argparse
import sys

import numpy as np

from chainent.cli import write_csv
from chainent.xy_exact import XYModel, entropy_profile


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a-min", type=float, default=0.2)
    ap.add_argument("--a-max", type=float, default=3.0)
    ap.add_argument("--steps", type=int, default=57)
    ap.add_argument("--lmax", type=int, default=40)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("-o", "--output", default=None)
    args = ap.parse_args()

    rows = []
    for a in np.linspace(args.a_min, args.a_max, args.steps):
        if np.isclose(a, 1.0):
            a = 1.0
        prof = entropy_profile(XYModel.from_a(float(a), 1.0), args.lmax, workers=args.workers)
        rows.extend((a, L, S) for L, S in zip(prof.L, prof.S))
    text = write_csv(["a", "L", "S_bits"], rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
