"""Saturation of S_L off criticality: S_max and entanglement length versus a."""

import argparse

from chainent.scaling import saturation_analysis
from chainent.xy_exact import XYModel, entropy_profile


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=float, nargs="+", default=[0.5, 0.8, 0.9, 0.95, 1.05, 1.1, 1.25, 2.0])
    ap.add_argument("--lmax", type=int, default=200)
    args = ap.parse_args()

    print("a,converged,S_max,entanglement_length")
    for a in args.a:
        est = saturation_analysis(entropy_profile(XYModel.from_a(a, 1.0), args.lmax))
        print(f"{a:g},{est.converged},{est.S_max:.6f},{est.entanglement_length}")


if __name__ == "__main__":
    main()
