"""Effective rank of rho_L (levels above epsilon) for a critical and a gapped chain."""

import argparse

from chainent.spectra import effective_rank_from_modes
from chainent.xy_exact import XYModel, block_modes, coupling_coefficients


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lmax", type=int, default=60)
    ap.add_argument("--epsilon", type=float, default=1e-6)
    args = ap.parse_args()

    models = {"a=1": XYModel(1.0, 1.0), "a=1.2": XYModel.from_a(1.2, 1.0)}
    couplings = {k: coupling_coefficients(m, args.lmax - 1) for k, m in models.items()}
    print("L," + ",".join(models))
    for L in range(1, args.lmax + 1):
        ranks = [effective_rank_from_modes(block_modes(m, L, g=couplings[k]), args.epsilon)
                 for k, m in models.items()]
        print(f"{L}," + ",".join(map(str, ranks)))


if __name__ == "__main__":
    main()
