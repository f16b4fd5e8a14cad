"""Compare the two rho conventions against the convolution oracle.

Single representations of rank 2, highest weights with fundamental
coordinates up to a bound, every weight of the representation.
"""

import argparse
import itertools

from flowcoh.multiplicity import MultiplicityQuery, convolution_oracle, tensor_weight_multiplicity, weight_support
from flowcoh.rootsys import fundamental_to_alpha


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=2)
    args = ap.parse_args()
    total = 0
    wrong = {"standard": 0, "simple-half-sum": 0}
    for c in itertools.product(range(args.bound + 1), repeat=2):
        lam = fundamental_to_alpha(2, c)
        for mu in weight_support(lam):
            q = MultiplicityQuery((lam,), mu)
            truth = convolution_oracle(q)
            total += 1
            for conv in wrong:
                try:
                    got = tensor_weight_multiplicity(q, rho_convention=conv)
                except ArithmeticError:
                    got = None
                wrong[conv] += got != truth
    for conv, bad in wrong.items():
        print(f"{conv:>16}: {total - bad}/{total} multiplicities correct")


if __name__ == "__main__":
    main()
