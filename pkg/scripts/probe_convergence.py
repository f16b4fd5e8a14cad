"""Search sufficiently close inputs and measure how fast the rescaled
multiplicities approach the flow polytope volume.

For each (l, n) prints the number of instances, how many have relative
deviation at most 2 at k = kmax, and the worst deviation.
"""

import argparse
import itertools
from collections import defaultdict
from fractions import Fraction

from flowcoh.multiplicity import MultiplicityQuery, asymptotic_volume_probe, limit_volume
from flowcoh.rootsys import Weight, fundamental_to_alpha, sufficiently_close


def instances(l, n, bound):
    hw = list(itertools.product(range(bound + 1), repeat=l))
    for lams in itertools.combinations_with_replacement(hw, n):
        lambdas = tuple(fundamental_to_alpha(l, c) for c in lams)
        s = sum(lambdas[1:], lambdas[0])
        for c in itertools.product(range(1, 4), repeat=l):
            mu = s - Weight(tuple(Fraction(x) for x in c))
            if sufficiently_close(lambdas, mu):
                yield MultiplicityQuery(lambdas, mu)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=3)
    ap.add_argument("--kmax", type=int, default=8)
    ap.add_argument("--max-n", type=int, default=3)
    args = ap.parse_args()
    stats = defaultdict(list)
    for l in (1, 2):
        for n in range(1, args.max_n + 1):
            for q in instances(l, n, args.bound):
                seq = asymptotic_volume_probe(q, args.kmax)
                stats[l, n].append(abs(seq[-1] / limit_volume(q) - 1))
    print(f"{'l':>2} {'n':>2} {'d':>3} {'count':>6} {'dev<=2':>7} {'worst':>8}")
    for (l, n), devs in sorted(stats.items()):
        d = n * l * (l + 1) // 2 - l
        print(f"{l:>2} {n:>2} {d:>3} {len(devs):>6} {sum(x <= 2 for x in devs):>7} {float(max(devs)):>8.3f}")


if __name__ == "__main__":
    main()
