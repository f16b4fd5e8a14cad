"""Betti numbers of D/Ann(v) for uniform multiplicities, next to the
Hilbert function of the explicit presentation."""

import argparse

from flowcoh.cohomring import cross_validate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-l", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=3)
    args = ap.parse_args()
    for l in range(1, args.max_l + 1):
        for n in range(1, args.max_n + 1):
            cv = cross_validate(l, n, strict=False)
            flag = "ok" if cv.ok else "MISMATCH"
            print(f"l={l} n={n} betti={cv.betti} hilbert={cv.hilbert} {flag}")


if __name__ == "__main__":
    main()
