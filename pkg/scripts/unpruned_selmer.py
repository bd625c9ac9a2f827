#!/usr/bin/env python3
"""#S^(phi_hat) without the pruning by S^(varphi_hat): every Sigma-supported class mod fourth powers.

Cross-checks the pruned enumeration. For r = 15/56 this tests 2 * 4^9 = 524288 candidates.
"""
import argparse
import math
from fractions import Fraction
from itertools import product

from isodescent.curves import t_from_r
from isodescent.descent.selmer import PHI4, LocalOracle, selmer_4isogeny


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    g = ap.add_mutually_exclusive_group(required=True)
    g.add_argument("--t", type=Fraction)
    g.add_argument("--r", type=Fraction)
    args = ap.parse_args()
    t = args.t if args.t is not None else t_from_r(args.r)
    oracle = LocalOracle(t)
    primes = oracle.sigma.primes
    candidates = [s * math.prod(p**e for p, e in zip(primes, exps))
                  for s in (1, -1) for exps in product(range(4), repeat=len(primes))]
    unpruned = len(oracle.filter(PHI4, candidates))
    pruned = selmer_4isogeny(t, oracle).size
    print(f"t = {t}: {len(candidates)} candidates, unpruned {unpruned}, pruned {pruned}")


if __name__ == "__main__":
    main()
