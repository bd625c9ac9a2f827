#!/usr/bin/env python3
"""Compare the local solvability engine with the brute-force oracle in tests/oracles.py.

One d per local class is tested for each (t, p); the verdicts only depend on that class.
"""
import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from conftest import OracleComparison  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("kind", choices=("quartic", "biquadratic"))
    ap.add_argument("--t", type=Fraction, nargs="+", default=[Fraction(8), Fraction(3, 2), Fraction(5)])
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3, 5, 7, 11, 13, 17])
    args = ap.parse_args()
    cmp = OracleComparison()
    total = bad = 0
    for t in args.t:
        for p in args.p:
            start = time.perf_counter()
            checked, mism = cmp.run(args.kind, t, p)
            total += checked
            bad += len(mism)
            print(f"t={t} p={p}: {checked} classes, {len(mism)} mismatches ({time.perf_counter() - start:.1f} s)"
                  + (f" {mism}" if mism else ""))
    print(f"{total} instances, {bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
