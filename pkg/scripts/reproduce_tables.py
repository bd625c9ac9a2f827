#!/usr/bin/env python3
"""Run every reproduction check and print one line per check (same as `isodescent verify-paper`)."""
import argparse
import sys

from isodescent.reproduce import WHICH, run


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--which", choices=(*WHICH, "all"), default="all")
    args = ap.parse_args()
    checks = run(args.which)
    for c in checks:
        print(c.line())
    failed = [c for c in checks if not c.ok]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
