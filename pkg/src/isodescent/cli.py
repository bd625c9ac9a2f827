"""isodescent command line: analyze, verify-paper, selmer."""
from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction

from .arith import ArithmeticDomainError, as_rational
from .cache import ENV_VAR, SolvabilityCache
from .curves import DegenerateParameterError, build_family, t_from_r, t_from_s
from .descent.local import PrecisionEscalationError
from .descent.report import DescentConfig, analyze
from .descent.selmer import PHI4, LocalOracle, selmer_2isogeny, selmer_4isogeny
from .reproduce import WHICH, run
from .serialize import dumps, to_csv, to_document, to_text

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3

ISOGENY_NAMES = {
    "phi4": PHI4,
    "eta": "eta",
    "varphi": "varphi",
    "varphi-hat": "varphi_hat",
    "eta-hat": "eta_hat",
}


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _resolve_t(args) -> tuple[Fraction, dict]:
    if args.t is not None:
        t, echo = args.t, {"t": args.t}
    elif args.r is not None:
        t, echo = t_from_r(args.r), {"r": args.r}
    else:
        t, echo = t_from_s(args.s), {"s": args.s}
    build_family(t)  # raises on singular models
    return as_rational(t), echo


def _cache(args) -> SolvabilityCache:
    return SolvabilityCache(os.environ.get(ENV_VAR) or args.cache)


def cmd_analyze(args) -> int:
    t, echo = _resolve_t(args)
    if args.fixtures and not os.path.exists(args.fixtures):
        raise FileNotFoundError(f"fixture file missing: {args.fixtures}")
    cfg = DescentConfig(height=args.height, fixtures=args.fixtures, jobs=args.jobs)
    cache = _cache(args)
    start = time.perf_counter()
    report = analyze(t, cfg, oracle=LocalOracle(t, cache=cache, jobs=args.jobs))
    echo |= {"height": args.height, "fixtures": os.path.basename(args.fixtures) if args.fixtures else None}
    extra = None
    if args.timing:
        # opt-in: timing and cache counters make output non-reproducible
        extra = {"timing": {"seconds": round(time.perf_counter() - start, 3)}, "cache": cache.stats()}
    doc = to_document(report, echo, extra)
    out = {"json": dumps, "csv": to_csv, "text": to_text}[args.format](doc)
    sys.stdout.write(out)
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    checks = run(args.which)
    for c in checks:
        print(c.line())
    failed = sum(not c.ok for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_selmer(args) -> int:
    t = as_rational(args.t)
    build_family(t)
    oracle = LocalOracle(t, cache=_cache(args), jobs=args.jobs)
    name = ISOGENY_NAMES[args.isogeny]
    g = selmer_4isogeny(t, oracle) if name == PHI4 else selmer_2isogeny(t, name, oracle)
    print(f"S^({args.isogeny}) at t = {t}: size {g.size}")
    print("generators: " + (", ".join(map(str, g.generators)) or "(none)"))
    print("elements: " + ", ".join(str(int(c.representative())) for c in g.elements))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isodescent", description="Descent via 4-isogeny on v^2 = u^3 + (t^2+2)u^2 + u.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full descent report for one parameter")
    g = a.add_mutually_exclusive_group(required=True)
    g.add_argument("--t", type=_rational)
    g.add_argument("--r", type=_rational, help="t = (r^4 - 6r^2 + 1)/(2r^3 - 2r)")
    g.add_argument("--s", type=_rational, help="t = (s^2 - 1)/s")
    a.add_argument("--height", type=int, default=100)
    a.add_argument("--fixtures", help="CSV of known points (r, d, z, w)")
    a.add_argument("--cache", help=f"solvability cache file (overridden by ${ENV_VAR})")
    a.add_argument("--format", choices=("json", "csv", "text"), default="json")
    a.add_argument("--jobs", type=int, default=1)
    a.add_argument("--timing", action="store_true", help="append timing and cache statistics")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify-paper", help="reproduce the worked examples and tables")
    v.add_argument("--which", choices=(*WHICH, "all"), default="all")
    v.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("selmer", help="one Selmer group")
    s.add_argument("--t", type=_rational, required=True)
    s.add_argument("--isogeny", choices=tuple(ISOGENY_NAMES), default="phi4")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--cache")
    s.set_defaults(func=cmd_selmer)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if getattr(args, "height", 1) < 1:
            raise ValueError("--height must be >= 1")
        if getattr(args, "jobs", 1) < 1:
            raise ValueError("--jobs must be >= 1")
        return args.func(args)
    except (DegenerateParameterError, ArithmeticDomainError, ValueError, FileNotFoundError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionEscalationError as exc:
        print(f"error: precision: {exc}", file=sys.stderr)
        return EXIT_PRECISION


if __name__ == "__main__":
    sys.exit(main())
