import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from isodescent.curves import build_family, t_from_r  # noqa: E402
from isodescent.descent.report import DescentConfig, analyze, load_fixtures  # noqa: E402
from isodescent.descent.selmer import LocalOracle, all_selmer  # noqa: E402

TABLE_R = ("15/56", "24/65", "11/69", "7/88", "12/97")


@pytest.fixture(scope="session")
def fam8():
    return build_family(8)


@pytest.fixture(scope="session")
def fam32():
    return build_family(Fraction(3, 2))


@pytest.fixture(scope="session")
def report8():
    return analyze(8, DescentConfig(height=16))


@pytest.fixture(scope="session")
def report32():
    return analyze(Fraction(3, 2), DescentConfig(height=3))


@pytest.fixture(scope="session")
def table_oracles():
    """One LocalOracle per table row; they memoize local verdicts across tests."""
    return {r: LocalOracle(t_from_r(Fraction(r))) for r in TABLE_R}


@pytest.fixture(scope="session")
def table_selmer(table_oracles):
    """All Selmer groups (2- and 4-isogeny) for the five table rows, computed once."""
    return {r: all_selmer(o.t, o) for r, o in table_oracles.items()}


@pytest.fixture(scope="session")
def table_reports(table_oracles, fixtures):
    """Reports for the table rows with the fixture points and no search."""
    out = {}
    for r, o in table_oracles.items():
        pts = [(f.d, f.z, f.w) for f in fixtures if f.t == o.t]
        out[r] = analyze(o.t, DescentConfig(search=False), fixture_points=pts, oracle=o)
    return out


@pytest.fixture(scope="session")
def report_11_69(table_oracles, fixtures):
    """The unresolved-class report for r = 11/69 at height 1000 (about 20 s)."""
    o = table_oracles["11/69"]
    pts = [(f.d, f.z, f.w) for f in fixtures if f.t == o.t]
    return analyze(o.t, DescentConfig(height=1000), fixture_points=pts, oracle=o)


@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()


# ---------------------------------------------------------------------------
# local solvability against the brute-force oracle, shared by the local and acceptance tests

ORACLE_T = (Fraction(8), Fraction(3, 2), Fraction(5))
ORACLE_P = (2, 3, 5, 7, 11, 13, 17)
ORACLE_D = [d for d in range(-50, 51) if d]


def one_per_class(p, modulus):
    """One d in ORACLE_D per local class; the verdicts only depend on that class."""
    from isodescent.arith import local_class_key

    seen = {}
    for d in ORACLE_D:
        seen.setdefault(local_class_key(d, p, modulus), d)
    return list(seen.values())


class OracleComparison:
    """Lazily compares engine and oracle per (kind, t, p) and remembers the outcome."""

    def __init__(self):
        self.results = {}

    def run(self, kind, t, p):
        key = (kind, t, p)
        if key not in self.results:
            self.results[key] = self._compare(kind, t, p)
        return self.results[key]

    @staticmethod
    def _compare(kind, t, p):
        from isodescent.descent.local import local_solvable_biquadratic, local_solvable_quartic
        from isodescent.descent.spaces import DIRECTIONS, quartic_space, space_prime
        from oracles import biquadratic_solvable, quartic_solvable

        checked, bad = 0, []
        if kind == "quartic":
            for name in DIRECTIONS:
                for d in one_per_class(p, 2):
                    sp = quartic_space(d, t, name)
                    got = local_solvable_quartic(sp, p).solvable
                    checked += 1
                    if got != quartic_solvable(sp.d, sp.b, sp.c, p):
                        bad.append((name, d, got))
        else:
            for d in one_per_class(p, 4):
                got = local_solvable_biquadratic(space_prime(d, t), p).solvable
                checked += 1
                if got != biquadratic_solvable(d, t, p):
                    bad.append((d, got))
        return checked, bad

    def all(self):
        return {(k, t, p): self.run(k, t, p) for k in ("quartic", "biquadratic") for t in ORACLE_T for p in ORACLE_P}


@pytest.fixture(scope="session")
def oracle_comparison():
    return OracleComparison()


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion, printed even when output is captured

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
