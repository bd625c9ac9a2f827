"""End-to-end descent for one t: Selmer groups, point search, rank bounds, unresolved classes."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from ..arith import (
    KummerClass,
    PlaceSet,
    as_rational,
    class_representative,
    generator_rank,
    kummer_class,
    parse_factored,
    sigma_set,
    span,
)
from ..cache import SolvabilityCache
from ..curves import (
    CurvePoint,
    build_family,
    group_structure,
    shape_of,
    t_from_r,
    torsion_classify,
    torsion_classify_prime,
    torsion_points,
)
from .search import search_points
from .selmer import LocalOracle, SelmerGroup, all_selmer, selmer_size_relation, PHI4
from .spaces import delta_doubleprime, delta_prime, on_space_prime, psi_prime, space_prime


@dataclass(frozen=True)
class DescentConfig:
    height: int = 100
    fixtures: str | None = None  # fixture CSV with columns r, d, z, w; None disables fixture points
    cache: str | None = None
    jobs: int = 1
    search: bool = True


@dataclass(frozen=True)
class FoundPoint:
    d: int
    z: Fraction
    w: Fraction
    source: str  # "search" or "fixture"
    image: CurvePoint


@dataclass
class DescentReport:
    t: Fraction
    sigma: PlaceSet
    torsion: dict[str, str]
    selmer: dict[str, SelmerGroup]
    size_relation: tuple[int | None, int]
    points: list[FoundPoint]
    rank_lower: int
    rank_upper: int
    unresolved: list[KummerClass]
    height: int
    notes: list[str] = field(default_factory=list)

    @property
    def size_relation_holds(self) -> bool:
        return self.size_relation[0] == self.size_relation[1]

    @property
    def unresolved_label(self) -> str:
        return f"unresolved at height {self.height}"


# ---------------------------------------------------------------------------
# fixtures

@dataclass(frozen=True)
class FixtureRow:
    r: Fraction
    d: int
    z: Fraction
    w: Fraction
    d_text: str

    @property
    def t(self) -> Fraction:
        return t_from_r(self.r)


def default_fixture_path() -> Path:
    return Path(str(resources.files("isodescent") / "data" / "table3.csv"))


def load_fixtures(path=None) -> list[FixtureRow]:
    path = Path(path) if path else default_fixture_path()
    with path.open(encoding="utf-8", newline="") as fh:
        return [
            FixtureRow(Fraction(row["r"]), parse_factored(row["d"]), Fraction(row["z"]), Fraction(row["w"]), row["d"])
            for row in csv.DictReader(fh)
        ]


@dataclass(frozen=True)
class FixtureCheck:
    row: FixtureRow
    on_space: bool
    residual: Fraction
    on_curve: bool
    class_match: bool

    @property
    def ok(self) -> bool:
        return self.on_space and self.on_curve and self.class_match


def verify_table3(fixtures) -> list[FixtureCheck]:
    out = []
    for row in fixtures:
        space = space_prime(row.d, row.t)
        residual = space.residual(row.z, row.w)
        on_curve = match = False
        if residual == 0:
            P = psi_prime(row.z, row.w, row.d, row.t)
            on_curve = P.curve.contains(P)
            match = delta_prime(P) == kummer_class(row.d, 4)
        out.append(FixtureCheck(row, residual == 0, residual, on_curve, match))
    return out


# ---------------------------------------------------------------------------
# bounds

def rank_upper(selmer: dict[str, SelmerGroup]) -> int:
    """Both 2-isogeny pairs bound the common rank of E_t, E'_t, E''_t."""
    a = selmer["varphi"].dimension + selmer["varphi_hat"].dimension - 2
    b = selmer["eta"].dimension + selmer["eta_hat"].dimension - 2
    return min(a, b)


def rank_lower(torsion: list[CurvePoint], points: list[CurvePoint]) -> int:
    """Generators needed for the connecting images of the points modulo the torsion image.

    Both delta'' (mod squares) and delta' (mod fourth powers) give valid bounds; we keep the larger.
    """
    best = 0
    for delta in (delta_doubleprime, delta_prime):
        tors = {delta(T) for T in torsion}
        imgs = {delta(P) for P in points}
        mod = 2 if delta is delta_doubleprime else 4
        group = span(tors | imgs, mod)
        best = max(best, generator_rank(group, tors))
    return best


def rank_bounds(t, height_bound: int = 100, fixture_points=None, config: DescentConfig | None = None):
    rep = analyze(t, DescentConfig(height=height_bound) if config is None else config, fixture_points)
    return rep.rank_lower, rep.rank_upper


def sha_candidates(t, height_bound: int = 100, fixture_points=None, config: DescentConfig | None = None):
    rep = analyze(t, DescentConfig(height=height_bound) if config is None else config, fixture_points)
    return rep.unresolved


# ---------------------------------------------------------------------------
# driver

def _coset_search(S: SelmerGroup, known: frozenset, t, height: int) -> tuple[frozenset, list[FoundPoint]]:
    """Search one smallest representative per coset of S / known, growing known as points appear."""
    found = []
    searched: set[KummerClass] = set()
    for c in S.elements:  # sorted by |representative|
        if c in known or c in searched:
            continue
        searched |= {c * k for k in known}
        d = int(class_representative(c))
        pts = search_points(space_prime(d, t), height)
        if not pts:
            continue
        z, w = pts[0]
        P = psi_prime(z, w, d, t)
        found.append(FoundPoint(d, z, w, "search", P))
        known = span(list(known) + [delta_prime(P)], 4)
    return known, found


def analyze(t, config: DescentConfig = DescentConfig(), fixture_points=None, oracle: LocalOracle | None = None) -> DescentReport:
    t = as_rational(t)
    fam = build_family(t)
    notes = []
    tors = torsion_points(fam.E_t)
    torsion = {
        fam.E_t.label: shape_of(group_structure(tors)),
        fam.E_prime.label: shape_of(group_structure(torsion_points(fam.E_prime))),
        fam.E_doubleprime.label: shape_of(group_structure(torsion_points(fam.E_doubleprime))),
    }
    closed = {fam.E_t.label: torsion_classify(t).shape, fam.E_prime.label: torsion_classify_prime(t).shape}
    for label, shape in closed.items():
        if shape.replace("x", "") != torsion[label].replace("x", ""):
            notes.append(f"torsion of {label}: closed form {shape} disagrees with enumeration {torsion[label]}")

    if oracle is None:
        cache = SolvabilityCache.from_env(config.cache)
        oracle = LocalOracle(t, cache=cache, jobs=config.jobs)
    selmer = all_selmer(t, oracle)
    S = selmer[PHI4]
    relation = selmer_size_relation(selmer["eta"], selmer["varphi_hat"], S)
    if relation[0] != relation[1]:
        notes.append(f"#S^(phi_hat) = {relation[0]} but the size relation predicts {relation[1]}")

    if fixture_points is None and config.fixtures:
        fixture_points = [(row.d, row.z, row.w) for row in load_fixtures(config.fixtures) if row.t == t]
    points: list[FoundPoint] = []
    for d, z, w in fixture_points or ():
        if on_space_prime(z, w, space_prime(d, t)):
            points.append(FoundPoint(int(d), as_rational(z), as_rational(w), "fixture", psi_prime(z, w, d, t)))
        else:
            notes.append(f"fixture ({z}, {w}) is not on C'_{d}; ignored")

    known = span({delta_prime(T) for T in tors} | {delta_prime(p.image) for p in points}, 4)
    stray = [c for c in known if c not in S]
    if stray:
        notes.append(f"connecting images outside S^(phi_hat): {', '.join(map(str, stray))}")
    if config.search:
        known, found = _coset_search(S, known, t, config.height)
        points.extend(found)

    images = [p.image for p in points]
    lower = rank_lower(tors, images)
    upper = rank_upper(selmer)
    unresolved = [c for c in S.elements if c not in known]
    return DescentReport(
        t=t,
        sigma=sigma_set(t),
        torsion=torsion,
        selmer=selmer,
        size_relation=relation,
        points=points,
        rank_lower=lower,
        rank_upper=upper,
        unresolved=unresolved,
        height=config.height,
        notes=notes,
    )
