"""Selmer groups of the 2-isogenies and of the 4-isogeny, from local verdicts at Sigma."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ..arith import (
    KummerClass,
    as_rational,
    class_representative,
    kummer_class,
    local_class_representative,
    sigma_set,
    span,
)
from ..cache import SolvabilityCache
from .local import LocalVerdict, local_solvable_biquadratic, local_solvable_quartic
from .spaces import DIRECTIONS, BiquadraticSpace, quartic_space

PHI4 = "phi4"
TAGS = (*DIRECTIONS, PHI4)


def tag_modulus(tag: str) -> int:
    return 4 if tag == PHI4 else 2


def _int_key(n: int, p, modulus: int) -> tuple[int, int]:
    """local_class_key for a nonzero integer, without Fraction overhead."""
    if p == "inf":
        return (0, 1 if n > 0 else -1)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    if p == 2:
        return (v % modulus, n % (8 if modulus == 2 else 16))
    g = math.gcd(modulus, p - 1)
    return (v % modulus, pow(n % p, (p - 1) // g, p))


def solve_local(tag: str, t, d, place) -> LocalVerdict:
    t, d = as_rational(t), as_rational(d)
    if tag == PHI4:
        return local_solvable_biquadratic(BiquadraticSpace(d, t), place)
    return local_solvable_quartic(quartic_space(d, t, tag), place)


def _task(args):
    tag, t, d, place = args
    v = solve_local(tag, t, d, place)
    return {
        "t": str(t),
        "d": str(d),
        "tag": tag,
        "place": str(place),
        "precision": v.depth,
        "verdict": v.solvable,
        "certificate": v.certificate,
    }


class LocalOracle:
    """Local verdicts for one t, computed once per (tag, place, local class of d)."""

    def __init__(self, t, cache: SolvabilityCache | None = None, jobs: int = 1):
        self.t = as_rational(t)
        self.sigma = sigma_set(self.t)
        self.cache = cache if cache is not None else SolvabilityCache()
        self.jobs = max(1, int(jobs))
        self._verdicts: dict[tuple, dict] = {}

    def places(self) -> list:
        # real place first, then large primes (most restrictive), 2 last
        return ["inf", *sorted(self.sigma.primes, reverse=True)]

    def _representative(self, key, place, modulus) -> Fraction:
        return local_class_representative(key, place, modulus)

    def prefetch(self, tag: str, needed: dict) -> None:
        modulus = tag_modulus(tag)
        tasks, slots = [], []
        for place, keys in needed.items():
            for key in keys:
                slot = (tag, str(place), key)
                if slot in self._verdicts:
                    continue
                d = self._representative(key, place, modulus)
                rec = self.cache.get((str(self.t), tag, str(place), str(d)))
                if rec is not None:
                    self._verdicts[slot] = rec
                else:
                    tasks.append((tag, self.t, d, place))
                    slots.append(slot)
        if not tasks:
            return
        if self.jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=self.jobs) as ex:
                results = list(ex.map(_task, tasks))
        else:
            results = [_task(a) for a in tasks]
        for slot, rec in zip(slots, results):
            self._verdicts[slot] = rec
            self.cache.put(rec)

    def record(self, tag: str, d: int, place) -> dict:
        key = _int_key(d, place, tag_modulus(tag))
        slot = (tag, str(place), key)
        if slot not in self._verdicts:
            self.prefetch(tag, {place: {key}})
        return self._verdicts[slot]

    def solvable(self, tag: str, d: int, place) -> bool:
        return self.record(tag, d, place)["verdict"]

    def filter(self, tag: str, candidates: list[int]) -> list[int]:
        modulus = tag_modulus(tag)
        alive = list(candidates)
        for place in self.places():
            needed = {place: {_int_key(d, place, modulus) for d in alive}}
            self.prefetch(tag, needed)
            alive = [d for d in alive if self.solvable(tag, d, place)]
        return alive


@dataclass(frozen=True)
class SelmerGroup:
    isogeny_name: str
    modulus: int
    elements: tuple[KummerClass, ...]
    generators: tuple[KummerClass, ...] = field(default=())

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def dimension(self) -> int:
        """log2 of the order (the F_2-dimension when modulus is 2)."""
        return self.size.bit_length() - 1

    def __contains__(self, c: KummerClass) -> bool:
        return c in set(self.elements)

    def representatives(self) -> list[int]:
        return [int(class_representative(c)) for c in self.elements]

    def projection(self, modulus: int = 2) -> frozenset[KummerClass]:
        return frozenset(c.project(modulus) for c in self.elements)


def _sort_key(c: KummerClass):
    r = class_representative(c)
    return (abs(r), r < 0)


def minimal_generators(elements, modulus: int) -> tuple[KummerClass, ...]:
    """A generating set of minimal size (Burnside basis: independent mod squares)."""
    group = set(elements)
    frattini = {g * g for g in group}
    covered = span(frattini, modulus)
    gens = []
    for g in sorted(group, key=_sort_key):
        if g not in covered:
            gens.append(g)
            covered = span(list(covered) + [g], modulus) if len(covered) < 64 else _extend(covered, g)
    return tuple(gens)


def _extend(sub, g):
    out = set(sub)
    x = g
    while x not in sub:
        out |= {x * s for s in sub}
        x = x * g
    return frozenset(out)


def make_group(name: str, modulus: int, reps) -> SelmerGroup:
    elems = sorted({kummer_class(d, modulus) for d in reps}, key=_sort_key)
    return SelmerGroup(name, modulus, tuple(elems), minimal_generators(elems, modulus))


def _sign_prime_products(primes, exps_per_prime):
    for sign in (1, -1):
        for exps in product(*[exps_per_prime] * len(primes)):
            yield sign * math.prod(p**e for p, e in zip(primes, exps))


def selmer_2isogeny(t, direction: str, oracle: LocalOracle | None = None, jobs: int = 1) -> SelmerGroup:
    if direction not in DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}")
    oracle = oracle or LocalOracle(t, jobs=jobs)
    primes = oracle.sigma.primes
    candidates = list(_sign_prime_products(primes, (0, 1)))
    return make_group(direction, 2, oracle.filter(direction, candidates))


def selmer_4isogeny(t, oracle: LocalOracle | None = None, jobs: int = 1,
                    s2: SelmerGroup | None = None) -> SelmerGroup:
    """Classes of Q^x/(Q^x)^4 on Sigma whose C'_d is everywhere locally solvable.

    Candidates are restricted to lifts of the 2-isogeny group S^(varphi_hat).
    """
    oracle = oracle or LocalOracle(t, jobs=jobs)
    s2 = s2 or selmer_2isogeny(t, "varphi_hat", oracle)
    primes = oracle.sigma.primes
    candidates = []
    for c in s2.elements:
        base = int(class_representative(c))
        for extra in product((0, 2), repeat=len(primes)):
            candidates.append(base * math.prod(p**e for p, e in zip(primes, extra)))
    return make_group(PHI4, 4, oracle.filter(PHI4, candidates))


def selmer_size_relation(s_eta: SelmerGroup, s_varphi_hat: SelmerGroup,
                         s_phi: SelmerGroup | None = None) -> tuple[int | None, int]:
    """(computed #S^(phi_hat), predicted #S^(eta) * #S^(varphi_hat) / 2)."""
    predicted = s_eta.size * s_varphi_hat.size // 2
    return (s_phi.size if s_phi else None, predicted)


def all_selmer(t, oracle: LocalOracle | None = None, jobs: int = 1, with_phi4: bool = True) -> dict[str, SelmerGroup]:
    oracle = oracle or LocalOracle(t, jobs=jobs)
    groups = {name: selmer_2isogeny(t, name, oracle) for name in DIRECTIONS}
    if with_phi4:
        groups[PHI4] = selmer_4isogeny(t, oracle, s2=groups["varphi_hat"])
    return groups
