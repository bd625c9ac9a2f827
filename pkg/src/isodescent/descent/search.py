"""Height-bounded search for rational points on the homogeneous spaces."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..arith import sqrt_exact
from .spaces import BiquadraticSpace, QuarticSpace

SIEVE_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)


@lru_cache(maxsize=None)
def _square_table(ell: int) -> np.ndarray:
    table = np.zeros(ell, dtype=bool)
    table[[(x * x) % ell for x in range(ell)]] = True
    return table


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def search_points(space, height_bound: int) -> list[tuple[Fraction, Fraction]]:
    """All points with max(|numerator|, denominator) of the free coordinate <= height_bound.

    Biquadratic spaces are searched over w = m/n and return (z, w) with z > 0;
    quartic spaces over Z = m/n and return (Z, W) with W >= 0. Points on the
    torsion fibers (z = 0, Z = 0) are skipped.
    """
    if height_bound < 1:
        raise ValueError("height bound must be >= 1")
    if isinstance(space, BiquadraticSpace):
        return _search_biquadratic(space, height_bound)
    if isinstance(space, QuarticSpace):
        return _search_quartic(space, height_bound)
    raise TypeError(type(space))


def _search_biquadratic(space: BiquadraticSpace, H: int) -> list[tuple[Fraction, Fraction]]:
    # clear the denominator of d by a fourth power: C'_d and C'_{d e^4} are isomorphic
    d0 = space.d
    e = d0.denominator
    d = int(d0 * e**4)
    N, M = space.t.numerator, space.t.denominator
    # Q(m, n) = d^2 N^2 m^2 n^2 - d M^2 (m^2 - d n^2)^2 must be a square; then
    # 2 N d (d m n N +- sqrt Q) must be a square for s = z^2
    ms = np.arange(-H, H + 1, dtype=np.int64)
    found = []
    for n in range(1, H + 1):
        keep = np.ones(ms.shape, dtype=bool)
        for ell in SIEVE_PRIMES:
            mm = ms % ell
            a = (d * d * N * N * n * n) % ell
            b = (d * M * M) % ell
            dn2 = (d * n * n) % ell
            q = (a * mm * mm - b * ((mm * mm - dn2) % ell) ** 2) % ell
            keep &= _square_table(ell)[q]
        for m in ms[keep].tolist():
            if math.gcd(m, n) != 1:
                continue
            Q = d * d * N * N * m * m * n * n - d * M * M * (m * m - d * n * n) ** 2
            r = _isqrt_exact(Q)
            if r is None:
                continue
            w = Fraction(m, n)
            for sgn in (1, -1):
                s = Fraction(2 * N * N, M * M * d) * (d * w + Fraction(sgn * r, n * n * N))
                z = sqrt_exact(s) if s != 0 else None
                if z:
                    pt = (z / e, w / e**2)  # back to the model with the original d
                    if pt not in found:
                        found.append(pt)
    return sorted(found, key=lambda p: (max(abs(p[1].numerator), p[1].denominator), p[1], p[0]))


def _search_quartic(space: QuarticSpace, H: int) -> list[tuple[Fraction, Fraction]]:
    d, b, c = space.d, space.b, space.c
    found = []
    for n in range(1, H + 1):
        for m in range(-H, H + 1):
            if m == 0 or math.gcd(m, n) != 1:
                continue
            Z = Fraction(m, n)
            W = sqrt_exact((d * d + b * d * Z * Z + c * Z**4) / d)
            if W is not None and (Z, W) not in found:
                found.append((Z, W))
    return sorted(found, key=lambda p: (max(abs(p[0].numerator), p[0].denominator), p[0]))
