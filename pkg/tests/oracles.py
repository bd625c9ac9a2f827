"""Brute-force oracles, written without any of the package's p-adic machinery.

Everything here works on integers by direct evaluation and exhaustive residue
enumeration. It is slow and naive on purpose.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def val(n, p: int) -> int | None:
    """p-adic valuation of a nonzero rational; None for 0."""
    n = Fraction(n)
    if n == 0:
        return None
    v, a, b = 0, n.numerator, n.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


@lru_cache(maxsize=None)
def squares_mod(m: int) -> frozenset:
    return frozenset(x * x % m for x in range(m))


def unit_part(q, p: int) -> Fraction:
    q = Fraction(q)
    return q / Fraction(p) ** val(q, p)


def brute_is_square(q, p: int) -> bool:
    """Square in Q_p, via an exhaustive table of squares mod p (odd) or mod 8."""
    q = Fraction(q)
    if q == 0:
        return True
    if val(q, p) % 2:
        return False
    u = unit_part(q, p)
    m = 8 if p == 2 else p
    r = u.numerator * pow(u.denominator, -1, m) % m
    return r in squares_mod(m)


def brute_is_fourth_power(q, p: int) -> bool:
    q = Fraction(q)
    if val(q, p) % 4:
        return False
    u = unit_part(q, p)
    m = 32 if p == 2 else p
    r = u.numerator * pow(u.denominator, -1, m) % m
    return r in frozenset(pow(x, 4, m) for x in range(m) if x % p)


def _integral(coeffs) -> list[int]:
    """Clear denominators by a square factor, so square classes of values are kept."""
    den = 1
    for c in coeffs:
        den = math.lcm(den, Fraction(c).denominator)
    return [int(Fraction(c) * den * den) for c in coeffs]


def _ev(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deriv(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _v_int(n: int, p: int, cap: int) -> int:
    if n == 0:
        return cap
    v = 0
    while n % p == 0 and v < cap:
        n //= p
        v += 1
    return v


def has_root_in_Zp(coeffs, p: int, cap: int = 40, start=((0, 0),), units: bool = False) -> bool:
    """Exhaustive residue search for a root in Z_p (coefficients low to high, integers).

    Residues r mod p^k survive while f(r) = 0 mod p^k; a survivor with
    v(f(r)) > 2 v(f'(r)) lifts by Hensel's lemma.
    """
    df = _deriv(coeffs)
    frontier = list(start)
    for _ in range(cap):
        nxt = []
        for r, k in frontier:
            for digit in range(p):
                if units and k == 0 and digit == 0:
                    continue
                x = r + digit * p**k
                fx = _ev(coeffs, x)
                if fx == 0:
                    return True
                vf = _v_int(fx, p, 4 * cap)
                if vf < k + 1:
                    continue
                vd = _v_int(_ev(df, x), p, 4 * cap)
                if vf > 2 * vd:
                    return True
                nxt.append((x, k + 1))
        if not nxt:
            return False
        frontier = nxt
    raise RuntimeError(f"root search at p={p} did not settle within {cap} digits")


def has_root_in_Qp(coeffs, p: int) -> bool:
    """Nonzero root in Q_p of a rational polynomial with nonzero constant term.

    A root of valuation m must make two terms tie in valuation, so m runs over the
    integral pairwise slopes of the coefficient valuations (a superset of the Newton
    polygon slopes). For each m we look for a unit root y of f(p^m y).
    """
    f = _integral(coeffs)
    vs = {i: _v_int(c, p, 10**6) for i, c in enumerate(f) if c}
    slopes = set()
    for i in vs:
        for j in vs:
            if i < j and (vs[i] - vs[j]) % (j - i) == 0:
                slopes.add((vs[i] - vs[j]) // (j - i))
    for m in sorted(slopes):
        scaled = [Fraction(c) * Fraction(p) ** (m * i) for i, c in enumerate(f)]
        h = _integral(scaled)
        g = math.gcd(*h)
        h = [c // g for c in h]  # content does not move roots, but would keep every residue alive
        if has_root_in_Zp(h, p, units=True):
            return True
    return False


def quartic_solvable(d, b, c, p: int, cap: int = 30) -> bool:
    """d W^2 = d^2 + b d Z^2 + c Z^4 over Q_p, by residue-class enumeration in Z (two charts)."""
    d, b, c = map(Fraction, (d, b, c))
    q = [d * d, 0, b * d, 0, c]  # d W^2 = q(Z)  <=>  (dW)^2 = d q(Z)
    dq = _integral([d * x for x in q])
    for poly, start in ((dq, ((0, 0),)), (dq[::-1], ((0, 1),))):
        frontier = list(start)
        for _ in range(cap):
            nxt = []
            for r, k in frontier:
                for digit in range(p):
                    x = r + digit * p**k
                    fx = _ev(poly, x)
                    if fx == 0 or brute_is_square(fx, p) and _stable(fx, k + 1, p):
                        return True
                    if fx != 0 and _stable(fx, k + 1, p):
                        continue  # the whole ball keeps this non-square class
                    nxt.append((x, k + 1))
            frontier = nxt
            if not frontier:
                break
        else:
            # surviving balls shrink onto roots of the quartic, where W = 0
            if has_root_in_Zp(poly, p, start=frontier):
                return True
    return False


def _stable(value: int, k: int, p: int) -> bool:
    """On a ball of radius p^-k the value moves by multiples of p^k; is its square class fixed?"""
    e = 3 if p == 2 else 1
    return _v_int(value, p, 10**6) + e <= k


def biquadratic_solvable(d, t, p: int, K: int | None = None) -> bool:
    """C'_d over Q_p by sampling exact rational w in a valuation window.

    A sample certifies a point when D(w) is a square and z^4 - (4t^2 w) z^2 + (4t^2/d)(w^2-d)^2
    has a root z != 0 in Q_p. Returns False when no sample works (one-sided by nature).
    """
    d, t = Fraction(d), Fraction(t)
    if brute_is_fourth_power(d, p):
        return True
    if K is None:
        K = {2: 10, 3: 6, 5: 4, 7: 3}.get(p, 2)
    M = 2 + val(4 * t * t * d, p) if val(4 * t * t * d, p) > 0 else 2
    samples = [Fraction(0)]
    for m in range(-M - 2, M + 3):
        for u in range(1, p**K):
            if u % p:
                samples.append(Fraction(p) ** m * u)
                samples.append(-Fraction(p) ** m * u)
    for w in samples:
        D = d * d * w * w - d / (t * t) * (w * w - d) ** 2
        if D == 0 or not brute_is_square(D, p):
            continue
        if w * w == d:
            # z^2 (z^2 - 4t^2 w) = 0 and z = 0 is the singular point
            if brute_is_square(4 * t * t * w, p):
                return True
            continue
        g = [(4 * t * t / d) * (w * w - d) ** 2, 0, -4 * t * t * w, 0, 1]
        if has_root_in_Qp(g, p):
            return True
    return False
