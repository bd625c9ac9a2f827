"""Local solvability of the homogeneous spaces over Q_p and R.

Both tests walk a tree of p-adic balls w0 + p^j Z_p in two charts (|x| <= 1 and
|x| > 1 through x = 1/x'), deciding each ball exactly or splitting it into p
children. Every True verdict comes with a center that is a genuine local point
(or whose neighbourhood provably contains one); every False verdict is a proof
that the ball carries no point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..arith import (
    INF,
    PadicElement,
    is_padic_fourth_power,
    is_padic_square,
)
from .spaces import BiquadraticSpace, QuarticSpace

MAX_DEPTH = 64


class PrecisionEscalationError(RuntimeError):
    """Ball refinement did not terminate within the depth budget."""


@dataclass(frozen=True)
class LocalVerdict:
    solvable: bool
    place: int | str
    certificate: str
    depth: int = 0

    def __bool__(self):
        return self.solvable


def _integral(coeffs) -> tuple[list[int], int]:
    """Scale rational coefficients by N^2 (a square) so they become integers; return N too."""
    n = 1
    for c in coeffs:
        n = n * Fraction(c).denominator // math.gcd(n, Fraction(c).denominator)
    return [int(Fraction(c) * n * n) for c in coeffs], n


def _taylor(coeffs: list[int], w0: int, step: int) -> list[int]:
    """Coefficients of G(w0 + step*y) in y (repeated synthetic division)."""
    c = list(coeffs)
    n = len(c)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            c[k] += w0 * c[k + 1]
    scale = 1
    for i in range(1, n):
        scale *= step
        c[i] *= scale
    return c


def _v(n: int, p: int) -> int:
    """Valuation of an integer, fast path for units."""
    if n % p:
        return 0
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _isq(n: int, p: int) -> bool:
    """Whether a nonzero integer is a square in Q_p."""
    v = _v(n, p)
    if v % 2:
        return False
    u = n // p**v
    if p == 2:
        return u % 8 == 1
    return pow(u % p, (p - 1) // 2, p) == 1


def _need(p: int) -> int:
    return 3 if p == 2 else 1


# ---------------------------------------------------------------------------
# quartic: is some value of G on the ball a square?

def _square_value_in_ball(coeffs: list[int], p: int, w0: int, j: int, budget: int = MAX_DEPTH):
    """Search w in w0 + p^j Z_p with G(w) in Q_p^2. Returns (w0, j) witness or None."""
    e = _need(p)
    stack = [(w0, j)]
    while stack:
        c0, jj = stack.pop()
        if jj - j > budget:
            raise PrecisionEscalationError(f"quartic ball search at p={p} exceeded depth {budget}")
        g = _taylor(coeffs, c0, p**jj)
        if g[0] == 0 or _isq(g[0], p):
            return c0, jj
        v0 = _v(g[0], p)
        vs = [_v(x, p) for x in g[1:]]
        if min(vs) >= v0 + e:
            continue  # class of G is constant and nonsquare
        # Hensel on the unscaled derivative: a root of G in Z_p gives W = 0
        if vs[0] < INF and v0 > 2 * (vs[0] - jj):
            return c0, jj
        stack.extend((c0 + k * p**jj, jj + 1) for k in reversed(range(p)))
    return None


def _quartic_real(space: QuarticSpace) -> LocalVerdict:
    d, b, c = space.d, space.b, space.c
    lead = c / d
    if d > 0:
        return LocalVerdict(True, "inf", "Z = 0")
    if lead > 0:
        return LocalVerdict(True, "inf", "Z -> infinity")
    # q(s) = lead s^2 + b s + d on s = Z^2 >= 0, downward parabola with d < 0
    if b > 0 and d - b * b / (4 * lead) >= 0:
        return LocalVerdict(True, "inf", f"Z^2 = {-b / (2 * lead)}")
    return LocalVerdict(False, "inf", "quartic negative on R")


def local_solvable_quartic(space: QuarticSpace, place) -> LocalVerdict:
    if place == "inf":
        return _quartic_real(space)
    p = int(place)
    q = space.quartic()
    if is_padic_square(space.d, p):
        return LocalVerdict(True, p, "Z = 0")
    for chart, coeffs, start in (("A", q, (0, 0)), ("B", q[::-1], (0, 1))):
        ints, _ = _integral(coeffs)
        hit = _square_value_in_ball(ints, p, *start)
        if hit:
            w0, j = hit
            return LocalVerdict(True, p, f"chart {chart}: Z = {w0} + O({p}^{j})", j)
    return LocalVerdict(False, p, "no ball in either chart carries a point")


# ---------------------------------------------------------------------------
# biquadratic: D(w) must be a square delta^2 and s = (2t^2/d)(dw +- delta) a square

def _square_class(k: int, v: int, unit: int, p: int) -> bool:
    """Is k * p^v * unit a square in Q_p (unit known to enough digits)?"""
    vk = _v(k, p)
    if (vk + v) % 2:
        return False
    u = (k // p**vk) * unit
    if p == 2:
        return u % 8 == 1
    return pow(u % p, (p - 1) // 2, p) == 1


def _biquadratic_ball_search(space: BiquadraticSpace, p: int, chart: str):
    poly = space.discriminant_poly()
    if chart == "B":
        poly = poly[::-1]
        start = (0, 1)
    else:
        start = (0, 0)
    # integral model: with d = a/b, H = (bN)^2 D, L = N a w, delta = sqrt(H); then
    # s = (2t^2/d)(dw +- sqrt D) lies in the square class of k (L +- delta), k = 2aN
    a, bd = space.d.numerator, space.d.denominator
    H, n = _integral(poly)
    H = [x * bd * bd for x in H]
    lam = n * a
    k = 2 * a * n
    kd = k * a * bd
    e = need = _need(p)
    v_lam = _v(lam, p)
    stack = [start]
    while stack:
        w0, j = stack.pop()
        if j - start[1] > MAX_DEPTH:
            raise PrecisionEscalationError(f"biquadratic ball search at p={p} exceeded depth {MAX_DEPTH}")
        h = _taylor(H, w0, p**j)
        L0 = lam * w0
        vs = [_v(x, p) for x in h[1:]]
        vL = v_lam + j  # valuation bound on L(w) - L0 over the ball
        if h[0] == 0:
            if L0 != 0 and _isq(k * L0, p):
                return w0, j
        else:
            v0 = _v(h[0], p)
            eH = min(vs) - v0
            if eH >= e:
                if not _isq(h[0], p):
                    continue
                verdict = _stable_branch(h[0], v0, eH, L0, vL, k, kd, p, need)
                if verdict is not None:
                    if verdict:
                        return w0, j
                    continue
        # near a root of H: L dominates delta, so both roots s share the class of k*L0
        if L0 != 0:
            vL0 = _v(L0, p)
            b_delta = math.ceil(min(v0 if h[0] else INF, *vs) / 2)
            if min(b_delta, vL) >= vL0 + need:
                if not _isq(k * L0, p):
                    continue
                if _square_value_in_ball(H, p, w0, j):
                    return w0, j
                continue
        stack.extend((w0 + i * p**j, j + 1) for i in reversed(range(p)))
    return None


def _stable_branch(h0, v0, eH, L0, vL, k, kd, p, need):
    """Decide a ball on which H keeps the square class of h0; None means split.

    delta(w) = delta0 (1 + O(p^(eH - [p=2]))) and L(w) = L0 + O(p^vL), so the branch
    S = L0 +- delta0 of smaller valuation keeps its class once v(S) + need <= b.
    The other root of the quadratic in s differs from it by the class of d.
    """
    v_delta = v0 // 2
    b = min(v_delta + eH - (1 if p == 2 else 0), vL)
    target = b + 2
    rel = max(target - v_delta, 4)
    root = PadicElement(p, 0, (h0 // p**v0) % p ** (rel + 1), rel + 1).sqrt()
    mod = p**target
    delta0 = p**v_delta * root.unit
    best = None
    for S in ((L0 + delta0) % mod, (L0 - delta0) % mod):
        vS = _v(S, p) if S else INF
        if best is None or vS < best[0]:
            best = (vS, S)
    vS, S = best
    if vS == INF or vS + need > b:
        return None
    unit = S // p**vS
    return _square_class(k, vS, unit, p) or _square_class(kd, vS, unit, p)


def local_solvable_biquadratic(space: BiquadraticSpace, place) -> LocalVerdict:
    if place == "inf":
        # d > 0: (0, sqrt d); d < 0: w = 0 gives D > 0 and one positive root s
        return LocalVerdict(True, "inf", "real point at w = sqrt(d)" if space.d > 0 else "real point at w = 0")
    p = int(place)
    # (0, +-sqrt d) is singular; its branches are defined over Q_p iff d is a fourth power
    if is_padic_fourth_power(space.d, p):
        return LocalVerdict(True, p, "branch through (0, sqrt(d))")
    for chart in ("A", "B"):
        hit = _biquadratic_ball_search(space, p, chart)
        if hit:
            w0, j = hit
            var = "w" if chart == "A" else "1/w"
            return LocalVerdict(True, p, f"chart {chart}: {var} = {w0} + O({p}^{j})", j)
    return LocalVerdict(False, p, "no ball in either chart carries a point")
