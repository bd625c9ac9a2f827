"""Weierstrass models of the family E_t and its isogenous companions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import as_rational, sqrt_exact

E_T = "E_t"
E_PRIME = "E'_t"
E_DPRIME = "E''_t"
E_SMALL = "E_small"
E_PRIME_SMALL = "E'_small"
LABELS = (E_T, E_PRIME, E_DPRIME, E_SMALL, E_PRIME_SMALL)


class DegenerateParameterError(ValueError):
    """The parameter makes a model singular or the parametrization undefined."""


class CurveMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Curve:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction
    label: str = "E"
    t: Fraction | None = None

    @property
    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = a1 * a3 + 2 * a4
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def residual(self, x, y) -> Fraction:
        a1, a2, a3, a4, a6 = self.ainvs
        return y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)

    def contains(self, P: CurvePoint) -> bool:
        return P.is_infinity or self.residual(P.x, P.y) == 0

    def point(self, x, y) -> CurvePoint:
        x, y = as_rational(x), as_rational(y)
        if self.residual(x, y) != 0:
            raise CurveMismatchError(f"({x}, {y}) is not on {self.label}")
        return CurvePoint(self, x, y)

    def infinity(self) -> CurvePoint:
        return CurvePoint(self, None, None)

    def lift_x(self, x) -> list[CurvePoint]:
        """Rational points with the given x-coordinate."""
        x = as_rational(x)
        a1, a2, a3, a4, a6 = self.ainvs
        b = a1 * x + a3
        disc = b * b + 4 * (x**3 + a2 * x * x + a4 * x + a6)
        r = sqrt_exact(disc)
        if r is None:
            return []
        ys = sorted({(-b + r) / 2, (-b - r) / 2})
        return [CurvePoint(self, x, y) for y in ys]

    def __str__(self):
        return f"{self.label}: [{', '.join(map(str, self.ainvs))}]"


@dataclass(frozen=True)
class CurvePoint:
    curve: Curve = field(repr=False)
    x: Fraction | None
    y: Fraction | None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def label(self) -> str:
        return self.curve.label

    def coords(self):
        return None if self.is_infinity else (self.x, self.y)

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return add(self, negate(other))

    def __rmul__(self, n: int):
        return multiply(n, self)

    def __str__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


def _same_curve(P: CurvePoint, Q: CurvePoint):
    if P.curve != Q.curve:
        raise CurveMismatchError(f"points on {P.label} and {Q.label}")


def negate(P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    E = P.curve
    return CurvePoint(E, P.x, -P.y - E.a1 * P.x - E.a3)


def add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    _same_curve(P, Q)
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    E = P.curve
    a1, a2, a3, a4, _ = E.ainvs
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return E.infinity()
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(E, x3, y3)


def multiply(n: int, P: CurvePoint) -> CurvePoint:
    if n < 0:
        return multiply(-n, negate(P))
    R = P.curve.infinity()
    while n:
        if n & 1:
            R = add(R, P)
        P = add(P, P)
        n >>= 1
    return R


def order(P: CurvePoint, bound: int = 16) -> int | None:
    """Order of P if it is at most ``bound`` (Mazur: torsion orders are <= 12)."""
    Q = P
    for k in range(1, bound + 1):
        if Q.is_infinity:
            return k
        Q = add(Q, P)
    return None


# ---------------------------------------------------------------------------
# the family

@dataclass(frozen=True)
class CurveFamily:
    t: Fraction
    E_t: Curve
    E_prime: Curve
    E_doubleprime: Curve
    E_small: Curve
    E_prime_small: Curve

    @property
    def a(self) -> Fraction:
        return -1 / (4 * self.t * self.t)

    @property
    def A(self) -> Fraction:
        return (self.t * self.t + 4) / 64

    def by_label(self, label: str) -> Curve:
        return {c.label: c for c in self.curves()}[label]

    def curves(self):
        return (self.E_t, self.E_prime, self.E_doubleprime, self.E_small, self.E_prime_small)


@lru_cache(maxsize=256)
def build_family(t) -> CurveFamily:
    t = as_rational(t)
    if t == 0:
        raise DegenerateParameterError("t = 0: the factor t^2 of every discriminant vanishes")
    t2 = t * t
    a = -1 / (4 * t2)
    A = (t2 + 4) / 64
    zero, one = Fraction(0), Fraction(1)
    fam = CurveFamily(
        t,
        Curve(zero, t2 + 2, zero, one, zero, E_T, t),
        Curve(zero, -2 * (t2 - 4), zero, (t2 + 4) ** 2, zero, E_PRIME, t),
        Curve(zero, t2 - 4, zero, -4 * t2, zero, E_DPRIME, t),
        Curve(one, a, a, zero, zero, E_SMALL, t),
        Curve(one, A, A, zero, zero, E_PRIME_SMALL, t),
    )
    for c in fam.curves():
        if c.discriminant == 0:
            raise DegenerateParameterError(f"{c.label} is singular at t = {t}")
    return fam


def t_from_r(r) -> Fraction:
    r = as_rational(r)
    if r in (0, 1, -1):
        raise DegenerateParameterError(f"r = {r}: 2r^3 - 2r vanishes")
    return (r**4 - 6 * r * r + 1) / (2 * r**3 - 2 * r)


def t_from_s(s) -> Fraction:
    s = as_rational(s)
    if s == 0:
        raise DegenerateParameterError("s = 0: t = (s^2 - 1)/s is undefined")
    if s * s == 1:
        raise DegenerateParameterError(f"s = {s} gives t = 0")
    return (s * s - 1) / s


# ---------------------------------------------------------------------------
# coordinate changes between the t-models and the small models

def transform(P: CurvePoint, to_label: str) -> CurvePoint:
    E = P.curve
    fam = build_family(E.t)
    target = fam.by_label(to_label)
    if P.is_infinity:
        if (E.label, to_label) not in _SUPPORTED:
            raise ValueError(f"no transform {E.label} -> {to_label}")
        return target.infinity()
    t = fam.t
    t2 = t * t
    x, y = P.x, P.y
    key = (E.label, to_label)
    if key == (E_T, E_SMALL):
        xy = ((x + 1) / (4 * t2), (y - t * x) / (8 * t**3))
    elif key == (E_SMALL, E_T):
        u = 4 * t2 * x - 1
        xy = (u, 8 * t**3 * y + t * u)
    elif key == (E_PRIME, E_PRIME_SMALL):
        xy = ((x - (t2 + 4)) / 64, (y - 4 * x) / 512)
    elif key == (E_PRIME_SMALL, E_PRIME):
        U = 64 * x + t2 + 4
        xy = (U, 512 * y + 4 * U)
    elif to_label == E.label:
        return P
    else:
        raise ValueError(f"no transform {E.label} -> {to_label}")
    return CurvePoint(target, *xy)


_SUPPORTED = {(E_T, E_SMALL), (E_SMALL, E_T), (E_PRIME, E_PRIME_SMALL), (E_PRIME_SMALL, E_PRIME)}


# ---------------------------------------------------------------------------
# torsion

@dataclass(frozen=True)
class TorsionClass:
    shape: str
    s: Fraction | None = None
    r: Fraction | None = None
    gamma: Fraction | None = None
    generator: tuple[Fraction, Fraction] | None = None  # order-8 point on E'_small

    @property
    def order(self) -> int:
        return {"Z4": 4, "Z8": 8, "Z2xZ4": 8, "Z2xZ8": 16}[self.shape]


def torsion_classify(t) -> TorsionClass:
    """Torsion of E_t from the closed-form criteria in t, s, r."""
    t = as_rational(t)
    root = sqrt_exact(t * t + 4)
    if root is None:
        return TorsionClass("Z4")
    ss = sorted({(t + root) / 2, (t - root) / 2})
    for s in ss:
        q = sqrt_exact(s * s + 1)
        if q is not None:
            r = max(s + q, s - q)
            return TorsionClass("Z2xZ8", s=s, r=r)
    return TorsionClass("Z2xZ4", s=ss[-1])


def order8_point(gamma) -> tuple[Fraction, Fraction]:
    g = as_rational(gamma)
    k = g**4 + 4
    m = g * g + 2 * g + 2
    return (k * m / (64 * g**3), k * k * m / (1024 * g**5))


def torsion_classify_prime(t) -> TorsionClass:
    """Torsion of E'_t: Z8 exactly when t + sqrt(t^2+4) is a square for some sign."""
    t = as_rational(t)
    root = sqrt_exact(t * t + 4)
    if root is not None:
        for cand in (t + root, t - root):
            g = sqrt_exact(cand)
            if g:
                return TorsionClass("Z8", gamma=g, generator=order8_point(g))
    return TorsionClass("Z4")


def _rational_roots(coeffs) -> list[Fraction]:
    """Rational roots of a polynomial given by rational coefficients, highest first."""
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], x, domain="QQ")
    if poly.is_zero:
        raise ValueError("zero polynomial")
    roots = []
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() == 1:
            c1, c0 = fac.all_coeffs()
            r = -sympy.Rational(c0) / sympy.Rational(c1)
            roots.append(Fraction(int(r.p), int(r.q)))
    return sorted(set(roots))


def _halves(P: CurvePoint) -> list[CurvePoint]:
    """All rational Q with 2Q = P."""
    E = P.curve
    b2, b4, b6, b8 = E.b_invariants
    if P.is_infinity:
        xs = _rational_roots([Fraction(4), b2, 2 * b4, b6])
    else:
        # x(2Q) = (x^4 - b4 x^2 - 2 b6 x - b8) / (4x^3 + b2 x^2 + 2 b4 x + b6)
        x0 = P.x
        xs = _rational_roots([Fraction(1), -4 * x0, -b4 - b2 * x0, -2 * b6 - 2 * b4 * x0, -b8 - b6 * x0])
    out = []
    for x in xs:
        for Q in E.lift_x(x):
            if add(Q, Q) == P and Q not in out:
                out.append(Q)
    return out


def _division_poly_roots(E: Curve, n: int) -> list[Fraction]:
    import sympy

    x = sympy.Symbol("x")
    b2, b4, b6, b8 = (sympy.Rational(b.numerator, b.denominator) for b in E.b_invariants)
    if n == 3:
        psi = 3 * x**4 + b2 * x**3 + 3 * b4 * x**2 + 3 * b6 * x + b8
    elif n == 5:
        # psi5 = psi4 psi2^3 - psi3^3 with psi2^2 = F
        F = 4 * x**3 + b2 * x**2 + 2 * b4 * x + b6
        p3 = 3 * x**4 + b2 * x**3 + 3 * b4 * x**2 + 3 * b6 * x + b8
        p4 = (2 * x**6 + b2 * x**5 + 5 * b4 * x**4 + 10 * b6 * x**3 + 10 * b8 * x**2
              + (b2 * b8 - b4 * b6) * x + (b4 * b8 - b6**2))
        psi = sympy.expand(p4 * F * F - p3**3)
    else:
        raise ValueError(n)
    coeffs = sympy.Poly(psi, x).all_coeffs()
    return _rational_roots([Fraction(int(c.p), int(c.q)) for c in coeffs])


def torsion_points(E: Curve) -> list[CurvePoint]:
    """The rational torsion subgroup, found by repeated halving plus 3- and 5-division points.

    Valid for curves with a rational 2-torsion point (every model in the family),
    where Mazur leaves odd parts 1, 3 or 5 only.
    """
    two_power = {E.infinity()}
    frontier = [E.infinity()]
    while frontier:
        nxt = []
        for P in frontier:
            for Q in _halves(P):
                if Q not in two_power:
                    two_power.add(Q)
                    nxt.append(Q)
        frontier = nxt
    odd = {E.infinity()}
    for n in (3, 5):
        for x in _division_poly_roots(E, n):
            for P in E.lift_x(x):
                if order(P) == n:
                    odd.add(P)
    group = {add(P, Q) for P in two_power for Q in odd}
    return sorted(group, key=_point_key)


def _point_key(P: CurvePoint):
    if P.is_infinity:
        return (0, Fraction(0), Fraction(0))
    return (1, P.x, P.y)


def group_structure(points) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group of rank <= 2 given by all its points."""
    n = len(points)
    exponent = max(order(P) for P in points)
    if exponent == n:
        return (n,)
    return (n // exponent, exponent)


def shape_of(structure: tuple[int, ...]) -> str:
    return "x".join(f"Z{k}" for k in structure)
