"""Homogeneous spaces, their maps to the curves, and the connecting homomorphisms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..arith import KummerClass, as_rational, kummer_class
from ..curves import (
    E_DPRIME,
    E_PRIME,
    E_SMALL,
    E_T,
    CurvePoint,
    build_family,
    multiply,
    transform,
)
from ..isogeny import pairing_f


class DegenerateFiberError(ValueError):
    """The input lies on the fiber mapping to torsion (z = 0, w^2 = d or Z = 0)."""


# ---------------------------------------------------------------------------
# the four 2-isogeny directions

@dataclass(frozen=True)
class Direction:
    name: str
    curve: str  # model carrying the connecting map x -> class(x)
    shift: str  # "" or "t2": x = u + t^2 on E''

    def coefficients(self, t: Fraction) -> tuple[Fraction, Fraction]:
        t2 = t * t
        return {
            "varphi_hat": (t2 + 2, Fraction(1)),
            "eta": (t2 - 4, -4 * t2),
            "varphi": (-2 * (t2 + 2), t2 * (t2 + 4)),
            "eta_hat": (-2 * (t2 - 4), (t2 + 4) ** 2),
        }[self.name]


DIRECTIONS = {
    "varphi_hat": Direction("varphi_hat", E_T, ""),
    "eta": Direction("eta", E_DPRIME, ""),
    "varphi": Direction("varphi", E_DPRIME, "t2"),
    "eta_hat": Direction("eta_hat", E_PRIME, ""),
}


def connecting_2(P: CurvePoint, direction: str) -> KummerClass:
    """x -> class(x) on y^2 = x(x^2 + bx + c), with (0,0) -> class(c)."""
    dr = DIRECTIONS[direction]
    if P.label != dr.curve:
        raise ValueError(f"{direction} acts on points of {dr.curve}, got {P.label}")
    if P.is_infinity:
        return KummerClass.identity(2)
    t = P.curve.t
    x = P.x + (t * t if dr.shift else 0)
    if x == 0:
        return kummer_class(dr.coefficients(t)[1], 2)
    return kummer_class(x, 2)


def delta_doubleprime(P: CurvePoint) -> KummerClass:
    """Connecting map of the dual of varphi on E_t(Q); (0,0) has class 1."""
    return connecting_2(P, "varphi_hat")


def delta_prime(P: CurvePoint) -> KummerClass:
    """The 4-isogeny connecting map to Q^x/(Q^x)^4 on E_t or E_small."""
    if P.label == E_SMALL:
        if P.is_infinity:
            return KummerClass.identity(4)
        if P.x == 0 and P.y == 0:
            fam = build_family(P.curve.t)
            return kummer_class(1 / fam.a, 4)
        P = transform(P, E_T)
    if P.label != E_T:
        raise ValueError(f"delta_prime acts on E_t or E_small, got {P.label}")
    if P.is_infinity:
        return KummerClass.identity(4)
    t = P.curve.t
    u, v = P.x, P.y
    value = u * u + 2 * (t * t + 1) * u + 1 - 2 * t * v
    if value == 0:
        # only [3](-1, t) = (-1, -t) hits the zero of the generic formula
        m = _multiple_of_base(P)
        return kummer_class(-4 * t * t, 4) ** m
    return kummer_class(value, 4)


def _multiple_of_base(P: CurvePoint) -> int:
    base = P.curve.point(-1, P.curve.t)
    for m in range(4):
        if multiply(m, base) == P:
            return m
    raise ValueError(f"{P} is a zero of the connecting formula outside <(-1, t)>")


def delta_prime_via_f(P: CurvePoint) -> KummerClass:
    """Same map computed through f = x^2 - y on E_small (for cross-checks)."""
    if P.label == E_T:
        P = transform(P, E_SMALL)
    if P.is_infinity:
        return KummerClass.identity(4)
    if P.x == 0 and P.y == 0:
        return kummer_class(1 / build_family(P.curve.t).a, 4)
    return kummer_class(pairing_f(P), 4)


# ---------------------------------------------------------------------------
# spaces

@dataclass(frozen=True)
class QuarticSpace:
    """d W^2 = d^2 + b d Z^2 + c Z^4."""

    d: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        if self.d == 0:
            raise ValueError("d must be nonzero")
        if self.c == 0 or self.b * self.b - 4 * self.c == 0:
            raise ValueError("singular quartic space")

    def residual(self, Z, W) -> Fraction:
        d, b, c = self.d, self.b, self.c
        return d * W * W - (d * d + b * d * Z * Z + c * Z**4)

    def contains(self, Z, W) -> bool:
        return self.residual(as_rational(Z), as_rational(W)) == 0

    def quartic(self) -> list[Fraction]:
        """W^2 = q(Z); coefficients low to high."""
        return [self.d, Fraction(0), self.b, Fraction(0), self.c / self.d]


@dataclass(frozen=True)
class BiquadraticSpace:
    """d (w - z^2/(4t^2)) z^2 = (w^2 - d)^2."""

    d: Fraction
    t: Fraction

    def __post_init__(self):
        if self.d == 0 or self.t == 0:
            raise ValueError("d and t must be nonzero")

    def residual(self, z, w) -> Fraction:
        d, t = self.d, self.t
        return d * (w - z * z / (4 * t * t)) * z * z - (w * w - d) ** 2

    def contains(self, z, w) -> bool:
        return self.residual(as_rational(z), as_rational(w)) == 0

    def discriminant_poly(self) -> list[Fraction]:
        """D(w) = d^2 w^2 - (d/t^2)(w^2 - d)^2, low to high; s = (2t^2/d)(dw +- sqrt D)."""
        d, t2 = self.d, self.t * self.t
        return [-d**3 / t2, Fraction(0), d * d + 2 * d * d / t2, Fraction(0), -d / t2]


def space_prime(d, t) -> BiquadraticSpace:
    return BiquadraticSpace(as_rational(d), as_rational(t))


def on_space_prime(z, w, space: BiquadraticSpace) -> bool:
    return space.contains(z, w)


def space_doubleprime(d, b, c) -> QuarticSpace:
    return QuarticSpace(as_rational(d), as_rational(b), as_rational(c))


def quartic_space(d, t, direction: str = "varphi_hat") -> QuarticSpace:
    b, c = DIRECTIONS[direction].coefficients(as_rational(t))
    return QuarticSpace(as_rational(d), b, c)


def on_space(Z, W, space: QuarticSpace) -> bool:
    return space.contains(Z, W)


# ---------------------------------------------------------------------------
# maps from spaces to curves

def psi_prime(z, w, d, t) -> CurvePoint:
    z, w, d, t = map(as_rational, (z, w, d, t))
    if z == 0:
        raise DegenerateFiberError("z = 0 lies over torsion")
    fam = build_family(t)
    q = d * z**4
    u = 4 * t * t * (w * w - d) ** 2 / q
    v = 4 * t**3 * (w * w - d) * (w * w + d) / q
    return fam.E_t.point(u, v)


def psi_prime_small(z, w, d, t) -> CurvePoint:
    z, w, d = map(as_rational, (z, w, d))
    if z == 0:
        raise DegenerateFiberError("z = 0 lies over torsion")
    return build_family(t).E_small.point(w / z**2, (w * w - d) / z**4)


def eta_star(z, w, d, t) -> tuple[Fraction, Fraction]:
    z, w, d, t = map(as_rational, (z, w, d, t))
    if w * w == d:
        raise DegenerateFiberError("w^2 = d lies over torsion")
    return (-d * z * z / (2 * t * (w * w - d)), d * z * z * (w * w + d) / (2 * (w * w - d) ** 2))


def psi_doubleprime(Z, W, d, t) -> CurvePoint:
    Z, W, d = map(as_rational, (Z, W, d))
    if Z == 0:
        raise DegenerateFiberError("Z = 0 lies over torsion")
    return build_family(t).E_t.point(d / (Z * Z), -d * W / Z**3)


def quartic_to_curve(Z, W, space: QuarticSpace, direction: str, t) -> CurvePoint:
    """Image of a point on the generic quartic space on the direction's curve model."""
    Z, W = as_rational(Z), as_rational(W)
    if Z == 0:
        raise DegenerateFiberError("Z = 0 lies over torsion")
    dr = DIRECTIONS[direction]
    fam = build_family(t)
    d = space.d
    x = d / (Z * Z)
    y = -d * W / Z**3
    if dr.shift:
        x -= fam.t * fam.t
    return fam.by_label(dr.curve).point(x, y)
