"""Explicit isogenies between the models of the family, and the pairing functions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .curves import (
    E_DPRIME,
    E_PRIME,
    E_PRIME_SMALL,
    E_SMALL,
    E_T,
    CurveMismatchError,
    CurvePoint,
    build_family,
)


class PoleError(ValueError):
    pass


def _check(P: CurvePoint, label: str):
    if P.label != label:
        raise CurveMismatchError(f"expected a point on {label}, got {P.label}")
    return build_family(P.curve.t)


def phi(P: CurvePoint) -> CurvePoint:
    """The 4-isogeny E_small -> E'_small."""
    fam = _check(P, E_SMALL)
    target = fam.E_prime_small
    if P.is_infinity:
        return target.infinity()
    t, a, A = fam.t, fam.a, fam.A
    x, y = P.x, P.y
    if x == 0 or x == -a:  # exactly the kernel points (0,0), (0,-a), (-a,0)
        return target.infinity()
    den = 8 * x * (x + a)
    X = -A + (t * (x + 2 * a) * (2 * y + x + a) / den) ** 2
    Y = X * X - (x + a) ** 2 * ((2 * y + x + a - 2 * t * x * (x + 2 * a)) / den) ** 4
    return CurvePoint(target, X, Y)


def pairing_g(P: CurvePoint) -> Fraction:
    """g on E'_small with f o phi_hat = g^4."""
    fam = _check(P, E_PRIME_SMALL)
    if P.is_infinity or P.x == -fam.A or P.x == -2 * fam.A:
        raise PoleError(f"g has a pole at {P}")
    t, A = fam.t, fam.A
    X, Y = P.x, P.y
    return (2 * (X + 2 * A) * (2 * Y + X + A) - t * X * (X + A)) / (4 * t * (X + A) * (X + 2 * A))


def phi_hat(P: CurvePoint) -> CurvePoint:
    """The dual 4-isogeny E'_small -> E_small."""
    fam = _check(P, E_PRIME_SMALL)
    target = fam.E_small
    # (-A, 0) is the only rational kernel point besides O; X = -2A is irrational
    if P.is_infinity or P.x == -fam.A:
        return target.infinity()
    t, a, A = fam.t, fam.a, fam.A
    X, Y = P.x, P.y
    x = -a + (X * (2 * Y + X + A) / (2 * t * (X + A) * (X + 2 * A))) ** 2
    y = x * x - pairing_g(P) ** 4
    return CurvePoint(target, x, y)


def pairing_f(P: CurvePoint) -> Fraction:
    """f(x, y) = x^2 - y on E_small, with divisor 4(0,0) - 4O."""
    _check(P, E_SMALL)
    if P.is_infinity:
        raise PoleError("f has a pole at O")
    return P.x * P.x - P.y


def varphi(P: CurvePoint) -> CurvePoint:
    """2-isogeny E_t -> E''_t with kernel {(0,0), O}."""
    fam = _check(P, E_T)
    target = fam.E_doubleprime
    if P.is_infinity or P.x == 0:
        return target.infinity()
    u, v = P.x, P.y
    return CurvePoint(target, (u + 1) ** 2 / u, (1 - u * u) / (u * u) * v)


def varphi_hat(P: CurvePoint) -> CurvePoint:
    """Dual of varphi, E''_t -> E_t, kernel {(-t^2, 0), O}."""
    fam = _check(P, E_DPRIME)
    target = fam.E_t
    t2 = fam.t * fam.t
    if P.is_infinity or P.x == -t2:
        return target.infinity()
    uu, vv = P.x, P.y
    den = uu + t2
    return CurvePoint(target, vv * vv / (4 * den * den), -(uu * uu + 2 * t2 * uu - 4 * t2) / (8 * den * den) * vv)


def eta(P: CurvePoint) -> CurvePoint:
    """2-isogeny E'_t -> E''_t with kernel {(0,0), O}."""
    fam = _check(P, E_PRIME)
    target = fam.E_doubleprime
    if P.is_infinity or P.x == 0:
        return target.infinity()
    t2 = fam.t * fam.t
    U, V = P.x, P.y
    return CurvePoint(target, V * V / (4 * U * U), ((t2 + 4) ** 2 - U * U) / (8 * U * U) * V)


def eta_hat(P: CurvePoint) -> CurvePoint:
    """Dual of eta, E''_t -> E'_t, kernel {(0,0), O}."""
    fam = _check(P, E_DPRIME)
    target = fam.E_prime
    if P.is_infinity or P.x == 0:
        return target.infinity()
    t2 = fam.t * fam.t
    uu, vv = P.x, P.y
    return CurvePoint(target, vv * vv / (uu * uu), -(uu * uu + 4 * t2) / (uu * uu) * vv)


@dataclass(frozen=True)
class IsogenyMap:
    name: str
    domain: str
    codomain: str
    degree: int
    fn: Callable[[CurvePoint], CurvePoint]

    def __call__(self, P: CurvePoint) -> CurvePoint:
        return self.fn(P)

    @property
    def dual(self) -> IsogenyMap:
        return ISOGENIES[_DUALS[self.name]]


ISOGENIES = {
    m.name: m
    for m in (
        IsogenyMap("phi", E_SMALL, E_PRIME_SMALL, 4, phi),
        IsogenyMap("phi_hat", E_PRIME_SMALL, E_SMALL, 4, phi_hat),
        IsogenyMap("varphi", E_T, E_DPRIME, 2, varphi),
        IsogenyMap("varphi_hat", E_DPRIME, E_T, 2, varphi_hat),
        IsogenyMap("eta", E_PRIME, E_DPRIME, 2, eta),
        IsogenyMap("eta_hat", E_DPRIME, E_PRIME, 2, eta_hat),
    )
}
_DUALS = {"phi": "phi_hat", "varphi": "varphi_hat", "eta": "eta_hat"}
_DUALS.update({v: k for k, v in _DUALS.items()})
