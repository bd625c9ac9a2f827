"""Exact arithmetic: rationals, factorization, Kummer classes, p-adic residues."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Rational = Fraction

INF = 10**9  # stands in for v_p(0)


class ArithmeticDomainError(ValueError):
    pass


class InsufficientPrecisionError(ArithmeticError):
    """A p-adic decision is not determined at the precision carried."""


def as_rational(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, str):
        return Fraction(q.strip())
    return Fraction(q)


# ---------------------------------------------------------------------------
# primality and factorization

_SMALL_PRIMES_LIMIT = 10**6


@lru_cache(maxsize=None)
def _small_primes() -> tuple[int, ...]:
    n = _SMALL_PRIMES_LIMIT
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i in range(n + 1) if sieve[i])


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, 13 fixed bases beyond."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, seed: int) -> int:
    rng = random.Random(seed)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out)
        _split(r, out)
        return
    seed = 1
    while True:
        f = _pollard_brent(n, seed)
        if 1 < f < n:
            break
        seed += 1
    _split(f, out)
    _split(n // f, out)


@lru_cache(maxsize=4096)
def _factor_positive(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
            if n > 1 and is_prime(n):
                break
    if n > 1:
        _split(n, out)
    return tuple(sorted(out.items()))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a nonzero integer.

    Negative inputs carry the key ``-1`` with exponent 1, so the product of
    ``p**e`` over the result always recomposes ``n``.
    """
    n = int(n)
    if n == 0:
        raise ArithmeticDomainError("cannot factor 0")
    out = dict(_factor_positive(abs(n)))
    if n < 0:
        out = {-1: 1, **out}
    return out


def prime_divisors(n: int) -> list[int]:
    return [p for p in factorize(n) if p > 0]


def vp(q, p: int) -> int:
    """p-adic valuation of an integer or rational; INF for zero."""
    if isinstance(q, Fraction):
        if q == 0:
            return INF
        return vp(q.numerator, p) - vp(q.denominator, p)
    q = int(q)
    if q == 0:
        return INF
    v = 0
    while q % p == 0:
        q //= p
        v += 1
    return v


def unit_part(q: Fraction, p: int) -> Fraction:
    """q / p^v_p(q)."""
    v = vp(q, p)
    return q / Fraction(p) ** v


# ---------------------------------------------------------------------------
# bad places

@dataclass(frozen=True)
class PlaceSet:
    primes: tuple[int, ...]
    includes_infinity: bool = True

    def __post_init__(self):
        if 2 not in self.primes or not self.includes_infinity:
            raise ArithmeticDomainError("a place set always contains 2 and infinity")
        if list(self.primes) != sorted(set(self.primes)):
            raise ArithmeticDomainError("primes must be sorted and distinct")

    def places(self) -> list:
        return [*self.primes, "inf"]

    def __str__(self):
        return "{" + ", ".join(map(str, self.primes)) + ", inf}"


def sigma_set(t) -> PlaceSet:
    t = as_rational(t)
    if t == 0:
        raise ArithmeticDomainError("t must be nonzero")
    q = t * t + 4
    primes = {2}
    for n in (t.numerator, t.denominator, q.numerator, q.denominator):
        if abs(n) > 1:
            primes.update(prime_divisors(n))
    return PlaceSet(tuple(sorted(primes)))


# ---------------------------------------------------------------------------
# squares

def sqrt_exact(q) -> Fraction | None:
    q = as_rational(q)
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def is_square(q) -> bool:
    return sqrt_exact(q) is not None


# ---------------------------------------------------------------------------
# Kummer classes Q^x / (Q^x)^k

@dataclass(frozen=True, order=True)
class KummerClass:
    modulus: int
    sign: int
    exponents: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.modulus not in (2, 4):
            raise ArithmeticDomainError("modulus must be 2 or 4")
        if self.sign not in (1, -1):
            raise ArithmeticDomainError("sign must be +1 or -1")
        for p, e in self.exponents:
            if not 0 < e < self.modulus:
                raise ArithmeticDomainError(f"exponent {e} of {p} not reduced")
        if [p for p, _ in self.exponents] != sorted({p for p, _ in self.exponents}):
            raise ArithmeticDomainError("exponent map must be sorted by prime")

    @classmethod
    def from_map(cls, modulus: int, sign: int, exps: dict[int, int]) -> KummerClass:
        return cls(modulus, sign, tuple(sorted((p, e % modulus) for p, e in exps.items() if e % modulus)))

    @classmethod
    def identity(cls, modulus: int) -> KummerClass:
        return cls(modulus, 1, ())

    def exponent(self, p: int) -> int:
        return dict(self.exponents).get(p, 0)

    def __mul__(self, other: KummerClass) -> KummerClass:
        if self.modulus != other.modulus:
            raise ArithmeticDomainError("modulus mismatch")
        exps = dict(self.exponents)
        for p, e in other.exponents:
            exps[p] = exps.get(p, 0) + e
        return KummerClass.from_map(self.modulus, self.sign * other.sign, exps)

    def inverse(self) -> KummerClass:
        return KummerClass.from_map(self.modulus, self.sign, {p: -e for p, e in self.exponents})

    def __pow__(self, n: int) -> KummerClass:
        sign = self.sign if n % 2 else 1
        return KummerClass.from_map(self.modulus, sign, {p: e * n for p, e in self.exponents})

    def is_identity(self) -> bool:
        return self.sign == 1 and not self.exponents

    def project(self, modulus: int = 2) -> KummerClass:
        if self.modulus % modulus:
            raise ArithmeticDomainError("can only project onto a coarser quotient")
        return KummerClass.from_map(modulus, self.sign, dict(self.exponents))

    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.exponents)

    def representative(self) -> Fraction:
        return class_representative(self)

    def __str__(self):
        return format_factored(self.sign, self.exponents)


def kummer_class(q, modulus: int) -> KummerClass:
    q = as_rational(q)
    if q == 0:
        raise ArithmeticDomainError("0 has no Kummer class")
    exps: dict[int, int] = {}
    for p, e in factorize(q.numerator).items():
        if p > 0:
            exps[p] = exps.get(p, 0) + e
    for p, e in factorize(q.denominator).items():
        exps[p] = exps.get(p, 0) - e
    return KummerClass.from_map(modulus, 1 if q > 0 else -1, exps)


def class_representative(c: KummerClass) -> Fraction:
    """The integer sign * prod p^e with 0 <= e < modulus."""
    return Fraction(c.sign * math.prod(p**e for p, e in c.exponents))


def format_factored(sign: int, exponents) -> str:
    parts = ["-1"] if sign < 0 else []
    parts += [f"{p}^{e}" if e != 1 else str(p) for p, e in exponents]
    return "*".join(parts) if parts else "1"


def parse_factored(text: str) -> int:
    """Inverse of the ``s*p1^e1*...`` notation; bases need not be prime."""
    value = 1
    for tok in text.replace(" ", "").split("*"):
        base, _, exp = tok.partition("^")
        value *= int(base) ** (int(exp) if exp else 1)
    return value


def parse_class(text: str, modulus: int) -> KummerClass:
    return kummer_class(parse_factored(text), modulus)


def span(gens, modulus: int) -> frozenset[KummerClass]:
    """All products of the given classes (a finite 2-group)."""
    elems = {KummerClass.identity(modulus)}
    for g in gens:
        if g in elems:
            continue
        new = set(elems)
        frontier = set(elems)
        while frontier:
            nxt = {x * g for x in frontier} - new
            new |= nxt
            frontier = nxt
        elems = new
    return frozenset(elems)


def f2_basis(classes) -> list[KummerClass]:
    """A minimal generating set of the subgroup spanned by mod-2 classes."""
    basis: list[KummerClass] = []
    seen = {KummerClass.identity(2)}
    for c in sorted(classes, key=lambda c: (abs(class_representative(c)), c.sign < 0)):
        if c not in seen:
            basis.append(c)
            seen |= {c * s for s in seen}
    return basis


def generator_rank(group, sub) -> int:
    """Minimal number of generators of group/sub for 2-groups: log2 |G / (sub + 2G)|."""
    group = frozenset(group)
    doubled = {g * g for g in group}
    mod = 2 if not group else next(iter(group)).modulus
    denom = span(list(sub) + list(doubled), mod)
    return int(round(math.log2(len(group) / len(denom))))


# ---------------------------------------------------------------------------
# local square / fourth-power classes

def _sqrt_mod_prime(a: int, p: int) -> int:
    """Tonelli-Shanks; a must be a nonzero quadratic residue mod odd p."""
    a %= p
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def is_padic_square(q, p: int) -> bool:
    """Exact test whether a nonzero rational is a square in Q_p."""
    q = as_rational(q)
    if q == 0:
        return True
    if p == "inf":
        return q > 0
    v = vp(q, p)
    if v % 2:
        return False
    u = unit_part(q, p)
    num, den = u.numerator, u.denominator
    if p == 2:
        return num * den % 8 == 1
    return pow(num * den % p, (p - 1) // 2, p) == 1


def is_padic_fourth_power(q, p: int) -> bool:
    q = as_rational(q)
    if q == 0:
        return True
    if p == "inf":
        return q > 0
    if vp(q, p) % 4:
        return False
    u = unit_part(q, p)
    if p == 2:
        return u.numerator * u.denominator % 16 == 1
    r = u.numerator * pow(u.denominator, -1, p) % p
    return pow(r, (p - 1) // math.gcd(4, p - 1), p) == 1


def local_class_key(q, p, modulus: int) -> tuple[int, int]:
    """Key of q in Q_p^x / (Q_p^x)^modulus.

    Odd p: (v mod k, power residue symbol u^((p-1)/g)), g = gcd(k, p-1).
    p = 2: (v mod k, u mod 8 or 16). The real place is keyed by sign.
    """
    q = as_rational(q)
    if p == "inf":
        return (0, 1 if q > 0 else -1)
    v = vp(q, p)
    u = unit_part(q, p)
    if p == 2:
        r = u.numerator * pow(u.denominator, -1, 16) % 16
        return (v % modulus, r % (8 if modulus == 2 else 16))
    r = u.numerator * pow(u.denominator, -1, p) % p
    g = math.gcd(modulus, p - 1)
    return (v % modulus, pow(r, (p - 1) // g, p))


@lru_cache(maxsize=None)
def _smallest_unit_with_symbol(p: int, modulus: int, symbol: int) -> int:
    g = math.gcd(modulus, p - 1)
    u = 1
    while pow(u, (p - 1) // g, p) != symbol:
        u += 1
    return u


def local_class_representative(key: tuple[int, int], p, modulus: int) -> Fraction:
    """A small integer p^v * u lying in the local class with the given key."""
    v, sym = key
    if p == "inf":
        return Fraction(sym)
    if p == 2:
        return Fraction(2**v * sym)
    return Fraction(p**v * _smallest_unit_with_symbol(p, modulus, sym))


def local_class_keys(p, modulus: int) -> list[tuple[int, int]]:
    """All keys of Q_p^x / (Q_p^x)^modulus."""
    if p == "inf":
        return [(0, 1), (0, -1)]
    if p == 2:
        units = range(1, 8 if modulus == 2 else 16, 2)
        return [(v, u) for v in range(modulus) for u in units]
    g = math.gcd(modulus, p - 1)
    syms: set[int] = set()
    u = 1
    while len(syms) < g:
        syms.add(pow(u, (p - 1) // g, p))
        u += 1
    return [(v, s) for v in range(modulus) for s in sorted(syms)]


# ---------------------------------------------------------------------------
# bounded-precision p-adic numbers

@dataclass(frozen=True)
class PadicElement:
    """p^valuation * unit, with the unit known modulo p^precision.

    An element with unit 0 is zero to absolute precision ``valuation``.
    """

    prime: int
    valuation: int
    unit: int
    precision: int

    FLOOR = 1

    @property
    def absolute_precision(self) -> int:
        return self.valuation + self.precision

    def is_zero(self) -> bool:
        return self.unit == 0

    @classmethod
    def from_rational(cls, q, p: int, absolute: int) -> PadicElement:
        q = as_rational(q)
        if q == 0:
            return cls(p, absolute, 0, 0)
        v = vp(q, p)
        prec = absolute - v
        if prec < 1:
            return cls(p, absolute, 0, 0)
        u = unit_part(q, p)
        mod = p**prec
        return cls(p, v, u.numerator * pow(u.denominator, -1, mod) % mod, prec)

    @classmethod
    def _normalize(cls, p: int, value: int, base_v: int, absolute: int, floor: int) -> PadicElement:
        # value is an integer standing for value * p^base_v, known mod p^(absolute - base_v)
        span_ = absolute - base_v
        value %= p**span_
        if value == 0:
            if floor > 0:
                raise InsufficientPrecisionError("cancellation below the floor precision")
            return cls(p, absolute, 0, 0)
        v = 0
        while value % p == 0:
            value //= p
            v += 1
        prec = span_ - v
        if prec < floor:
            raise InsufficientPrecisionError(f"relative precision {prec} below floor {floor}")
        return cls(p, base_v + v, value % p**prec, prec)

    def _as_int(self, base_v: int) -> int:
        return self.unit * self.prime ** (self.valuation - base_v)

    def add(self, other: PadicElement, floor: int | None = None) -> PadicElement:
        floor = self.FLOOR if floor is None else floor
        p = self.prime
        absolute = min(self.absolute_precision, other.absolute_precision)
        base = min(self.valuation, other.valuation, absolute)
        s = 0
        if not self.is_zero():
            s += self._as_int(base)
        if not other.is_zero():
            s += other._as_int(base)
        return self._normalize(p, s, base, absolute, floor)

    def __add__(self, other):
        return self.add(other)

    def __neg__(self):
        if self.is_zero():
            return self
        return PadicElement(self.prime, self.valuation, (-self.unit) % self.prime**self.precision, self.precision)

    def __sub__(self, other):
        return self.add(-other)

    def __mul__(self, other: PadicElement) -> PadicElement:
        p = self.prime
        if self.is_zero() or other.is_zero():
            absolute = min(
                self.absolute_precision + (other.valuation if not other.is_zero() else other.absolute_precision),
                other.absolute_precision + (self.valuation if not self.is_zero() else self.absolute_precision),
            )
            return PadicElement(p, absolute, 0, 0)
        prec = min(self.precision, other.precision)
        mod = p**prec
        return PadicElement(p, self.valuation + other.valuation, self.unit * other.unit % mod, prec)

    def scale(self, q) -> PadicElement:
        """Multiply by an exact nonzero rational."""
        q = as_rational(q)
        p = self.prime
        if self.is_zero():
            return PadicElement(p, self.valuation + vp(q, p), 0, 0)
        u = unit_part(q, p)
        mod = p**self.precision
        unit = self.unit * u.numerator * pow(u.denominator, -1, mod) % mod
        return PadicElement(p, self.valuation + vp(q, p), unit, self.precision)

    def sqrt(self) -> PadicElement:
        """A square root; requires the element to be a determined nonzero square."""
        if not padic_sqrt_exists(self):
            raise ArithmeticDomainError("not a square")
        p, prec = self.prime, self.precision
        if p == 2:
            r = 1
            for i in range(3, prec):
                if (r * r - self.unit) % 2 ** (i + 1):
                    r += 2 ** (i - 1)
            rprec = prec - 1
            return PadicElement(2, self.valuation // 2, r % 2**rprec, rprec)
        r = _sqrt_mod_prime(self.unit, p)
        k = 1
        while k < prec:
            k = min(2 * k, prec)
            mod = p**k
            r = (r - (r * r - self.unit) * pow(2 * r, -1, mod)) % mod
        return PadicElement(p, self.valuation // 2, r % p**prec, prec)


def padic_sqrt_exists(x: PadicElement) -> bool:
    """Whether x is a square in Q_p, decided from the digits carried."""
    if x.is_zero():
        raise InsufficientPrecisionError("element is zero at this precision")
    if x.valuation % 2:
        return False
    if x.prime == 2:
        if x.precision < 3:
            raise InsufficientPrecisionError("need 3 unit digits at p = 2")
        return x.unit % 8 == 1
    return pow(x.unit % x.prime, (x.prime - 1) // 2, x.prime) == 1
