import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isodescent.arith import (
    ArithmeticDomainError,
    InsufficientPrecisionError,
    KummerClass,
    PadicElement,
    class_representative,
    factorize,
    format_factored,
    generator_rank,
    is_padic_fourth_power,
    is_padic_square,
    is_prime,
    is_square,
    kummer_class,
    local_class_key,
    local_class_keys,
    local_class_representative,
    padic_sqrt_exists,
    parse_class,
    parse_factored,
    sigma_set,
    span,
    sqrt_exact,
)
from oracles import brute_is_square, squares_mod

# bounded so that factoring stays cheap
nonzero_rationals = st.builds(
    Fraction,
    st.integers(-10**9, 10**9).filter(bool),
    st.integers(1, 10**9),
)


def test_factorize_examples():
    assert factorize(4890480) == {2: 4, 3: 1, 5: 1, 7: 1, 41: 1, 71: 1}
    assert factorize(1) == {}
    assert factorize(-68) == {-1: 1, 2: 2, 17: 1}


def test_factorize_needs_rho():
    # two primes above the trial-division bound
    p, q = 1000003, 10000000019
    assert factorize(p * q) == {p: 1, q: 1}
    assert factorize(5651521**2 + 4 * 4890480**2) == {3361: 4}


def test_factorize_zero_rejected():
    with pytest.raises(ArithmeticDomainError):
        factorize(0)


def test_factorize_recomposes_random():
    rng = random.Random(20240601)
    for _ in range(1000):
        n = rng.randrange(1, 10**12) * rng.choice((1, -1))
        f = factorize(n)
        sign = -1 if f.pop(-1, 0) else 1
        assert sign * math.prod(p**e for p, e in f.items()) == n
        assert all(is_prime(p) for p in f)


@pytest.mark.parametrize("t, primes", [
    (8, (2, 17)),
    (Fraction(3, 2), (2, 3, 5)),
    (Fraction(-5651521, 4890480), (2, 3, 5, 7, 41, 71, 1231, 3361, 4591)),
])
def test_sigma_set(t, primes):
    s = sigma_set(t)
    assert s.primes == primes
    assert s.includes_infinity
    assert s.places()[-1] == "inf"


def test_sigma_rejects_zero():
    with pytest.raises(ArithmeticDomainError):
        sigma_set(0)


def test_kummer_class_examples():
    assert kummer_class(Fraction(-1, 256), 4) == KummerClass.from_map(4, -1, {})
    assert kummer_class(32, 4) == KummerClass.from_map(4, 1, {2: 1})
    c = kummer_class(Fraction(-1, 9), 4)
    assert c == KummerClass.from_map(4, -1, {3: 2})
    assert class_representative(c) == -9
    assert class_representative(KummerClass.identity(4)) == 1
    assert class_representative(KummerClass.from_map(4, 1, {2: 2})) == 4
    with pytest.raises(ArithmeticDomainError):
        kummer_class(0, 2)


def test_class_normalization():
    # exponents are reduced mod the modulus and zero exponents vanish
    c = KummerClass.from_map(2, 1, {3: 2, 5: 1})
    assert c.exponents == ((5, 1),)
    assert kummer_class(-5651521**2, 4) == parse_class("-1*5651521^2", 4)
    assert kummer_class(-5651521**2, 2) == KummerClass.identity(2) * kummer_class(-1, 2)


def test_factored_round_trip():
    assert parse_factored("-1*5651521^2") == -5651521**2
    assert parse_factored("11*15*57*135723^2") == 11 * 15 * 57 * 135723**2
    c = kummer_class(-9, 4)
    assert str(c) == "-1*3^2"
    assert parse_class(str(c), 4) == c
    assert format_factored(1, ()) == "1"


@pytest.mark.parametrize("q, root", [(Fraction(25, 4), Fraction(5, 2)), (0, 0), (Fraction(1, 9), Fraction(1, 3))])
def test_sqrt_exact(q, root):
    assert sqrt_exact(q) == root
    assert is_square(q)


@pytest.mark.parametrize("q", [68, -4, Fraction(2, 9)])
def test_not_square(q):
    assert sqrt_exact(q) is None
    assert not is_square(q)


@given(nonzero_rationals, nonzero_rationals, st.sampled_from((2, 4)))
@settings(max_examples=1000, deadline=None)
def test_kummer_homomorphism(a, b, k):
    assert kummer_class(a * b, k) == kummer_class(a, k) * kummer_class(b, k)


@given(nonzero_rationals, nonzero_rationals, st.sampled_from((2, 4)))
@settings(max_examples=300, deadline=None)
def test_kummer_kills_powers(a, r, k):
    assert kummer_class(a * r**k, k) == kummer_class(a, k)


@given(nonzero_rationals)
@settings(max_examples=1000, deadline=None)
def test_projection_to_squares(q):
    assert kummer_class(q, 4).project(2) == kummer_class(q, 2)


@given(nonzero_rationals, st.sampled_from((2, 4)))
@settings(max_examples=300, deadline=None)
def test_representative_round_trip(q, k):
    c = kummer_class(q, k)
    assert kummer_class(class_representative(c), k) == c
    assert (c * c.inverse()).is_identity()


def test_span_and_generator_rank():
    g = span([kummer_class(-1, 2), kummer_class(2, 2)], 2)
    assert len(g) == 4
    sub = {kummer_class(-1, 2)}
    assert generator_rank(g, sub) == 1
    g4 = span([kummer_class(2, 4)], 4)
    assert len(g4) == 4
    assert generator_rank(g4, set()) == 1


# ---------------------------------------------------------------------------
# local classes and p-adic squares

def test_padic_sqrt_examples():
    assert padic_sqrt_exists(PadicElement.from_rational(16, 17, 6))
    assert not padic_sqrt_exists(PadicElement.from_rational(3, 2, 6))
    assert not padic_sqrt_exists(PadicElement.from_rational(10, 5, 6))


def test_padic_sqrt_needs_precision():
    with pytest.raises(InsufficientPrecisionError):
        padic_sqrt_exists(PadicElement.from_rational(1, 2, 2))
    with pytest.raises(InsufficientPrecisionError):
        padic_sqrt_exists(PadicElement.from_rational(0, 5, 4))


PRIMES_BELOW_50 = [p for p in range(2, 50) if is_prime(p)]


@pytest.mark.parametrize("p", PRIMES_BELOW_50)
def test_padic_sqrt_matches_exhaustive_squares(p):
    """Every residue a mod p^k (p^k <= 2*10^5) against the table of squares mod p^k."""
    for k in range(1, 7):
        m = p**k
        if m > 2 * 10**5:
            break
        table = squares_mod(m)
        for a in range(1, m):
            x = PadicElement.from_rational(a, p, k)
            try:
                got = padic_sqrt_exists(x)
            except InsufficientPrecisionError:
                # only allowed when k digits cannot settle it
                assert a % p == 0 or (p == 2 and k < 3), (p, k, a)
                continue
            assert got == (a in table), (p, k, a)


def test_padic_sqrt_determined_when_precise():
    # with enough digits the decision is always made
    for p in (2, 3, 5, 17):
        for a in range(1, 200):
            if a % p:
                padic_sqrt_exists(PadicElement.from_rational(a, p, 8))


@given(nonzero_rationals, st.sampled_from(PRIMES_BELOW_50))
@settings(max_examples=500, deadline=None)
def test_is_padic_square_matches_oracle(q, p):
    assert is_padic_square(q, p) == brute_is_square(q, p)


@given(nonzero_rationals, st.sampled_from((2, 3, 5, 13, 17, 29)))
@settings(max_examples=300, deadline=None)
def test_padic_sqrt_lifts(q, p):
    x = PadicElement.from_rational(q, p, 12)
    if x.is_zero() or x.precision < 4:
        return
    if padic_sqrt_exists(x):
        r = x.sqrt()
        sq = r * r
        assert sq.valuation == x.valuation
        mod = p ** min(sq.precision, x.precision)
        assert (sq.unit - x.unit) % mod == 0


@pytest.mark.parametrize("p", [2, 3, 5, 13, 17])
@pytest.mark.parametrize("k", [2, 4])
def test_local_class_keys_partition(p, k):
    keys = local_class_keys(p, k)
    assert len(set(keys)) == len(keys)
    for key in keys:
        rep = local_class_representative(key, p, k)
        assert local_class_key(rep, p, k) == key
    # classes of x and x * y^k coincide
    for x in range(1, 60):
        for y in (1, 2, 3, 7):
            assert local_class_key(x * y**k, p, k) == local_class_key(x, p, k)


@pytest.mark.parametrize("p", [2, 3, 5, 13, 17])
def test_fourth_powers(p):
    for x in range(1, 40):
        assert is_padic_fourth_power(x**4, p)
        assert is_padic_fourth_power(Fraction(x**4, 625 if p != 5 else 81), p)
    assert not is_padic_fourth_power(p**2, p)
