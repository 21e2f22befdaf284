import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from heronmedians.errors import DomainError
from heronmedians.exact import (
    factorize,
    format_rational,
    int_sqrt,
    is_prime,
    is_square,
    normalize_triple,
    parse_rational,
    rat_sqrt,
)


def bisect_isqrt(n):
    """Independent floor square root by bisection."""
    lo, hi = 0, 1 << (n.bit_length() // 2 + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid * mid <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


@pytest.mark.parametrize(
    "n, expected",
    [(0, (0, True)), (1225, (35, True)), (3796, (61, False)), (1, (1, True)), (2, (1, False))],
)
def test_int_sqrt_examples(n, expected):
    assert int_sqrt(n) == expected


def test_int_sqrt_negative():
    with pytest.raises(DomainError):
        int_sqrt(-1)


def test_int_sqrt_bounds_random():
    rng = random.Random(20240601)
    for _ in range(10_000):
        n = rng.randrange(0, 10 ** rng.randint(1, 40))
        root, exact = int_sqrt(n)
        assert root * root <= n < (root + 1) ** 2
        assert exact == (root * root == n)
    for _ in range(200):
        n = rng.randrange(0, 10**60)
        assert int_sqrt(n)[0] == bisect_isqrt(n)


def test_is_square_matches_int_sqrt():
    rng = random.Random(7)
    for _ in range(5000):
        n = rng.randrange(0, 10**12)
        assert is_square(n) == int_sqrt(n)[1]
        assert is_square(n * n)
    assert not is_square(-4)


@pytest.mark.parametrize(
    "q, expected",
    [(Fraction(9409, 4), Fraction(97, 2)), (Fraction(1), Fraction(1)), (Fraction(2), None), (Fraction(0), Fraction(0))],
)
def test_rat_sqrt_examples(q, expected):
    assert rat_sqrt(q) == expected


def test_rat_sqrt_negative():
    with pytest.raises(DomainError):
        rat_sqrt(Fraction(-1, 4))


def test_rat_sqrt_of_squares():
    rng = random.Random(11)
    for _ in range(1000):
        q = Fraction(rng.randint(-(10**9), 10**9), rng.randint(1, 10**9))
        assert rat_sqrt(q * q) == abs(q)


def test_rat_sqrt_non_square_denominator():
    assert rat_sqrt(Fraction(4, 3)) is None


@pytest.mark.parametrize(
    "n, expected",
    [
        (420, {2: 2, 3: 1, 5: 1, 7: 1}),
        (1, {}),
        (2137147184560080, {2: 4, 3: 1, 5: 1, 7: 1, 11: 1, 17: 1, 19: 1, 23: 1, 37: 2, 83: 1, 137: 1}),
    ],
)
def test_factorize_examples(n, expected):
    f = factorize(n)
    assert f.as_dict() == expected
    assert f.product() == n


def test_factorize_zero():
    with pytest.raises(DomainError):
        factorize(0)


def test_factorize_reassembles_random():
    rng = random.Random(3)
    for _ in range(10_000):
        n = rng.randrange(1, 10**16)
        f = factorize(n)
        assert f.product() == n
        ps = [p for p, _ in f.factors]
        assert ps == sorted(set(ps))
        assert all(e > 0 for _, e in f.factors)


def test_factorize_against_sympy():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randrange(1, 10**20)
        assert factorize(n).as_dict() == sympy.factorint(n)


def test_factorize_hard_semiprimes():
    # two ~40-bit primes: trial division alone is hopeless here
    p, q = 1099511627791, 1099511628401
    assert sympy.isprime(p) and sympy.isprime(q)
    assert factorize(p * q).as_dict() == {p: 1, q: 1}
    assert factorize(p**3).as_dict() == {p: 3}


def test_is_prime_against_sympy():
    rng = random.Random(9)
    for n in list(range(0, 2000)) + [rng.randrange(1, 10**24) for _ in range(500)]:
        assert is_prime(n) == sympy.isprime(n), n
    # strong pseudoprime to bases 2..37 but below the deterministic limit
    assert not is_prime(318665857834031151167461)
    assert is_prime(2**89 - 1)


def test_factorization_render():
    assert factorize(420).render() == "2^2·3·5·7"
    assert factorize(1).render() == "1"


@pytest.mark.parametrize(
    "sides, expected",
    [
        ((Fraction(292, 225), Fraction(204, 225), Fraction(104, 225)), (73, 51, 26, Fraction(4, 225))),
        ((3, 4, 5), (3, 4, 5, Fraction(1))),
        ((6, 8, 10), (3, 4, 5, Fraction(2))),
    ],
)
def test_normalize_triple(sides, expected):
    out = normalize_triple(*sides)
    assert out == expected
    pa, pb, pc, scale = out
    assert (scale * pa, scale * pb, scale * pc) == tuple(Fraction(x) for x in sides)


def test_normalize_triple_rejects_non_positive():
    with pytest.raises(DomainError):
        normalize_triple(1, 0, 1)
    with pytest.raises(DomainError):
        normalize_triple(Fraction(-1, 2), 1, 1)


rationals = st.fractions(max_denominator=10**12).filter(lambda q: abs(q.numerator) < 10**30)


@settings(max_examples=300, deadline=None)
@given(rationals, rationals)
def test_rational_round_trips(x, y):
    assert (x + y) - y == x
    if y != 0:
        assert (x * y) / y == x


def test_rational_text_round_trip():
    for q in (Fraction(35, 2), Fraction(-8, 7), Fraction(572)):
        assert parse_rational(format_rational(q)) == q
    assert format_rational(Fraction(572)) == "572"
    with pytest.raises(DomainError):
        parse_rational("1/0")
