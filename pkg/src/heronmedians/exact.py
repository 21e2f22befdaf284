"""Exact integer and rational arithmetic helpers.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`,
which is always kept in lowest terms with a positive denominator.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import reduce
from typing import NamedTuple, Sequence

from .errors import DomainError

Rational = Fraction

__all__ = [
    "Rational",
    "Factorization",
    "int_sqrt",
    "is_square",
    "rat_sqrt",
    "is_prime",
    "factorize",
    "normalize_triple",
    "as_rational",
    "format_rational",
    "parse_rational",
]


def as_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot treat {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not an exact rational: {text!r}") from exc


def format_rational(q) -> str:
    """Render as ``"num/den"`` (or just ``"num"`` when integral)."""
    return str(Fraction(q))


# ---------------------------------------------------------------------------
# square roots

def int_sqrt(n: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), is_exact)`` for a non-negative integer."""
    if n < 0:
        raise DomainError(f"int_sqrt of negative number {n}")
    root = math.isqrt(n)
    return root, root * root == n


# quadratic residues mod 64, 63, 65, 11; rejects ~99% of non-squares cheaply
_QR64 = frozenset(i * i % 64 for i in range(64))
_QR63 = frozenset(i * i % 63 for i in range(63))
_QR65 = frozenset(i * i % 65 for i in range(65))
_QR11 = frozenset(i * i % 11 for i in range(11))


def is_square(n: int) -> bool:
    if n < 0:
        return False
    if n & 63 not in _QR64:
        return False
    r = n % 45045  # 63 * 65 * 11
    if r % 63 not in _QR63 or r % 65 not in _QR65 or r % 11 not in _QR11:
        return False
    return int_sqrt(n)[1]


def rat_sqrt(q) -> Fraction | None:
    """Non-negative rational square root of ``q``, or ``None`` if irrational."""
    q = as_rational(q)
    if q < 0:
        raise DomainError(f"rat_sqrt of negative rational {q}")
    num, exact_num = int_sqrt(q.numerator)
    if not exact_num:
        return None
    den, exact_den = int_sqrt(q.denominator)
    if not exact_den:
        return None
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# primality and factorization

class Factorization(NamedTuple):
    """Prime factorization as increasing ``(prime, exponent)`` pairs."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def render(self, sep: str = "·") -> str:
        if not self.factors:
            return "1"
        return sep.join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors)

    def __str__(self):
        return self.render()


_SMALL_PRIMES: list[int] = []


def _small_primes(limit: int = 10_000) -> list[int]:
    if not _SMALL_PRIMES:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for i in range(2, math.isqrt(limit) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
        _SMALL_PRIMES.extend(i for i, flag in enumerate(sieve) if flag)
    return _SMALL_PRIMES


# deterministic for n < 3317044064679887385961981 (first 13 primes as bases)
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Miller-Rabin test; deterministic below ~3.3e24, probabilistic above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases: Sequence[int] = _MR_BASES
    if n >= _MR_LIMIT:
        rng = random.Random(n)
        bases = list(_MR_BASES) + [rng.randrange(2, n - 1) for _ in range(20)]
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, seed: int) -> int:
    """Return a non-trivial factor of composite odd ``n`` (Brent's rho)."""
    rng = random.Random(seed)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
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
            # the batched gcd overshot; back up one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        seed += 1
        rng.seed(seed)


def _split(n: int, out: dict[int, int]) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root, exact = int_sqrt(m)
        if exact:
            stack.extend((root, root))
            continue
        d = _brent(m, seed=m & 0xFFFF)
        stack.extend((d, m // d))


def factorize(n: int) -> Factorization:
    """Exact prime factorization of a positive integer."""
    if not isinstance(n, int) or isinstance(n, bool):
        n = int(as_rational(n))
    if n < 1:
        raise DomainError(f"factorize needs a positive integer, got {n}")
    found: dict[int, int] = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


# ---------------------------------------------------------------------------

def normalize_triple(a, b, c) -> tuple[int, int, int, Fraction]:
    """Scale three positive rationals to coprime integers.

    Returns ``(pa, pb, pc, scale)`` with ``(a, b, c) == scale * (pa, pb, pc)``.
    """
    a, b, c = (as_rational(x) for x in (a, b, c))
    if a <= 0 or b <= 0 or c <= 0:
        raise DomainError(f"normalize_triple needs positive inputs, got {(a, b, c)}")
    den = math.lcm(a.denominator, b.denominator, c.denominator)
    ia, ib, ic = (int(x * den) for x in (a, b, c))
    g = reduce(math.gcd, (ia, ib, ic))
    return ia // g, ib // g, ic // g, Fraction(g, den)
