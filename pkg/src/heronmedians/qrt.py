"""The QRT map attached to Somos-5 and its invariant curve.

The map sends (U, V) to (V, (1 + 1/V)/U). It preserves
J = U + V + 1/U + 1/V + 1/(UV); the canonical S and T orbits both lie on
J = 5, i.e. on U^2 V + U V^2 + U + V - 5UV + 1 = 0.
"""
from __future__ import annotations

import math
from fractions import Fraction

try:  # GMP multiplication is much faster on orbit-sized integers
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover
    _big = int
from typing import Iterator, NamedTuple

from .errors import DomainError, ZeroDivisorError
from .exact import as_rational
from .somos import SomosSequence, ratio_u

__all__ = [
    "PlanePoint",
    "qrt_apply",
    "qrt_inverse",
    "invariant_J",
    "curve_residual",
    "orbit",
    "orbit_from_somos",
    "quadrant_signature",
    "curve_samples",
]


class PlanePoint(NamedTuple):
    U: Fraction
    V: Fraction

    @classmethod
    def of(cls, u, v) -> "PlanePoint":
        return cls(as_rational(u), as_rational(v))


def _check(p) -> PlanePoint:
    p = p if isinstance(p, PlanePoint) else PlanePoint.of(*p)
    if p.U == 0 or p.V == 0:
        raise DomainError(f"point {tuple(map(str, p))} has a zero coordinate")
    return p


def qrt_apply(p: PlanePoint) -> PlanePoint:
    p = _check(p)
    return PlanePoint(p.V, (1 + 1 / p.V) / p.U)


def qrt_inverse(p: PlanePoint) -> PlanePoint:
    p = _check(p)
    return PlanePoint((1 + 1 / p.U) / p.V, p.U)


# J and the curve residual are evaluated over one common denominator: along
# an orbit the coordinates reach thousands of digits and term-by-term
# Fraction arithmetic pays a big gcd per operation. With U = a/b, V = c/d:
#   abcd * J        = (ad + bc)(ac + bd) + (bd)^2
#   (bd)^2 * resid  = abcd * (J - 5)

def _parts(u: Fraction, v: Fraction):
    a, b, c, d = (_big(x) for x in (u.numerator, u.denominator, v.numerator, v.denominator))
    ac, bd = a * c, b * d
    return (a * d + b * c) * (ac + bd), ac, bd


def invariant_J(p: PlanePoint) -> Fraction:
    """U + V + 1/U + 1/V + 1/(UV)."""
    u, v = _check(p)
    cross, ac, bd = _parts(u, v)
    return Fraction(int(cross + bd * bd), int(ac * bd))


def curve_residual(p: PlanePoint) -> Fraction:
    """U^2 V + U V^2 + U + V - 5UV + 1; zero exactly on the level curve J = 5."""
    u, v = as_rational(p[0]), as_rational(p[1])
    cross, ac, bd = _parts(u, v)
    bd2 = bd * bd
    return Fraction(int(cross - 5 * ac * bd + bd2), int(bd2))


def orbit(start: PlanePoint, steps: int) -> list[PlanePoint]:
    """``steps`` forward iterates of the map, including the start point."""
    if steps < 0:
        raise DomainError("steps must be non-negative")
    p = PlanePoint.of(*start)
    out = [p]
    for i in range(steps):
        if p.U == 0 or p.V == 0:
            raise ZeroDivisorError(f"orbit reached a zero coordinate at step {i}", index=i)
        p = qrt_apply(p)
        out.append(p)
    return out


def orbit_from_somos(seq: SomosSequence, n_from: int, n_to: int) -> list[PlanePoint]:
    """Points (u_n, u_{n+1}) for n_from <= n <= n_to."""
    if n_to < n_from:
        return []
    us = [ratio_u(seq, n) for n in range(n_from, n_to + 2)]
    return [PlanePoint(us[i], us[i + 1]) for i in range(len(us) - 1)]


def quadrant_signature(points) -> list[tuple[int, int]]:
    """Sign pattern (+1/-1 per coordinate) along a list of points."""
    return [(1 if p[0] > 0 else -1, 1 if p[1] > 0 else -1) for p in points]


def curve_samples(
    u_min=-10, u_max=10, count: int = 2001
) -> Iterator[tuple[Fraction, float]]:
    """Sample the J = 5 curve by solving for V at evenly spaced rational U.

    The curve is quadratic in V: U V^2 + (U^2 - 5U + 1) V + (U + 1) = 0. The
    discriminant sign is decided exactly; only the emitted roots are floats.
    """
    u_min, u_max = as_rational(u_min), as_rational(u_max)
    if count < 2 or u_max <= u_min:
        raise DomainError("need count >= 2 and u_max > u_min")
    step = (u_max - u_min) / (count - 1)
    for i in range(count):
        u = u_min + i * step
        a, b, c = u, u * u - 5 * u + 1, u + 1
        if a == 0:
            yield u, float(-c / b)
            continue
        disc = b * b - 4 * a * c
        if disc < 0:
            continue
        root = math.sqrt(disc)
        for sign in ((1,) if disc == 0 else (1, -1)):
            yield u, (-float(b) + sign * root) / (2 * float(a))
