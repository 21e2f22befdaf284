"""The (theta, phi) parametrization of triangles with two rational medians."""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .exact import as_rational
from .triangle import Triangle

__all__ = [
    "ParamPoint",
    "SIGN_PAIRS",
    "buchholz_sides",
    "constraints_ok",
    "params_from_triangle",
    "c4_residual",
    "e_curve_residual",
]

# order of the sign choices (for theta, for phi) returned by params_from_triangle
SIGN_PAIRS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


class ParamPoint(NamedTuple):
    theta: Fraction
    phi: Fraction

    @classmethod
    def of(cls, theta, phi) -> "ParamPoint":
        return cls(as_rational(theta), as_rational(phi))

    def __str__(self):
        return f"({self.theta}, {self.phi})"


def buchholz_sides(p: ParamPoint, tau=1) -> tuple[Fraction, Fraction, Fraction]:
    """Side lengths (a, b, c) at (theta, phi), scaled by tau. Not filtered."""
    t, f = as_rational(p[0]), as_rational(p[1])
    tau = as_rational(tau)
    t2, f2, tf = t * t, f * f, t * f
    a = -2 * t2 * f - t * f2 + 2 * tf - f2 + t + 1
    b = t2 * f + 2 * t * f2 - t2 + 2 * tf - f + 1
    c = t2 * f - t * f2 + t2 + 2 * tf + f2 + t - f
    return tau * a, tau * b, tau * c


def constraints_ok(p: ParamPoint) -> bool:
    t, f = p
    return 0 < t < 1 and 0 < f < 1 and f + 2 * t > 1


def params_from_triangle(t: Triangle, k, l) -> list[ParamPoint]:  # noqa: E741
    """The four (theta, phi) pairs, in SIGN_PAIRS order."""
    k, l = as_rational(k), as_rational(l)  # noqa: E741
    two_s = t.a + t.b + t.c
    return [
        ParamPoint((t.c - t.a + e1 * 2 * l) / two_s, (t.b - t.c + e2 * 2 * k) / two_s)
        for e1, e2 in SIGN_PAIRS
    ]


def c4_residual(p: ParamPoint) -> Fraction:
    t, f = as_rational(p[0]), as_rational(p[1])
    return t * t * f - t * f * f + t * f + 2 * t - 2 * f - 1


def e_curve_residual(x, y) -> Fraction:
    """y^2 + xy - x^3 - x^2 + 2x; zero on the elliptic curve."""
    x, y = as_rational(x), as_rational(y)
    return y * y + x * y - x**3 - x * x + 2 * x
