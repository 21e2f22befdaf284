"""Exact triangle geometry and the Schubert surface.

Median naming is positional: ``k`` bisects side ``a``, ``l`` bisects ``b`` and
``m`` bisects ``c``. Operations that take "the median" always mean ``k``;
permute the sides to work with another one.

A Heron triangle with rational median ``k`` gives a point (M, P, X) with
M = cot(alpha/2), P = cot(beta/2), X = cot(gamma/2) for the angles adjacent
to that median. Such points satisfy

    M - 1/M = P - 1/P + 2 (X - 1/X).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Optional

from .errors import DomainError, InvariantViolation
from .exact import as_rational, rat_sqrt

__all__ = [
    "Triangle",
    "MedianData",
    "SchubertTriple",
    "heron_area_sq",
    "heron_area",
    "medians",
    "pythagorean",
    "circle_point",
    "brahmagupta",
    "schubert_residual",
    "schubert_from_triangle",
    "side_ratios_from_schubert",
    "schubert_symmetries",
    "is_valid_schubert",
    "schubert_normalize",
    "triangle_from_schubert",
    "solve_schubert_X",
]


@dataclass(frozen=True)
class Triangle:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        a, b, c = (as_rational(x) for x in (self.a, self.b, self.c))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if min(a, b, c) <= 0:
            raise DomainError(f"sides must be positive: {(str(a), str(b), str(c))}")
        if not (a < b + c and b < c + a and c < a + b):
            raise DomainError(
                f"sides violate the triangle inequality: {(str(a), str(b), str(c))}"
            )

    @property
    def sides(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.a, self.b, self.c

    @property
    def s(self) -> Fraction:
        return (self.a + self.b + self.c) / 2

    def scaled(self, factor) -> "Triangle":
        f = as_rational(factor)
        return Triangle(self.a * f, self.b * f, self.c * f)


class MedianData(NamedTuple):
    k_sq: Fraction
    l_sq: Fraction
    m_sq: Fraction
    k: Optional[Fraction]
    l: Optional[Fraction]  # noqa: E741
    m: Optional[Fraction]


class SchubertTriple(NamedTuple):
    M: Fraction
    P: Fraction
    X: Fraction

    @classmethod
    def of(cls, m, p, x) -> "SchubertTriple":
        return cls(as_rational(m), as_rational(p), as_rational(x))


# ---------------------------------------------------------------------------
# Heron, medians and classical generators

def heron_area_sq(t: Triangle) -> Fraction:
    s = t.s
    return s * (s - t.a) * (s - t.b) * (s - t.c)


def heron_area(t: Triangle) -> Optional[Fraction]:
    """Rational area, or ``None`` when the area is irrational."""
    return rat_sqrt(heron_area_sq(t))


def medians(t: Triangle) -> MedianData:
    a2, b2, c2 = t.a**2, t.b**2, t.c**2
    k_sq = (2 * b2 + 2 * c2 - a2) / 4
    l_sq = (2 * c2 + 2 * a2 - b2) / 4
    m_sq = (2 * a2 + 2 * b2 - c2) / 4
    return MedianData(k_sq, l_sq, m_sq, rat_sqrt(k_sq), rat_sqrt(l_sq), rat_sqrt(m_sq))


def pythagorean(m: int, n: int, tau: int = 1) -> Triangle:
    """Euclid's triple (tau(m^2-n^2), 2 tau m n, tau(m^2+n^2))."""
    if not (m > n >= 1 and tau >= 1):
        raise DomainError(f"need m > n >= 1 and tau >= 1, got {(m, n, tau)}")
    return Triangle(tau * (m * m - n * n), 2 * tau * m * n, tau * (m * m + n * n))


def circle_point(t) -> tuple[Fraction, Fraction]:
    """Rational point on the unit circle from the chord slope ``t``."""
    t = as_rational(t)
    d = 1 + t * t
    return (1 - t * t) / d, 2 * t / d


def brahmagupta(p, q, r) -> tuple[Triangle, Fraction]:
    """Heron triangle glued from two right triangles of common height 2r."""
    p, q, r = (as_rational(x) for x in (p, q, r))
    if min(p, q, r) <= 0:
        raise DomainError("p, q, r must be positive")
    if r * r == p * q:
        raise DomainError(f"degenerate parameters: r^2 = pq = {p * q}")
    a = (p * p + r * r) / p
    b = (q * q + r * r) / q
    c = (p + q) * abs(r * r - p * q) / (p * q)
    return Triangle(a, b, c), r * c


# ---------------------------------------------------------------------------
# Schubert surface

def _nonzero(s: SchubertTriple) -> None:
    if 0 in (s[0], s[1], s[2]):
        raise DomainError(f"Schubert coordinates must be non-zero: {tuple(map(str, s))}")


def schubert_residual(s: SchubertTriple) -> Fraction:
    """2MP(X^2-1) + MX(P^2-1) - PX(M^2-1); zero exactly on the surface."""
    _nonzero(s)
    M, P, X = s
    return 2 * M * P * (X * X - 1) + M * X * (P * P - 1) - P * X * (M * M - 1)


def schubert_from_triangle(t: Triangle, k, area) -> SchubertTriple:
    """Cotangents of the half-angles next to the median ``k`` (to side a)."""
    k, area = as_rational(k), as_rational(area)
    a, b, c = t.sides
    dens = (
        4 * b * k + a * a - 3 * b * b - c * c,
        4 * c * k + a * a - b * b - 3 * c * c,
        2 * a * k - b * b + c * c,
    )
    if 0 in dens:
        raise DomainError(f"degenerate configuration: zero denominator in {dens}")
    return SchubertTriple(*(4 * area / d for d in dens))


def side_ratios_from_schubert(s: SchubertTriple) -> tuple[Fraction, Fraction]:
    """(a/c, b/c). P + 1/P never vanishes for rational non-zero P."""
    _nonzero(s)
    M, P, X = s
    pp = P + 1 / P
    return 2 * (X + 1 / X) / pp, (M + 1 / M) / pp


def _recip(x):
    return 1 / x


def _neg_recip(x):
    return -1 / x


# generator name -> coordinate maps
_GENERATORS = (
    ("recip", (_recip, _recip, _recip)),
    ("negrecip_M", (_neg_recip, None, None)),
    ("negrecip_P", (None, _neg_recip, None)),
    ("negrecip_X", (None, None, _neg_recip)),
)


def schubert_symmetries(s: SchubertTriple) -> list[tuple[tuple[str, ...], SchubertTriple]]:
    """All 16 images of ``s`` under the surface's sign/reciprocal symmetries.

    The generators commute and are involutions, so each image is labelled by
    a subset of them; subsets are listed by size, then in generator order.
    """
    _nonzero(s)
    out = []
    for size in range(len(_GENERATORS) + 1):
        for word in combinations(_GENERATORS, size):
            coords = list(s)
            for _, maps in word:
                coords = [f(x) if f else x for f, x in zip(maps, coords)]
            out.append((tuple(name for name, _ in word), SchubertTriple(*coords)))
    return out


def is_valid_schubert(s: SchubertTriple) -> bool:
    """Positive coordinates and MP > 1 (the two angles at the apex sum below pi)."""
    return min(s) > 0 and s[0] * s[1] > 1


def schubert_normalize(s: SchubertTriple) -> SchubertTriple:
    """First symmetry image of ``s`` that is a valid triple."""
    for _, image in schubert_symmetries(s):
        if is_valid_schubert(image):
            return image
    raise DomainError(f"no valid positive triple reachable from {tuple(map(str, s))}")


def triangle_from_schubert(
    s: SchubertTriple, scale=1
) -> tuple[Triangle, Fraction, Fraction]:
    """Rebuild (triangle, k, area) from a positive on-surface point, with c = scale.

    k and the area are solved from the M and X equations; the P equation is
    then checked.
    """
    scale = as_rational(scale)
    _nonzero(s)
    if min(s) <= 0 or scale <= 0:
        raise DomainError("triangle_from_schubert needs a positive triple and scale")
    if s[0] * s[1] <= 1:
        raise DomainError(f"MP <= 1 for {tuple(map(str, s))}: angles do not close up")
    M, P, X = s
    ra, rb = side_ratios_from_schubert(s)
    a, b, c = ra * scale, rb * scale, scale
    t = Triangle(a, b, c)
    # M(4bk + a^2 - 3b^2 - c^2) = 4D  and  X(2ak - b^2 + c^2) = 4D
    # as  (4bM) k - 4 D = -M(a^2 - 3b^2 - c^2),  (2aX) k - 4 D = -X(c^2 - b^2)
    a11, r1 = 4 * b * M, -M * (a * a - 3 * b * b - c * c)
    a21, r2 = 2 * a * X, -X * (c * c - b * b)
    det = a21 - a11  # of [[a11, -4], [a21, -4]] divided by 4
    if det == 0:
        raise InvariantViolation("singular system for (k, area)")
    k = (r2 - r1) / det
    area = (a11 * k - r1) / 4
    if P * (4 * c * k + a * a - b * b - 3 * c * c) != 4 * area:
        raise InvariantViolation(
            f"P equation fails for {tuple(map(str, s))}; the point is off the surface"
        )
    if k <= 0 or area <= 0:
        raise InvariantViolation(f"non-positive reconstruction k={k}, area={area}")
    return t, k, area


def solve_schubert_X(M, P) -> list[Fraction]:
    """Rational X (if any) making (M, P, X) lie on the surface."""
    M, P = as_rational(M), as_rational(P)
    if M == 0 or P == 0:
        raise DomainError("M and P must be non-zero")
    # 2MP X^2 + (M(P^2-1) - P(M^2-1)) X - 2MP = 0
    qa = 2 * M * P
    qb = M * (P * P - 1) - P * (M * M - 1)
    disc = qb * qb + 4 * qa * qa
    root = rat_sqrt(disc)
    if root is None:
        return []
    return sorted({(-qb + root) / (2 * qa), (-qb - root) / (2 * qa)})
