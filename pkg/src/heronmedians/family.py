"""The infinite family of Heron triangles with two rational medians.

Each member is built from the canonical Somos-5 sequences S and T at indices
n..n+4. With

    X = S1 S2^3 S3 T2,   Y = S0^2 S1 T3 T4^2,   Z = T1 T2^3 T3 S2

(subscripts offset by n) the sides are |X + Y|, |Y - Z| and |Z - X|; the
reduced side lengths are the monomials themselves and the semiperimeter is
|S3 S4^2 T0^2 T1|.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .buchholz import constraints_ok, params_from_triangle
from .errors import DomainError, InvariantViolation, ZeroDivisorError
from .exact import Factorization, factorize, is_square
from .somos import canonical_S, canonical_T
from .triangle import SchubertTriple, Triangle, heron_area_sq, medians, schubert_from_triangle

__all__ = [
    "FamilyTriangle",
    "SignedFamilyData",
    "family_signed",
    "family_triangle",
    "schubert_conjectural",
    "schubert_geometric",
    "schubert_signed",
    "semiperimeter_product",
    "factor_table_row",
    "verify_family",
    "FamilyReport",
]


@dataclass(frozen=True)
class FamilyTriangle:
    n: int
    a: int
    b: int
    c: int
    k: Fraction
    l: Fraction  # noqa: E741
    area: int
    s: Fraction
    s_minus_a: Fraction
    s_minus_b: Fraction
    s_minus_c: Fraction

    @property
    def triangle(self) -> Triangle:
        return Triangle(self.a, self.b, self.c)

    @property
    def sides(self) -> tuple[int, int, int]:
        return self.a, self.b, self.c


@dataclass(frozen=True)
class SignedFamilyData:
    """Family quantities before absolute values are taken."""

    X: int
    Y: int
    Z: int
    a: int
    b: int
    c: int
    k: Fraction
    l: Fraction  # noqa: E741
    area: int


def _window(n: int):
    if n < 1:
        raise DomainError(f"family index must be >= 1, got {n}")
    S = [canonical_S(n + j) for j in range(5)]
    T = [canonical_T(n + j) for j in range(5)]
    return S, T


def family_signed(n: int) -> SignedFamilyData:
    S, T = _window(n)
    X = S[1] * S[2] ** 3 * S[3] * T[2]
    Y = S[0] ** 2 * S[1] * T[3] * T[4] ** 2
    Z = T[1] * T[2] ** 3 * T[3] * S[2]
    k = Fraction(S[4] * T[4] * (T[0] * T[1] ** 2 * T[2] - S[0] * S[1] ** 2 * S[2]), 2)
    l = Fraction(S[0] * T[0] * (T[2] * T[3] ** 2 * T[4] - S[2] * S[3] ** 2 * S[4]), 2)  # noqa: E741
    area = S[0] * S[1] * S[2] ** 2 * S[3] * S[4] * T[0] * T[1] * T[2] ** 2 * T[3] * T[4]
    return SignedFamilyData(X, Y, Z, X + Y, Y - Z, Z - X, k, l, area)


def family_triangle(n: int) -> FamilyTriangle:
    """n-th triangle of the family, in lowest terms."""
    sd = family_signed(n)
    a, b, c = abs(sd.a), abs(sd.b), abs(sd.c)
    g = math.gcd(a, b, c)
    # the formulas are already primitive; the division guards index drift
    k, l, area = abs(sd.k) / g, abs(sd.l) / g, Fraction(abs(sd.area), g * g)
    a, b, c = a // g, b // g, c // g
    if area.denominator != 1:
        raise InvariantViolation(f"family n={n}: area {area} not integral after gcd {g}")
    s = Fraction(a + b + c, 2)
    return FamilyTriangle(n, a, b, c, k, l, area.numerator, s, s - a, s - b, s - c)


def semiperimeter_product(n: int) -> int:
    """|S_{n+3} S_{n+4}^2 T_n^2 T_{n+1}|."""
    S, T = _window(n)
    return abs(S[3] * S[4] ** 2 * T[0] ** 2 * T[1])


def schubert_conjectural(n: int) -> tuple[Fraction, Fraction]:
    """(M_a, M_b) as Somos ratios."""
    S, T = _window(n)
    den_a = S[0] * T[1] * T[2] ** 2
    den_b = S[2] * S[3] * T[2] * T[3]
    if den_a == 0 or den_b == 0:
        raise ZeroDivisorError(f"conjectural Schubert formula has zero denominator at n={n}", n)
    m_a = Fraction(-S[1] * S[2] ** 2 * T[0], den_a)
    m_b = Fraction(S[1] * S[4] * T[1] * T[4], den_b)
    return m_a, m_b


def schubert_geometric(n: int) -> tuple[SchubertTriple, SchubertTriple]:
    """Schubert triples of the positive triangle for median k and median l.

    The l-triple uses the relabelled triangle (b, c, a), the labelling under
    which M_b matches.
    """
    ft = family_triangle(n)
    t_a = ft.triangle
    t_b = Triangle(ft.b, ft.c, ft.a)
    return (
        schubert_from_triangle(t_a, ft.k, ft.area),
        schubert_from_triangle(t_b, ft.l, ft.area),
    )


def _half_angle_triple(a, b, c, k, area) -> SchubertTriple:
    # same formulas as triangle.schubert_from_triangle, but signed inputs allowed
    return SchubertTriple(
        Fraction(4 * area) / (4 * b * k + a * a - 3 * b * b - c * c),
        Fraction(4 * area) / (4 * c * k + a * a - b * b - 3 * c * c),
        Fraction(4 * area) / (2 * a * k - b * b + c * c),
    )


def schubert_signed(n: int) -> tuple[SchubertTriple, SchubertTriple]:
    """Schubert triples from the signed quantities; their M's equal (M_a, M_b)."""
    sd = family_signed(n)
    return (
        _half_angle_triple(sd.a, sd.b, sd.c, sd.k, sd.area),
        _half_angle_triple(sd.b, sd.c, sd.a, sd.l, sd.area),
    )


def factor_table_row(n: int) -> tuple[Factorization, ...]:
    """Factorizations of (s, s-a, s-b, s-c, area) in the signed labelling.

    The columns are (|X+Y-Z|, |Z|, |X|, |Y|); as a set they coincide with the
    Heron factors of the positive triangle.
    """
    sd = family_signed(n)
    quantities = (abs(sd.X + sd.Y - sd.Z), abs(sd.Z), abs(sd.X), abs(sd.Y), abs(sd.area))
    return tuple(factorize(q) for q in quantities)


@dataclass
class FamilyReport:
    n: int
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [name for name, good in self.checks.items() if not good]


def verify_family(n: int, strict: bool = True) -> FamilyReport:
    """Check every claim made about the n-th family member."""
    ft = family_triangle(n)
    t = ft.triangle
    md = medians(t)
    rep = FamilyReport(n)
    rep.checks["gcd_one"] = math.gcd(ft.a, ft.b, ft.c) == 1
    rep.checks["heron"] = heron_area_sq(t) == ft.area**2
    rep.checks["median_k"] = ft.k > 0 and ft.k**2 == md.k_sq
    rep.checks["median_l"] = ft.l > 0 and ft.l**2 == md.l_sq
    # m^2 = (2a^2+2b^2-c^2)/4; irrational iff 4 m^2 is not a square integer
    m4 = 2 * ft.a**2 + 2 * ft.b**2 - ft.c**2
    rep.checks["third_median_irrational"] = not is_square(m4)
    rep.details["m_sq"] = str(md.m_sq)
    params = params_from_triangle(t, ft.k, ft.l)
    good = [str(p) for p in params if constraints_ok(p)]
    rep.checks["param_pair_exists"] = bool(good)
    rep.details["param_pairs"] = ", ".join(good)
    sd = family_signed(n)
    signed_factors = sorted(abs(x) for x in (sd.X + sd.Y - sd.Z, sd.X, sd.Y, sd.Z))
    rep.checks["heron_factors_are_somos_products"] = (
        signed_factors == sorted((ft.s, ft.s_minus_a, ft.s_minus_b, ft.s_minus_c))
        and abs(sd.X + sd.Y - sd.Z) == semiperimeter_product(n)
    )
    if strict and not rep.ok:
        raise InvariantViolation(f"family n={n} failed {rep.failures()}: {rep.details}")
    return rep
