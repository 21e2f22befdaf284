"""Exact arithmetic for Heron triangles with two rational medians.

Modules: ``exact`` (integers, rationals, factorization), ``somos``
(Somos-5 sequences), ``qrt`` (the associated planar map), ``triangle``
(Heron area, medians, Schubert surface), ``buchholz`` ((theta, phi)
parametrization), ``family`` (the Somos-encoded infinite family) and
``search`` (bounded-height search).
"""
from .errors import (
    CheckpointError,
    DomainError,
    HeronError,
    InconclusiveError,
    InvariantViolation,
    ZeroDivisorError,
)

__version__ = "0.1.0"

__all__ = [
    "CheckpointError",
    "DomainError",
    "HeronError",
    "InconclusiveError",
    "InvariantViolation",
    "ZeroDivisorError",
]
