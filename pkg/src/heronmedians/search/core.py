"""Bounded-height search for Heron triangles with two rational medians.

Pairs (theta, phi) = (p/q, r/t) with denominators up to the height are fed to
the side formulas with tau = q^2 t^2, so every side is an integer. A numeric
sieve (see :mod:`.kernels`) throws away pairs whose 16 * area^2 is not a
square modulo small moduli; survivors go through :func:`test_candidate`,
which is exact.
"""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from ..buchholz import ParamPoint, buchholz_sides, constraints_ok
from ..errors import DomainError, HeronError, InconclusiveError, InvariantViolation
from ..exact import format_rational, int_sqrt, parse_rational
from ..family import family_triangle
from ..triangle import Triangle, medians
from . import kernels
from .checkpoint import Checkpoint

log = logging.getLogger(__name__)

__all__ = [
    "SearchConfig",
    "FoundTriangle",
    "SearchInterrupted",
    "farey_fractions",
    "enumerate_params",
    "test_candidate",
    "classify",
    "family_bound_for",
    "run_search",
    "default_workers",
]

TAU_POLICY = "clear denominators with tau = q^2 t^2"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("HERONMEDIANS_WORKERS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SearchConfig:
    height: int
    workers: int = field(default_factory=default_workers)
    checkpoint_path: Optional[str] = None
    resume: bool = False
    chunk_size: int = 1024
    backend: Optional[str] = None
    # stop (raising SearchInterrupted) after this many newly finished chunks
    max_new_chunks: Optional[int] = None
    tau_policy: str = TAU_POLICY

    def __post_init__(self):
        if self.height < 2:
            raise DomainError("search height must be >= 2")
        if self.height > kernels.MAX_HEIGHT:
            raise DomainError(f"height above {kernels.MAX_HEIGHT} would overflow the int64 sieve")
        if self.workers < 1 or self.chunk_size < 1:
            raise DomainError("workers and chunk_size must be positive")


class SearchInterrupted(HeronError):
    """Raised when a run stops early on purpose; the checkpoint is consistent."""


@dataclass(frozen=True)
class FoundTriangle:
    a: int
    b: int
    c: int
    k: Fraction
    l: Fraction  # noqa: E741
    area: int
    source: ParamPoint
    classification: Optional[str] = None

    @property
    def sorted_sides(self) -> tuple[int, int, int]:
        return tuple(sorted((self.a, self.b, self.c)))

    def sort_key(self):
        return (self.area, self.sorted_sides)

    def source_key(self):
        th, ph = self.source
        return (th.denominator, th.numerator, ph.denominator, ph.numerator)

    def with_class(self, classification: str) -> "FoundTriangle":
        return FoundTriangle(self.a, self.b, self.c, self.k, self.l, self.area, self.source, classification)

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "k": format_rational(self.k),
            "l": format_rational(self.l),
            "area": self.area,
            "theta": format_rational(self.source.theta),
            "phi": format_rational(self.source.phi),
            "class": self.classification,
        }

    @classmethod
    def from_json(cls, d: dict) -> "FoundTriangle":
        return cls(
            int(d["a"]), int(d["b"]), int(d["c"]),
            parse_rational(d["k"]), parse_rational(d["l"]), int(d["area"]),
            ParamPoint(parse_rational(d["theta"]), parse_rational(d["phi"])),
            d.get("class"),
        )


# ---------------------------------------------------------------------------
# enumeration

def farey_fractions(height: int) -> list[tuple[int, int]]:
    """Reduced p/q in (0, 1) with q <= height, ordered by (q, p)."""
    return [(p, q) for q in range(2, height + 1) for p in range(1, q) if math.gcd(p, q) == 1]


def enumerate_params(height: int) -> Iterator[ParamPoint]:
    """All constraint-satisfying pairs, ordered by (q, p, t, r)."""
    if height < 2:
        raise DomainError("height must be >= 2")
    fr = farey_fractions(height)
    for p, q in fr:
        for r, t in fr:
            if r * q + 2 * p * t > q * t:
                yield ParamPoint(Fraction(p, q), Fraction(r, t))


# ---------------------------------------------------------------------------
# exact candidate test

def test_candidate(point: ParamPoint) -> Optional[FoundTriangle]:
    """Exact check of one parameter pair; None unless it gives a Heron triangle."""
    theta, phi = point
    tau = (theta.denominator * phi.denominator) ** 2
    sides = buchholz_sides(point, tau)
    if any(x.denominator != 1 for x in sides):
        raise InvariantViolation(f"tau={tau} left non-integral sides at {point}")
    a, b, c = (x.numerator for x in sides)
    if min(a, b, c) <= 0 or not (a < b + c and b < c + a and c < a + b):
        return None
    g = math.gcd(a, b, c)
    a, b, c = a // g, b // g, c // g
    sixteen_area_sq = (a + b + c) * (b + c - a) * (c + a - b) * (a + b - c)
    root, exact = int_sqrt(sixteen_area_sq)
    if not exact:
        return None
    if root % 4:
        raise InvariantViolation(f"primitive Heron triangle {(a, b, c)} with non-integral area {root}/4")
    md = medians(Triangle(a, b, c))
    if md.k is None or md.l is None:
        raise InvariantViolation(
            f"{point} gives Heron triangle {(a, b, c)} without two rational medians"
        )
    return FoundTriangle(a, b, c, md.k, md.l, root // 4, ParamPoint(theta, phi))


test_candidate.__test__ = False  # keep pytest from collecting it on import


# ---------------------------------------------------------------------------
# classification

def family_bound_for(max_side: int) -> int:
    """Smallest n whose family member has every side above ``max_side``."""
    n = 1
    while min(family_triangle(n).sides) <= max_side:
        n += 1
    return n


def classify(t: FoundTriangle, family_bound: int) -> str:
    """``"family:n"`` or ``"sporadic"``."""
    if family_bound < 1:
        raise DomainError("family_bound must be >= 1")
    key = t.sorted_sides
    if min(family_triangle(family_bound).sides) <= key[2]:
        raise InconclusiveError(
            f"family member {family_bound} is not larger than {key}; raise the bound"
        )
    for n in range(1, family_bound + 1):
        if tuple(sorted(family_triangle(n).sides)) == key:
            return f"family:{n}"
    return "sporadic"


# ---------------------------------------------------------------------------
# driver

def _chunks(n_items: int, size: int) -> list[tuple[int, int]]:
    return [(i, min(i + size, n_items)) for i in range(0, n_items, size)]


def _process_chunk(height: int, start: int, stop: int, backend: Optional[str]) -> list[FoundTriangle]:
    fr = farey_fractions(height)
    r_arr = np.array([f[0] for f in fr], dtype=np.int64)
    t_arr = np.array([f[1] for f in fr], dtype=np.int64)
    mask_fn = kernels.get_row_mask(backend)
    finds = []
    for p, q in fr[start:stop]:
        for j in np.flatnonzero(mask_fn(p, q, r_arr, t_arr)):
            hit = test_candidate(ParamPoint(Fraction(p, q), Fraction(int(r_arr[j]), int(t_arr[j]))))
            if hit is not None:
                finds.append(hit)
    return finds


def _merge(finds) -> list[FoundTriangle]:
    best: dict[tuple[int, int, int], FoundTriangle] = {}
    for f in finds:
        cur = best.get(f.sorted_sides)
        if cur is None or f.source_key() < cur.source_key():
            best[f.sorted_sides] = f
    out = sorted(best.values(), key=FoundTriangle.sort_key)
    if not out:
        return out
    bound = family_bound_for(max(t.sorted_sides[2] for t in out))
    return [t.with_class(classify(t, bound)) for t in out]


def run_search(cfg: SearchConfig) -> list[FoundTriangle]:
    """All triangles found at ``cfg.height``, deduplicated, sorted by area then sides.

    Output does not depend on the worker count. With a checkpoint path every
    finished chunk is appended to the file; ``resume=True`` skips chunks
    already recorded there.
    """
    n_theta = len(farey_fractions(cfg.height))
    chunks = _chunks(n_theta, cfg.chunk_size)
    ckpt = None
    done: dict[int, list[FoundTriangle]] = {}
    if cfg.checkpoint_path:
        ckpt = Checkpoint(Path(cfg.checkpoint_path), cfg.height, cfg.chunk_size, len(chunks))
        done = ckpt.open(resume=cfg.resume)
    todo = [i for i in range(len(chunks)) if i not in done]
    log.info("height %d: %d theta values, %d chunks, %d to run", cfg.height, n_theta, len(chunks), len(todo))

    budget = cfg.max_new_chunks
    if budget is not None:
        todo = todo[:budget]

    def record(i, finds):
        done[i] = finds
        if ckpt is not None:
            ckpt.append(i, finds)

    try:
        if cfg.workers == 1 or len(todo) <= 1:
            for i in todo:
                record(i, _process_chunk(cfg.height, *chunks[i], cfg.backend))
        else:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                futs = {
                    pool.submit(_process_chunk, cfg.height, *chunks[i], cfg.backend): i for i in todo
                }
                for fut in as_completed(futs):
                    record(futs[fut], fut.result())
    finally:
        if ckpt is not None:
            ckpt.close()

    if len(done) < len(chunks):
        raise SearchInterrupted(f"stopped with {len(done)}/{len(chunks)} chunks done")
    if ckpt is not None:
        ckpt.compact(done)
    return _merge(f for i in sorted(done) for f in done[i])
