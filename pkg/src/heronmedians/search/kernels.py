"""Row sieve for the parameter search.

For a fixed theta = p/q and arrays of phi = r/t, the sieve clears
denominators with tau = q^2 t^2, rejects pairs failing phi + 2 theta > 1 or
the triangle inequalities, and then tests 16 * area^2 = f1 f2 f3 f4 for being
a quadratic residue modulo a handful of composite moduli. Survivors still need
the exact big-integer check; non-survivors are certainly not Heron.

Two interchangeable implementations exist: a numba ``@njit`` loop and a
vectorised numpy version. ``HERONMEDIANS_DISABLE_NUMBA=1`` (or a missing
numba) selects numpy.
"""
from __future__ import annotations

import os

import numpy as np

__all__ = [
    "BACKEND",
    "MODULI",
    "MAX_HEIGHT",
    "available_backends",
    "get_row_mask",
    "integer_sides",
    "row_mask",
    "row_mask_numpy",
]

# every term of the cleared side polynomials is at most 2 H^4 and each side
# has at most 7 terms, so f1 = a + b + c < 24 H^4 stays below 2^63 here
MAX_HEIGHT = 20_000

# products of small primes (and 64) with sparse quadratic-residue sets;
# each modulus is < 2^31 so a product of two residues fits in int64
MODULI = np.array(
    [64 * 63 * 65 * 11, 17 * 19 * 23, 29 * 31 * 37, 41 * 43 * 47, 53 * 59 * 61, 67 * 71 * 73],
    dtype=np.int64,
)


def _residue_tables(moduli):
    offsets = np.zeros(len(moduli), dtype=np.int64)
    parts = []
    pos = 0
    for i, m in enumerate(moduli):
        m = int(m)
        tab = np.zeros(m, dtype=np.uint8)
        x = np.arange(m, dtype=np.int64)
        tab[(x * x) % m] = 1
        offsets[i] = pos
        parts.append(tab)
        pos += m
    return np.concatenate(parts), offsets


TABLE, OFFSETS = _residue_tables(MODULI)


def integer_sides(p, q, r, t):
    """Sides for theta = p/q, phi = r/t scaled by q^2 t^2 (works on arrays)."""
    a = -2 * p * p * r * t - p * q * r * r + 2 * p * q * r * t - q * q * r * r + p * q * t * t + q * q * t * t
    b = p * p * r * t + 2 * p * q * r * r - p * p * t * t + 2 * p * q * r * t - q * q * r * t + q * q * t * t
    c = (
        p * p * r * t - p * q * r * r + p * p * t * t + 2 * p * q * r * t
        + q * q * r * r + p * q * t * t - q * q * r * t
    )
    return a, b, c


def row_mask_numpy(p, q, r, t, moduli=MODULI, table=TABLE, offsets=OFFSETS):
    p = np.int64(p)
    q = np.int64(q)
    mask = r * q + 2 * p * t > q * t
    a, b, c = integer_sides(p, q, r, t)
    f1 = a + b + c
    f2 = b + c - a
    f3 = c + a - b
    f4 = a + b - c
    mask &= (a > 0) & (b > 0) & (c > 0) & (f2 > 0) & (f3 > 0) & (f4 > 0)
    for j in range(len(moduli)):
        if not mask.any():
            break
        m = moduli[j]
        v = (f1 % m) * (f2 % m) % m
        v = v * (f3 % m) % m
        v = v * (f4 % m) % m
        # entries already rejected may index garbage residues; mask them out
        mask &= table[offsets[j] + np.where(mask, v, 0)] == 1
    return mask


_numba_mask = None
_numba_error = None
try:
    import numba

    @numba.njit(cache=True)
    def _row_mask_jit(p, q, r, t, moduli, table, offsets):
        n = r.shape[0]
        out = np.zeros(n, dtype=np.bool_)
        for i in range(n):
            ri = r[i]
            ti = t[i]
            if ri * q + 2 * p * ti <= q * ti:
                continue
            rr = ri * ri
            tt = ti * ti
            rt = ri * ti
            pp = p * p
            pq = p * q
            qq = q * q
            a = -2 * pp * rt - pq * rr + 2 * pq * rt - qq * rr + pq * tt + qq * tt
            b = pp * rt + 2 * pq * rr - pp * tt + 2 * pq * rt - qq * rt + qq * tt
            c = pp * rt - pq * rr + pp * tt + 2 * pq * rt + qq * rr + pq * tt - qq * rt
            if a <= 0 or b <= 0 or c <= 0:
                continue
            f1 = a + b + c
            f2 = b + c - a
            f3 = c + a - b
            f4 = a + b - c
            if f2 <= 0 or f3 <= 0 or f4 <= 0:
                continue
            ok = True
            for j in range(moduli.shape[0]):
                m = moduli[j]
                v = (f1 % m) * (f2 % m) % m
                v = v * (f3 % m) % m
                v = v * (f4 % m) % m
                if table[offsets[j] + v] == 0:
                    ok = False
                    break
            out[i] = ok
        return out

    def _numba_mask(p, q, r, t, moduli=MODULI, table=TABLE, offsets=OFFSETS):
        return _row_mask_jit(np.int64(p), np.int64(q), r, t, moduli, table, offsets)

except Exception as exc:  # pragma: no cover - depends on the environment
    _numba_error = exc


def _numba_disabled() -> bool:
    return os.environ.get("HERONMEDIANS_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")


def available_backends() -> list[str]:
    return ["numpy"] + (["numba"] if _numba_mask is not None else [])


def get_row_mask(backend: str | None = None):
    """Return the sieve for ``backend`` ("numba", "numpy" or None for default)."""
    if backend is None:
        backend = "numpy" if _numba_disabled() or _numba_mask is None else "numba"
    if backend == "numba":
        if _numba_mask is None:
            raise RuntimeError(f"numba backend unavailable: {_numba_error}")
        return _numba_mask
    if backend == "numpy":
        return row_mask_numpy
    raise ValueError(f"unknown backend {backend!r}")


BACKEND = "numpy" if _numba_disabled() or _numba_mask is None else "numba"
row_mask = get_row_mask(BACKEND)
