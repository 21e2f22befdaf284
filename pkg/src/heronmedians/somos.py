"""Somos-5 sequences.

A sequence obeys ``S[n+5] S[n] = S[n+4] S[n+1] + S[n+3] S[n+2]``. The two
canonical integer sequences used by the triangle family are exposed through
:func:`canonical_S` and :func:`canonical_T` (both indexed from 0).
"""
from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, ZeroDivisorError
from .exact import as_rational

__all__ = [
    "SomosSequence",
    "somos5_extend",
    "somos5_backward",
    "canonical_S",
    "canonical_T",
    "canonical_sequence",
    "ratio_u",
    "rescale",
    "S_SEED",
    "T_SEED",
]

# terms from index 0
S_SEED = (1, 1, 1, 2, 3)
T_SEED = (0, 1, -1, 1, 1, -7)


@dataclass(frozen=True)
class SomosSequence:
    """A contiguous window of a Somos-5 sequence.

    ``terms[i]`` is the term with index ``base_index + i``. ``seed`` keeps the
    defining initial terms for provenance; it is not used for arithmetic.
    """

    base_index: int
    terms: tuple[Fraction, ...]
    seed: tuple[Fraction, ...] = ()

    @classmethod
    def from_seed(cls, seed: Iterable, base_index: int = 0) -> "SomosSequence":
        terms = tuple(as_rational(x) for x in seed)
        if len(terms) < 5:
            raise DomainError("a Somos-5 seed needs at least five terms")
        return cls(base_index, terms, terms)

    @property
    def first_index(self) -> int:
        return self.base_index

    @property
    def last_index(self) -> int:
        return self.base_index + len(self.terms) - 1

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, n: int) -> Fraction:
        i = n - self.base_index
        if i < 0 or i >= len(self.terms):
            raise IndexError(
                f"index {n} outside stored range {self.first_index}..{self.last_index}"
            )
        return self.terms[i]

    def indices(self) -> range:
        return range(self.first_index, self.last_index + 1)

    def check_recurrence(self) -> bool:
        t = self.terms
        return all(
            t[i + 5] * t[i] == t[i + 4] * t[i + 1] + t[i + 3] * t[i + 2]
            for i in range(len(t) - 5)
        )


def somos5_extend(seq: SomosSequence, count: int) -> SomosSequence:
    """Append ``count`` terms using the forward recurrence."""
    if count < 0:
        raise DomainError("count must be non-negative")
    terms = list(seq.terms)
    if len(terms) < 5:
        raise DomainError("need five trailing terms to extend")
    for _ in range(count):
        j = seq.base_index + len(terms)  # index of the new term
        head = terms[-5]
        if head == 0:
            raise ZeroDivisorError(
                f"cannot compute term {j}: divisor term {j - 5} is zero", index=j - 5
            )
        terms.append((terms[-1] * terms[-4] + terms[-2] * terms[-3]) / head)
    return SomosSequence(seq.base_index, tuple(terms), seq.seed)


def somos5_backward(seq: SomosSequence, count: int) -> SomosSequence:
    """Prepend ``count`` terms using the recurrence solved for its lowest term."""
    if count < 0:
        raise DomainError("count must be non-negative")
    if len(seq.terms) < 5:
        raise DomainError("need five leading terms to extend backwards")
    cur = deque(seq.terms)
    for step in range(1, count + 1):
        j = seq.base_index - step  # index of the new term
        if cur[4] == 0:
            raise ZeroDivisorError(
                f"cannot compute term {j}: divisor term {j + 5} is zero", index=j + 5
            )
        cur.appendleft((cur[3] * cur[0] + cur[2] * cur[1]) / cur[4])
    return SomosSequence(seq.base_index - count, tuple(cur), seq.seed)


class _Memo:
    """Grow-only cache of a canonical sequence."""

    def __init__(self, seed):
        self._seq = SomosSequence.from_seed(seed)
        self._lock = threading.Lock()

    def upto(self, n: int) -> SomosSequence:
        seq = self._seq
        if n <= seq.last_index:
            return seq
        with self._lock:
            seq = self._seq
            if n > seq.last_index:
                # grow geometrically so repeated calls stay amortised O(1)
                target = max(n, 2 * seq.last_index)
                seq = somos5_extend(seq, target - seq.last_index)
                self._seq = seq
            return seq


_S_MEMO = _Memo(S_SEED)
_T_MEMO = _Memo(T_SEED)


def _term(memo: _Memo, n: int) -> int:
    if n < 0:
        raise DomainError(f"canonical sequences are defined here for n >= 0, got {n}")
    value = memo.upto(n)[n]
    return value.numerator if value.denominator == 1 else value


def canonical_S(n: int) -> int:
    """n-th term of 1, 1, 1, 2, 3, 5, 11, 37, 83, 274, ..."""
    return _term(_S_MEMO, n)


def canonical_T(n: int) -> int:
    """n-th term of 0, 1, -1, 1, 1, -7, 8, -1, -57, 391, ..."""
    return _term(_T_MEMO, n)


def canonical_sequence(name: str, upto: int) -> SomosSequence:
    """The memoised canonical sequence ``"S"`` or ``"T"`` covering 0..upto."""
    memo = {"S": _S_MEMO, "T": _T_MEMO}.get(name.upper())
    if memo is None:
        raise DomainError(f"unknown canonical sequence {name!r}")
    seq = memo.upto(upto)
    return SomosSequence(0, seq.terms[: upto + 1], seq.seed)


def ratio_u(seq: SomosSequence, n: int) -> Fraction:
    """u_n = S[n-2] S[n+1] / (S[n-1] S[n])."""
    den = seq[n - 1] * seq[n]
    if den == 0:
        raise ZeroDivisorError(f"ratio u_{n} has zero denominator", index=n)
    return seq[n - 2] * seq[n + 1] / den


def rescale(seq: SomosSequence, a_even, a_odd, b) -> SomosSequence:
    """Apply S[2j] -> A+ B^2j S[2j], S[2j+1] -> A- B^(2j+1) S[2j+1]."""
    a_even, a_odd, b = (as_rational(x) for x in (a_even, a_odd, b))
    if 0 in (a_even, a_odd, b):
        raise DomainError("scaling constants must be non-zero")
    out = []
    for n in seq.indices():
        a = a_even if n % 2 == 0 else a_odd
        out.append(a * b**n * seq[n])
    return SomosSequence(seq.base_index, tuple(out), seq.seed)
