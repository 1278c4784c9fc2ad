"""Bit-by-bit comparison of stored random strings."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence


class Ordering(str, Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"


@dataclass(frozen=True)
class Comparison:
    ordering: Ordering
    bits_read: int


def compare_strings(reader: Sequence[int], s_copy: Sequence[int]) -> Comparison:
    """Compare the walker's string against a stationary copy, left to right.

    Reading stops at the first mismatch: a 1 in *s_copy* means the reader's
    chief loses (LESS), a 0 means it wins (GREATER). If one string runs out
    first, the exhausted side loses; both ending together is EQUAL.
    ``bits_read`` counts the *s_copy* bits consumed.

    Raises:
        ValueError: either string is empty or holds a value other than 0/1.
    """
    if len(reader) == 0 or len(s_copy) == 0:
        raise ValueError("cannot compare empty bit strings")
    bad = [b for b in (*reader, *s_copy) if int(b) not in (0, 1)]
    if bad:
        raise ValueError(f"bit strings hold 0/1 only, got {bad[0]!r}")
    limit = min(len(reader), len(s_copy))
    for t in range(limit):
        r, s = int(reader[t]), int(s_copy[t])
        if r != s:
            return Comparison(Ordering.LESS if s == 1 else Ordering.GREATER, t + 1)
    if len(reader) == len(s_copy):
        return Comparison(Ordering.EQUAL, limit)
    if len(s_copy) < len(reader):
        return Comparison(Ordering.GREATER, limit)
    return Comparison(Ordering.LESS, limit)
