"""Closed real intervals with the "mean-first, left-second" total order."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Interval:
    """A closed interval ``[lo, hi]`` of finite reals.

    ``lo == hi`` is allowed and stands for a plain real number.  Only the
    endpoints are stored; ``mean`` and ``width`` are derived on access.
    ``width`` is the *half*-width.
    """

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"interval lower endpoint exceeds upper: [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: float) -> Interval:
        return cls(value, value)

    @property
    def mean(self) -> float:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> float:
        return (self.hi - self.lo) / 2

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def sort_key(self) -> tuple[float, float, float]:
        # hi only separates values whose (mean, lo) collide after rounding
        return (self.mean, self.lo, self.hi)

    def __add__(self, other: Interval) -> Interval:
        if not isinstance(other, Interval):
            return NotImplemented
        return add(self, other)

    def __neg__(self) -> Interval:
        return negate(self)

    def __sub__(self, other: Interval) -> Interval:
        if not isinstance(other, Interval):
            return NotImplemented
        return add(self, negate(other))

    def __rmul__(self, lam: float) -> Interval:
        if isinstance(lam, Interval):
            return NotImplemented
        return scale(lam, self)

    __mul__ = __rmul__

    def __lt__(self, other: Interval) -> bool:
        return compare(self, other) is Ordering.LESS

    def __le__(self, other: Interval) -> bool:
        return compare(self, other) is not Ordering.GREATER

    def __gt__(self, other: Interval) -> bool:
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other: Interval) -> bool:
        return compare(self, other) is not Ordering.LESS

    def format(self, decimals: int = 4) -> str:
        return f"[{self.lo:.{decimals}f},{self.hi:.{decimals}f}]"

    def __str__(self) -> str:
        return self.format()


def add(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo + b.lo, a.hi + b.hi)


def scale(lam: float, a: Interval) -> Interval:
    if lam >= 0:
        return Interval(lam * a.lo, lam * a.hi)
    return Interval(lam * a.hi, lam * a.lo)


def negate(a: Interval) -> Interval:
    return Interval(-a.hi, -a.lo)


def mean(a: Interval) -> float:
    return a.mean


def width(a: Interval) -> float:
    return a.width


def compare(a: Interval, b: Interval) -> Ordering:
    """Mean first, then lower endpoint; exact float comparison, no tolerance."""
    ka, kb = a.sort_key(), b.sort_key()
    if ka < kb:
        return Ordering.LESS
    if ka > kb:
        return Ordering.GREATER
    return Ordering.EQUAL


def interval_sum(terms: Iterable[Interval]) -> Interval:
    lo = hi = 0.0
    for t in terms:
        lo += t.lo
        hi += t.hi
    return Interval(lo, hi)


def parse_interval(text: str) -> Interval:
    """Parse ``"lo,hi"`` or ``"[lo,hi]"``."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    parts = body.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'lo,hi', got {text!r}")
    return Interval(float(parts[0]), float(parts[1]))
