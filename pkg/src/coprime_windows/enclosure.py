"""Exact interval enclosures over arbitrary-precision binary rationals.

Endpoints are exact Fractions, so containment never depends on rounding
modes: the only approximation anywhere is the dyadic bracketing of
integer n-th roots, and that bracket is produced directly from exact
integer root extraction.  Every arithmetic operation below is exact, so
widening only ever comes from the original root brackets, which keeps
the outward-rounding invariant trivially true.

``precision_bits`` records the dyadic grid used for the irrational
pieces; a bracket produced at b bits has absolute width 2**-b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2

__all__ = ["Enclosure", "nth_root_enclosure", "sqrt_bounds"]


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lo, hi] guaranteed to contain a real value."""

    lo: Fraction
    hi: Fraction
    precision_bits: int = 0

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inverted enclosure [{self.lo}, {self.hi}]")

    @staticmethod
    def point(value, bits: int = 0) -> "Enclosure":
        v = Fraction(value)
        return Enclosure(v, v, bits)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def contains_enclosure(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __add__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(
            self.lo + other.lo, self.hi + other.hi, max(self.precision_bits, other.precision_bits)
        )

    def __sub__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(
            self.lo - other.hi, self.hi - other.lo, max(self.precision_bits, other.precision_bits)
        )

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo, self.precision_bits)

    def __mul__(self, other: "Enclosure") -> "Enclosure":
        corners = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Enclosure(
            min(corners), max(corners), max(self.precision_bits, other.precision_bits)
        )

    def scale(self, q) -> "Enclosure":
        q = Fraction(q)
        if q >= 0:
            return Enclosure(self.lo * q, self.hi * q, self.precision_bits)
        return Enclosure(self.hi * q, self.lo * q, self.precision_bits)

    def reciprocal(self) -> "Enclosure":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("reciprocal of an enclosure containing zero")
        return Enclosure(1 / self.hi, 1 / self.lo, self.precision_bits)

    def __abs__(self) -> "Enclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(Fraction(0), max(-self.lo, self.hi), self.precision_bits)

    # Decisions against exact rational thresholds.  Each returns True/False
    # only when the whole enclosure settles the question; None means the
    # enclosure straddles the threshold and needs refinement.

    def decide_less(self, threshold) -> bool | None:
        threshold = Fraction(threshold)
        if self.hi < threshold:
            return True
        if self.lo > threshold:
            return False
        if self.is_point:
            return self.lo < threshold
        return None

    def decide_greater(self, threshold) -> bool | None:
        threshold = Fraction(threshold)
        if self.lo > threshold:
            return True
        if self.hi < threshold:
            return False
        if self.is_point:
            return self.lo > threshold
        return None

    def decide_inside_open(self, lo_thr, hi_thr) -> bool | None:
        """Decide lo_thr < value < hi_thr."""
        lo_thr, hi_thr = Fraction(lo_thr), Fraction(hi_thr)
        if self.lo > lo_thr and self.hi < hi_thr:
            return True
        if self.hi < lo_thr or self.lo > hi_thr:
            return False
        if self.is_point:
            return lo_thr < self.lo < hi_thr
        return None

    def floor_pair(self) -> tuple[int, int]:
        return math.floor(self.lo), math.floor(self.hi)

    def to_dict(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "precision_bits": self.precision_bits,
        }

    def __str__(self) -> str:
        if self.is_point:
            return f"[{self.lo}]"
        return f"[{self.lo}, {self.hi}] (~2^-{self.precision_bits})"


def nth_root_enclosure(value: int, n: int, bits: int) -> Enclosure:
    """Dyadic bracket of value**(1/n) for integers value >= 0, n >= 1.

    Width is exactly 2**-bits unless the root is itself dyadic, in which
    case the enclosure is a point."""
    if value < 0:
        raise ValueError("root of a negative integer")
    if n < 1:
        raise ValueError("root index must be positive")
    root, exact = gmpy2.iroot(gmpy2.mpz(value) << (n * bits), n)
    lo = Fraction(int(root), 1 << bits)
    if exact:
        return Enclosure(lo, lo, bits)
    return Enclosure(lo, lo + Fraction(1, 1 << bits), bits)


@lru_cache(maxsize=512)
def sqrt_bounds(radicand: int, bits: int) -> tuple[Fraction, Fraction]:
    """Cached dyadic bracket of sqrt(radicand) for integer radicand >= 0."""
    e = nth_root_enclosure(radicand, 2, bits)
    return e.lo, e.hi
