"""Exact rationals and Farey-sequence machinery.

``Rational`` is :class:`fractions.Fraction`: it is always stored reduced with a
positive denominator, and equality/ordering/hashing act on that reduced form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import UsageError

Rational = Fraction

__all__ = [
    "Rational",
    "FareyPair",
    "reduce",
    "parse_rational",
    "format_rational",
    "mediant",
    "is_farey_neighbor",
    "farey_sequence",
    "iter_farey",
    "min_den_fraction_in",
    "min_den_fraction_scan",
]


def reduce(n: int, d: int) -> Fraction:
    """Reduced representative of n/d with positive denominator."""
    if d == 0:
        raise UsageError("zero denominator")
    return Fraction(n, d)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; floats and decimals are rejected."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise UsageError(f"not a fraction: {text!r}") from None
    return reduce(n, d)


def format_rational(r: Fraction) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def mediant(p: Fraction, q: Fraction) -> Fraction:
    return Fraction(p.numerator + q.numerator, p.denominator + q.denominator)


def _det(p: Fraction, q: Fraction) -> int:
    return p.denominator * q.numerator - p.numerator * q.denominator


def is_farey_neighbor(p: Fraction, q: Fraction) -> bool:
    """True iff p < q are adjacent in some Farey sequence (bc - ad = 1)."""
    if p >= q:
        raise UsageError(f"expected p < q, got {p} >= {q}")
    return _det(p, q) == 1


@dataclass(frozen=True, order=True)
class FareyPair:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (0 <= self.lo < self.hi <= 1):
            raise UsageError(f"FareyPair needs 0 <= lo < hi <= 1, got {self.lo}, {self.hi}")
        if _det(self.lo, self.hi) != 1:
            raise UsageError(f"{self.lo} and {self.hi} are not Farey neighbours")

    @property
    def mediant(self) -> Fraction:
        return mediant(self.lo, self.hi)


def iter_farey(N: int) -> Iterator[Fraction]:
    """Yield F_N in increasing order using the next-term recurrence."""
    if N < 1:
        raise UsageError("Farey order must be >= 1")
    a, b, c, d = 0, 1, 1, N
    yield Fraction(0, 1)
    while c <= N:
        k = (N + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        yield Fraction(a, b)


def farey_sequence(N: int) -> list[Fraction]:
    return list(iter_farey(N))


def min_den_fraction_in(lo: Fraction, hi: Fraction, max_den: int) -> Optional[Fraction]:
    """Fraction of least denominator in the closed interval [lo, hi].

    Ties (only possible at denominator 1) go to the smallest numerator.
    Returns None when the least denominator exceeds ``max_den``.

    Walks the Stern-Brocot tree between consecutive integers; runs of steps in
    the same direction are taken in one jump, so the cost is logarithmic.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise UsageError(f"empty interval [{lo}, {hi}]")
    if max_den < 1:
        return None
    c = math.ceil(lo)
    if c <= hi:
        return Fraction(c, 1)
    # no integer inside: lo and hi share the integer part f
    f = math.floor(lo)
    lo, hi = lo - f, hi - f
    # left = a/b < lo, right = c/d > hi; the two stay Farey neighbours
    a, b, c, d = 0, 1, 1, 1
    while True:
        m, n = a + c, b + d
        if n > max_den:
            return None
        if m < lo * n:
            # largest k with (a + k c)/(b + k d) < lo
            k = _steps_below(a, b, c, d, lo)
            a, b = a + k * c, b + k * d
        elif m > hi * n:
            # largest k with (c + k a)/(d + k b) > hi
            k = _steps_above(a, b, c, d, hi)
            c, d = c + k * a, d + k * b
        else:
            return Fraction(m, n) + f


def _steps_below(a: int, b: int, c: int, d: int, x: Fraction) -> int:
    # (a + k c) < x (b + k d)  <=>  k (c - x d) < x b - a, with c - x d > 0
    num = x * b - a
    den = c - x * d
    k = math.ceil(num / den) - 1
    return max(k, 1)


def _steps_above(a: int, b: int, c: int, d: int, x: Fraction) -> int:
    # (c + k a) > x (d + k b)  <=>  k (x b - a) < c - x d, with x b - a > 0
    num = c - x * d
    den = x * b - a
    k = math.ceil(num / den) - 1
    return max(k, 1)


def min_den_fraction_scan(lo: Fraction, hi: Fraction, max_den: int) -> Optional[Fraction]:
    """Exhaustive reference for :func:`min_den_fraction_in`."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise UsageError(f"empty interval [{lo}, {hi}]")
    for n in range(1, max_den + 1):
        m = math.ceil(lo * n)
        if Fraction(m, n) <= hi:
            return Fraction(m, n)
    return None
