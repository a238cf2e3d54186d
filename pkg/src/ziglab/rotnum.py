"""Maximal and minimal rotation numbers of a composition ``ab``.

``rot_max(x, y)`` is the largest translation number of ``a∘b`` over lifts with
translation numbers ``x`` and ``y``:

    R(x, y) = max_{q >= 1} (floor(q x) + floor(q y) + 1) / q

and ``rot_min(x, y) = -rot_max(-x, -y)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _kernels
from .errors import UsageError

__all__ = [
    "RotMaxCertificate",
    "rot_max",
    "rot_max_certificate",
    "rot_max_scan",
    "rot_min",
    "rot_interval",
    "realizable_bound",
    "is_realizable",
]


@dataclass(frozen=True)
class RotMaxCertificate:
    """The smallest q attaining the maximum, with its floors p1, p2."""

    value: Fraction
    q: int
    p1: int
    p2: int


def _check_unit(*args: Fraction) -> None:
    for v in args:
        if not 0 <= v < 1:
            raise UsageError(f"argument {v} outside [0, 1)")


def rot_max_scan(x: Fraction, y: Fraction, q_max: int) -> tuple[Fraction, int]:
    """Plain-integer scan of q = 1..q_max. Returns (max value, smallest maximiser)."""
    best, best_q = None, 0
    for q in range(1, q_max + 1):
        v = Fraction(math.floor(q * x) + math.floor(q * y) + 1, q)
        if best is None or v > best:
            best, best_q = v, q
    return best, best_q


def _pruned_best_q(x: Fraction, y: Fraction, L: int) -> int:
    """Smallest maximiser, scanning upward and stopping once x + y + 1/q <= best."""
    s = x + y
    best, best_q = Fraction(1), 1  # f(1) = 1 on [0, 1)^2
    q = 2
    while q <= L and s + Fraction(1, q) > best:
        v = Fraction((q * x.numerator) // x.denominator + (q * y.numerator) // y.denominator + 1, q)
        if v > best:
            best, best_q = v, q
        q += 1
    return best_q


@lru_cache(maxsize=1 << 17)
def _best_q(a: int, b: int, c: int, d: int) -> int:
    """Smallest maximiser q for x = a/b, y = c/d in lowest terms, both in [0, 1)."""
    # Search bound. With L = lcm(b, d) and f(q) = (floor(qx) + floor(qy) + 1)/q:
    # f(q) <= x + y + 1/q for every q, while f(L) = x + y + 1/L exactly.
    # For q > L this gives f(q) < x + y + 1/L = f(L), so the maximiser is <= L.
    L = b * d // math.gcd(b, d)
    if L <= _kernels.ROT_SCAN_LIMIT:
        return int(_kernels.rot_max_best_q(a, b, c, d, L))
    return _pruned_best_q(Fraction(a, b), Fraction(c, d), L)


def rot_max_certificate(x: Fraction, y: Fraction) -> RotMaxCertificate:
    x, y = Fraction(x), Fraction(y)
    _check_unit(x, y)
    a, b = x.numerator, x.denominator
    c, d = y.numerator, y.denominator
    q = _best_q(a, b, c, d)
    p1 = q * a // b
    p2 = q * c // d
    return RotMaxCertificate(Fraction(p1 + p2 + 1, q), q, p1, p2)


def rot_max(x: Fraction, y: Fraction) -> Fraction:
    x = x if isinstance(x, Fraction) else Fraction(x)
    y = y if isinstance(y, Fraction) else Fraction(y)
    a, b = x.numerator, x.denominator
    c, d = y.numerator, y.denominator
    # R(x + 1, y) = R(x, y) + 1, and likewise in y
    fx, fy = a // b, c // d
    a, c = a - fx * b, c - fy * d
    q = _best_q(a, b, c, d)
    return Fraction(q * a // b + q * c // d + 1 + (fx + fy) * q, q)


def rot_min(x: Fraction, y: Fraction) -> Fraction:
    return -rot_max(-Fraction(x), -Fraction(y))


def rot_interval(x: Fraction, y: Fraction) -> tuple[Fraction, Fraction]:
    return rot_min(x, y), rot_max(x, y)


def realizable_bound(x: Fraction, y: Fraction) -> Fraction:
    """Largest z with (x, y, z) realizable: R(1 - x, 1 - y) - 1."""
    return rot_max(1 - Fraction(x), 1 - Fraction(y)) - 1


def is_realizable(x: Fraction, y: Fraction, z: Fraction) -> bool:
    """Whether (x, y, z) in [0, 1)^3 lies in the ziggurat: 0 <= z <= R(1-x, 1-y) - 1.

    The closed form corresponds to the convention that the product of the
    three lifts is the unit translation rather than the identity.
    """
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    _check_unit(x, y, z)
    return 0 <= z <= realizable_bound(x, y)
