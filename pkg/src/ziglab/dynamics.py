"""Combinatorial circle dynamics: monotone degree-one maps on Z with period n.

A lift of period n is a non-decreasing map σ: Z -> Z with σ(i + n) = σ(i) + n,
stored as its values on 0..n-1. It models a circle map on a circle of
circumference n, so its translation number is lim σ^k(0) / (k n).
Plateaus are allowed; they are limits of homeomorphisms and are needed to
realise extremal rotation numbers on a finite grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator, Optional

import numpy as np

from . import _kernels
from .errors import DomainError, UsageError
from .exact import format_rational
from .report import Report, timed
from .rotnum import rot_max, rot_min

DEFAULT_LIMIT = 10

__all__ = [
    "MonotoneLift",
    "rotation_number",
    "compose",
    "enumerate_lifts",
    "count_canonical",
    "max_composition",
    "sweep_oracle_bound",
    "attainment_sweep",
    "witness_to_dict",
    "DEFAULT_LIMIT",
]


@dataclass(frozen=True)
class MonotoneLift:
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(t) for t in self.values)
        object.__setattr__(self, "values", v)
        if self.n < 1 or len(v) != self.n:
            raise UsageError(f"need exactly n = {self.n} values, got {len(v)}")
        if any(a > b for a, b in zip(v, v[1:])) or v[-1] > v[0] + self.n:
            raise UsageError(f"{v} is not monotone of degree one for n = {self.n}")

    @classmethod
    def rigid(cls, n: int, t: int) -> "MonotoneLift":
        return cls(n, tuple(i + t for i in range(n)))

    @classmethod
    def identity(cls, n: int) -> "MonotoneLift":
        return cls.rigid(n, 0)

    @property
    def canonical(self) -> bool:
        return 0 <= self.values[0] < self.n

    def canonicalize(self) -> "MonotoneLift":
        return self.shift(-(self.values[0] // self.n))

    def shift(self, k: int) -> "MonotoneLift":
        """Post-compose with the translation by k full turns."""
        return MonotoneLift(self.n, tuple(v + k * self.n for v in self.values))

    def __call__(self, i: int) -> int:
        k, r = divmod(i, self.n)
        return self.values[r] + k * self.n

    def rotation_number(self, start: int = 0) -> Fraction:
        return rotation_number(self, start)


def rotation_number(f: MonotoneLift, start: int = 0) -> Fraction:
    """Exact translation number, from the first repeated residue of the orbit."""
    n = f.n
    seen: dict[int, tuple[int, int]] = {}
    x, k = start, 0
    while True:
        r = x % n
        if r in seen:
            k0, x0 = seen[r]
            return Fraction(x - x0, (k - k0) * n)
        seen[r] = (k, x)
        x = f(x)
        k += 1


def compose(f: MonotoneLift, g: MonotoneLift) -> MonotoneLift:
    """f∘g. Not re-canonicalised: that would shift the rotation number by an integer."""
    if f.n != g.n:
        raise UsageError(f"period mismatch {f.n} != {g.n}")
    return MonotoneLift(f.n, tuple(f(v) for v in g.values))


def _check_limit(n: int, limit: int, allow_large: bool) -> None:
    if n < 1:
        raise UsageError("n must be >= 1")
    if n > limit and not allow_large:
        raise UsageError(f"n = {n} exceeds the limit {limit}; pass allow_large=True to override")


def _iter_canonical(n: int) -> Iterator[tuple[int, ...]]:
    for v0 in range(n):
        for rest in combinations_with_replacement(range(v0, v0 + n + 1), n - 1):
            yield (v0,) + rest


def count_canonical(n: int) -> int:
    """n · C(2n-1, n-1): n choices of v0, then a multiset of n-1 values in [v0, v0+n]."""
    return n * math.comb(2 * n - 1, n - 1)


def enumerate_lifts(n: int, rot: Optional[Fraction] = None, *, limit: int = DEFAULT_LIMIT,
                    allow_large: bool = False) -> Iterator[MonotoneLift]:
    """Canonical lifts of period n in lexicographic order.

    With ``rot`` given, yields instead every lift whose rotation number is
    exactly ``rot``: one per canonical class, translated by the whole number
    of turns that brings its rotation number to ``rot``.
    """
    _check_limit(n, limit, allow_large)
    if rot is None:
        for v in _iter_canonical(n):
            yield MonotoneLift(n, v)
        return
    rot = Fraction(rot)
    V = _canonical_array(n)
    num, den = _kernels.lift_rotations(V, n)
    hits = []
    for row, a, b in zip(V, num, den):
        shift = rot - Fraction(int(a), int(b))
        if shift.denominator == 1:
            hits.append(tuple(int(t) + int(shift) * n for t in row))
    for v in sorted(hits):
        yield MonotoneLift(n, v)


@lru_cache(maxsize=16)
def _canonical_array(n: int) -> np.ndarray:
    V = np.fromiter((t for v in _iter_canonical(n) for t in v), dtype=np.int64)
    V = V.reshape(-1, n)
    V.setflags(write=False)
    return V


def _lifts_with_rot(n: int, rot: Fraction) -> np.ndarray:
    rows = [f.values for f in enumerate_lifts(n, rot, allow_large=True)]
    return np.array(rows, dtype=np.int64).reshape(-1, n)


def max_composition(x: Fraction, y: Fraction, n: int, *, limit: int = DEFAULT_LIMIT,
                    allow_large: bool = False) -> tuple[Fraction, tuple[MonotoneLift, MonotoneLift]]:
    """Largest rot(f∘g) over all period-n lifts with rot f = x, rot g = y.

    The witness is the lexicographically first maximising pair.
    """
    x, y = Fraction(x), Fraction(y)
    for v in (x, y):
        if not 0 <= v < 1:
            raise UsageError(f"rotation number {v} outside [0, 1)")
    _check_limit(n, limit, allow_large)
    F = _lifts_with_rot(n, x)
    G = F if y == x else _lifts_with_rot(n, y)
    if not len(F) or not len(G):
        raise DomainError(f"no period-{n} lift has rotation number {x if not len(F) else y}")
    num, den, i, j = _kernels.max_composition(F, G, n)
    f, g = MonotoneLift(n, F[i]), MonotoneLift(n, G[j])
    value = Fraction(int(num), int(den))
    if rotation_number(compose(f, g)) != value:
        raise DomainError("kernel and reference rotation numbers disagree")
    return value, (f, g)


def witness_to_dict(f: MonotoneLift, g: MonotoneLift) -> dict:
    return {"n": f.n, "f": list(f.values), "g": list(g.values),
            "rot_f": format_rational(rotation_number(f)),
            "rot_g": format_rational(rotation_number(g)),
            "rot_fg": format_rational(rotation_number(compose(f, g)))}


def witness_from_dict(d: dict) -> tuple[MonotoneLift, MonotoneLift]:
    return MonotoneLift(d["n"], tuple(d["f"])), MonotoneLift(d["n"], tuple(d["g"]))


def _bound_tables(classes: list[Fraction]):
    C = len(classes)
    up_num = np.empty((C, C), dtype=np.int64)
    up_den = np.empty((C, C), dtype=np.int64)
    lo_num = np.empty((C, C), dtype=np.int64)
    lo_den = np.empty((C, C), dtype=np.int64)
    for a, rf in enumerate(classes):
        for b, rg in enumerate(classes):
            hi, lo = rot_max(rf, rg), rot_min(rf, rg)
            up_num[a, b], up_den[a, b] = hi.numerator, hi.denominator
            lo_num[a, b], lo_den[a, b] = lo.numerator, lo.denominator
    return up_num, up_den, lo_num, lo_den


def sweep_oracle_bound(n_max: int, *, limit: int = DEFAULT_LIMIT,
                       allow_large: bool = False) -> Report:
    """rot_min(rot f, rot g) <= rot(f∘g) <= rot_max(rot f, rot g) for all canonical pairs, n <= n_max."""
    _check_limit(n_max, limit, allow_large)
    rep = Report("oracle-bound", details={"n_max": n_max})
    with timed(rep):
        per_n = []
        for n in range(1, n_max + 1):
            V = _canonical_array(n)
            num, den = _kernels.lift_rotations(V, n)
            rots = [Fraction(int(a), int(b)) for a, b in zip(num, den)]
            classes = sorted(set(rots))
            index = {r: k for k, r in enumerate(classes)}
            cls = np.array([index[r] for r in rots], dtype=np.int64)
            pairs, n_up, n_lo, first_up, first_lo = _kernels.sweep_bounds(
                V, n, cls, *_bound_tables(classes))
            rep.checked += int(pairs)
            per_n.append({"n": n, "lifts": len(V), "pairs": int(pairs),
                          "upper_violations": int(n_up), "lower_violations": int(n_lo)})
            for kind, cnt, (i, j) in (("upper", n_up, first_up), ("lower", n_lo, first_lo)):
                if cnt:
                    f, g = MonotoneLift(n, V[i]), MonotoneLift(n, V[j])
                    rep.failures.append({"bound": kind, "count": int(cnt), **witness_to_dict(f, g)})
        rep.details["per_n"] = per_n
    return rep


def attainment_sweep(x: Fraction, y: Fraction, ns) -> dict:
    """max_composition for each n whose multiples fit x and y, with the formula value."""
    x, y = Fraction(x), Fraction(y)
    target = rot_max(x, y)
    rows = []
    first = None
    for n in ns:
        if n % x.denominator or n % y.denominator:
            continue
        value, (f, g) = max_composition(x, y, n, allow_large=True)
        rows.append({"n": n, "max": value, "witness": (f, g)})
        if first is None and value == target:
            first = n
    return {"x": x, "y": y, "formula": target, "rows": rows, "smallest_attaining_n": first}
