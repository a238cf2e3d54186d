"""Box-union descriptions of the ziggurat and their equivalence.

Two descriptions are compared:

* good boxes: coordinate permutations of Π(1/m, a/m, (m-a)/m), gcd(a, m) = 1;
* CW boxes: Π(p1/q, p2/q, p3/q) with p1 + p2 + p3 = q + 1, p1, p2 <= q,
  obtained by unfolding the max-formula for R(x, y).

Every non-degenerate CW box lies inside a good box (:func:`find_good_cover`),
and no good box lies inside another (:func:`verify_minimality`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import DomainError, InvariantViolation, UsageError
from .exact import format_rational, min_den_fraction_in
from .report import Report, timed
from .rotnum import realizable_bound

__all__ = [
    "Box",
    "CwBoxParams",
    "is_good",
    "contains",
    "contains_point",
    "enumerate_good",
    "enumerate_cw",
    "find_good_cover",
    "verify_equivalence",
    "verify_minimality",
    "verify_point_equivalence",
    "unit_grid",
]


@dataclass(frozen=True, order=True)
class Box:
    """Π(ax, ay, az) = [0, ax] × [0, ay] × [0, az]."""

    ax: Fraction
    ay: Fraction
    az: Fraction

    def __post_init__(self):
        for v in (self.ax, self.ay, self.az):
            if v < 0:
                raise DomainError(f"negative box extent {v}")

    @property
    def corner(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.ax, self.ay, self.az)

    @property
    def den(self) -> int:
        return math.lcm(*(v.denominator for v in self.corner))

    def __str__(self):
        return "Π(" + ", ".join(format_rational(v) for v in self.corner) + ")"


@dataclass(frozen=True, order=True)
class CwBoxParams:
    p1: int
    p2: int
    p3: int
    q: int

    def __post_init__(self):
        if self.q < 1 or min(self.p1, self.p2, self.p3) < 0:
            raise UsageError(f"bad CW parameters {self}")
        if self.p1 + self.p2 + self.p3 != self.q + 1:
            raise UsageError(f"p1 + p2 + p3 must equal q + 1 in {self}")
        if self.p1 > self.q or self.p2 > self.q:
            raise UsageError(f"p1, p2 must not exceed q in {self}")

    @property
    def degenerate(self) -> bool:
        return min(self.p1, self.p2, self.p3) == 0

    def box(self) -> Box:
        q = self.q
        return Box(Fraction(self.p1, q), Fraction(self.p2, q), Fraction(self.p3, q))


def is_good(b: Box) -> bool:
    """True iff {ax, ay, az} = {1/q, p/q, (q-p)/q} as multisets, gcd(p, q) = 1, 0 < p < q."""
    c = b.corner
    for i in range(3):
        unit = c[i]
        if unit.numerator != 1 or unit.denominator < 2:
            continue
        q = unit.denominator
        u, v = (c[j] for j in range(3) if j != i)
        if u + v == 1 and u.denominator == q and 0 < u < 1:
            return True
    return False


def contains(outer: Box, inner: Box) -> bool:
    return inner.ax <= outer.ax and inner.ay <= outer.ay and inner.az <= outer.az


def contains_point(b: Box, p: tuple[Fraction, Fraction, Fraction]) -> bool:
    x, y, z = p
    return 0 <= x <= b.ax and 0 <= y <= b.ay and 0 <= z <= b.az


def _good_triples(max_den: int) -> Iterable[tuple[int, int, int, int]]:
    """(k1, k2, k3, m) for every distinct good box Π(k1/m, k2/m, k3/m), m <= max_den."""
    seen = set()
    for m in range(2, max_den + 1):
        for a in range(1, m):
            if math.gcd(a, m) != 1:
                continue
            for t in permutations((a, m - a, 1)):
                row = t + (m,)
                if row not in seen:
                    seen.add(row)
                    yield row


def enumerate_good(max_den: int) -> set[Box]:
    if max_den < 2:
        raise UsageError("max_den must be >= 2")
    return {Box(Fraction(k1, m), Fraction(k2, m), Fraction(k3, m))
            for k1, k2, k3, m in _good_triples(max_den)}


def _good_arrays(max_den: int) -> tuple[list[Box], np.ndarray, np.ndarray]:
    rows = sorted(set(_good_triples(max_den)), key=lambda t: (t[3], t[:3]))
    K = np.array([r[:3] for r in rows], dtype=np.int64).reshape(-1, 3)
    M = np.array([r[3] for r in rows], dtype=np.int64)
    boxes = [Box(Fraction(k1, m), Fraction(k2, m), Fraction(k3, m)) for k1, k2, k3, m in rows]
    return boxes, K, M


def enumerate_cw(max_den: int, include_degenerate: bool = False) -> set[CwBoxParams]:
    if max_den < 1:
        raise UsageError("max_den must be >= 1")
    lo = 0 if include_degenerate else 1
    out = set()
    for q in range(1, max_den + 1):
        for p1 in range(lo, q + 1):
            for p2 in range(lo, q + 1):
                p3 = q + 1 - p1 - p2
                if p3 >= lo:
                    out.add(CwBoxParams(p1, p2, p3, q))
    return out


def find_good_cover(c: CwBoxParams) -> Box:
    """A good box containing Π(p1/q, p2/q, p3/q); all p_i must be positive.

    Sorted so that p1 <= p2 <= p3, the cover is Π(1/n, m/n, (n-m)/n) where m/n
    is the least-denominator fraction in [p2/q, (q - p3)/q]. The first
    condition p1/q <= 1/n holds iff n <= floor(q/p1), and a Farey-sequence
    argument shows such a fraction always exists.
    """
    if c.degenerate:
        raise DomainError(f"degenerate CW box {c} has no good cover")
    q = c.q
    ps = (c.p1, c.p2, c.p3)
    order = sorted(range(3), key=lambda i: ps[i])
    s1, s2, s3 = (ps[i] for i in order)

    if s1 == 1:
        # s2 + s3 = q: the box is good after dividing out gcd(s2, q)
        g = math.gcd(s2, q)
        n, m = q // g, s2 // g
    else:
        N = q // s1
        mn = min_den_fraction_in(Fraction(s2, q), Fraction(q - s3, q), N)
        if mn is None:
            raise InvariantViolation(f"no fraction of denominator <= {N} covers {c}")
        m, n = mn.numerator, mn.denominator
    sorted_cover = (Fraction(1, n), Fraction(m, n), Fraction(n - m, n))
    out = [None, None, None]
    for pos, i in enumerate(order):
        out[i] = sorted_cover[pos]
    cover = Box(*out)
    if not (is_good(cover) and contains(cover, c.box())):
        raise InvariantViolation(f"cover {cover} does not contain {c.box()}")
    return cover


def _fmt_params(c: CwBoxParams) -> dict:
    return {"p1": c.p1, "p2": c.p2, "p3": c.p3, "q": c.q}


def verify_equivalence(max_den: int) -> Report:
    """Check every non-degenerate CW box with q <= max_den against its good cover."""
    if max_den < 2:
        raise UsageError("max_den must be >= 2")
    rep = Report("equivalence", details={"max_den": max_den})
    with timed(rep):
        max_cover = 0
        over_q = 0
        for c in sorted(enumerate_cw(max_den), key=lambda c: (c.q, c.p1, c.p2)):
            rep.checked += 1
            try:
                cover = find_good_cover(c)
            except InvariantViolation as e:
                rep.failures.append({**_fmt_params(c), "error": str(e)})
                continue
            n = cover.den
            max_cover = max(max_cover, n)
            if n > c.q:
                over_q += 1
                rep.failures.append({**_fmt_params(c), "error": f"cover denominator {n} > q"})
        rep.details["max_cover_den"] = max_cover
        rep.details["cover_den_exceeds_q"] = over_q
    return rep


def verify_minimality(max_den: int) -> Report:
    """No good box of denominator <= max_den contains a different one."""
    if max_den < 2:
        raise UsageError("max_den must be >= 2")
    rep = Report("minimality", details={"max_den": max_den})
    with timed(rep):
        boxes, K, M = _good_arrays(max_den)
        pairs, count, first = _kernels.nested_pairs(K, M)
        rep.checked = int(pairs)
        rep.details["boxes"] = len(boxes)
        rep.details["nested_pairs"] = int(count)
        if count:
            for i, outer in enumerate(boxes):
                for j, inner in enumerate(boxes):
                    if i != j and contains(outer, inner):
                        rep.failures.append({"outer": str(outer), "inner": str(inner)})
    return rep


def unit_grid(max_den: int, include_zero: bool = True) -> list[Fraction]:
    """Sorted rationals in [0, 1) (or (0, 1)) with denominator <= max_den."""
    pts = {Fraction(a, b) for b in range(1, max_den + 1) for a in range(b)}
    if not include_zero:
        pts.discard(Fraction(0))
    return sorted(pts)


def _as_int_arrays(vals: list[Fraction]) -> tuple[np.ndarray, np.ndarray]:
    return (np.array([v.numerator for v in vals], dtype=np.int64),
            np.array([v.denominator for v in vals], dtype=np.int64))


def verify_point_equivalence(grid_den: int = 12, box_den: int = 150,
                             include_faces: bool = True) -> Report:
    """Pointwise comparison of the good-box union with the closed form.

    Every grid point (x, y, z) with z > 0 is tested both for membership in
    some good box of denominator <= box_den and for 0 < z <= R(1-x, 1-y) - 1.
    ``include_faces=False`` drops the x = 0 and y = 0 planes from the grid.
    """
    rep = Report("point-equivalence", details={
        "grid_den": grid_den, "box_den": box_den, "include_faces": include_faces})
    with timed(rep):
        xs = unit_grid(grid_den, include_zero=include_faces)
        zs = unit_grid(grid_den, include_zero=False)
        boxes, K, M = _good_arrays(box_den)
        pts = [(x, y) for x in xs for y in xs]
        xn, xd = _as_int_arrays([p[0] for p in pts])
        yn, yd = _as_int_arrays([p[1] for p in pts])
        best = _kernels.box_heights(xn, xd, yn, yd, K, M)
        only_formula = only_boxes = 0
        for (x, y), b in zip(pts, best):
            height = boxes[b].az if b >= 0 else None
            bound = realizable_bound(x, y)
            for z in zs:
                rep.checked += 1
                in_boxes = height is not None and z <= height
                in_formula = z <= bound
                if in_boxes != in_formula:
                    if in_formula:
                        only_formula += 1
                    else:
                        only_boxes += 1
                    if len(rep.failures) < 50:
                        rep.failures.append({"x": format_rational(x), "y": format_rational(y),
                                             "z": format_rational(z), "formula": in_formula,
                                             "boxes": in_boxes})
        rep.details["mismatches"] = only_formula + only_boxes
        rep.details["only_formula"] = only_formula
        rep.details["only_boxes"] = only_boxes
        rep.details["failures_truncated_to"] = 50
    return rep
