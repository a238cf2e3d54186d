"""Vertices of the ziggurat and the self-similar set Δ.

Δ = {(a/q, (q-1)/q) : 0 < a < q, gcd(a, q) = 1} is the projection of one vertex
family. The projective map Q(x, y) = (x/(1-y), (1-x)/(1-y)) sends Δ to the
coprime pairs (a, q-a) of positive integers, and conjugates

    T1(x, y) = (x/(1+x), (x+y)/(1+x))      to  (m, n) -> (m, m+n)
    T2(x, y) = (1/(2-x), (1+y-x)/(2-x))    to  (m, n) -> (m+n, n)

so Δ = T1(Δ) ⊔ T2(Δ) ⊔ {(1/2, 1/2)} is Euclid's algorithm run backwards.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

import numpy as np

from .errors import DomainError, UsageError
from .exact import format_rational, is_farey_neighbor, mediant
from .report import Report, timed
from .rotnum import rot_max

Point = tuple[Fraction, Fraction]

ROOT: Point = (Fraction(1, 2), Fraction(1, 2))

__all__ = [
    "Vertex3", "ProjectiveMap2", "FareyTriangle", "Rect", "Classification",
    "T1", "T2", "Q", "T1_EUCLID", "T2_EUCLID", "ROOT",
    "vertices_jn", "vertices_rab", "delta", "delta_point", "in_delta",
    "apply_projective", "euclid_coords", "classify_parent", "verify_self_similarity",
    "line_indices", "delta_prime", "verify_lines", "subdivide", "subdivision_tree",
    "rect_adjacency_report", "vertex_condition_candidates", "vertex_condition_witness",
    "verify_vertex_condition",
]


# ------------------------------------------------------------------ vertices

FAMILIES = ("F1", "F2", "F3")


@dataclass(frozen=True)
class Vertex3:
    x: Fraction
    y: Fraction
    z: Fraction
    family: str
    families: frozenset = field(default=frozenset(), compare=False)

    @property
    def shared(self) -> bool:
        return len(self.families) > 1

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)


def _coprime_pairs(max_den: int) -> Iterator[tuple[int, int]]:
    for m in range(2, max_den + 1):
        for a in range(1, m):
            if math.gcd(a, m) == 1:
                yield m, a


def _collect(max_den: int, makers) -> list[Vertex3]:
    if max_den < 2:
        raise UsageError("max_den must be >= 2")
    fams: dict[tuple, set] = {}
    for fam, make in zip(FAMILIES, makers):
        for m, a in _coprime_pairs(max_den):
            fams.setdefault(make(m, a), set()).add(fam)
    return [Vertex3(*p, family=min(f), families=frozenset(f)) for p, f in fams.items()]


def vertices_jn(max_den: int) -> list[Vertex3]:
    """Vertices of the box union, on the planes x+y=1, x+z=1, y+z=1 respectively."""
    F = Fraction
    return _collect(max_den, (
        lambda m, a: (F(a, m), F(m - a, m), F(1, m)),
        lambda m, a: (F(m - a, m), F(1, m), F(a, m)),
        lambda m, a: (F(1, m), F(m - a, m), F(a, m)),
    ))


def vertices_rab(max_den: int, check: bool = False) -> list[Vertex3]:
    """Vertices (x, y, R(x, y)) of the graph of R; ``check`` recomputes z from R."""
    F = Fraction
    out = _collect(max_den, (
        lambda m, a: (F(m - a, m), F(a, m), 1 + F(1, m)),
        lambda m, a: (F(a, m), 1 - F(1, m), 1 + F(a, m)),
        lambda m, a: (1 - F(1, m), F(a, m), 1 + F(a, m)),
    ))
    if check:
        for v in out:
            if rot_max(v.x, v.y) != v.z:
                raise DomainError(f"R({v.x}, {v.y}) = {rot_max(v.x, v.y)} != {v.z}")
    return out


# ------------------------------------------------------- projective geometry

@dataclass(frozen=True)
class ProjectiveMap2:
    """Integer 3x3 matrix acting on [x : y : t]; defined up to a nonzero scalar."""

    m: tuple[tuple[int, int, int], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.det() == 0:
            raise UsageError("singular projective map")

    def det(self) -> int:
        (a, b, c), (d, e, f), (g, h, i) = self.m
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def __matmul__(self, other: "ProjectiveMap2") -> "ProjectiveMap2":
        rows = tuple(tuple(sum(self.m[i][k] * other.m[k][j] for k in range(3)) for j in range(3))
                     for i in range(3))
        return ProjectiveMap2(rows, f"{self.name}·{other.name}")

    def inverse(self) -> "ProjectiveMap2":
        """Adjugate, which is the inverse up to the scalar det."""
        m = self.m
        cof = [[(m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
                 - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]) for j in range(3)]
               for i in range(3)]
        return ProjectiveMap2(tuple(tuple(cof[j][i] for j in range(3)) for i in range(3)),
                              f"{self.name}^-1")

    def scalar_to(self, other: "ProjectiveMap2") -> Optional[Fraction]:
        """λ with self = λ·other, or None if they differ projectively."""
        lam = None
        for r1, r2 in zip(self.m, other.m):
            for u, v in zip(r1, r2):
                if v == 0:
                    if u != 0:
                        return None
                    continue
                ratio = Fraction(u, v)
                if lam is None:
                    lam = ratio
                elif ratio != lam:
                    return None
        return lam

    def __call__(self, p: Point) -> Point:
        return apply_projective(self, p)


def apply_projective(M: ProjectiveMap2, p: Point) -> Point:
    x, y = Fraction(p[0]), Fraction(p[1])
    # integer homogeneous coordinates [x : y : 1] = [a d : c b : b d]
    a, b, c, d = x.numerator, x.denominator, y.numerator, y.denominator
    h = (a * d, c * b, b * d)
    X, Y, T = (r[0] * h[0] + r[1] * h[1] + r[2] * h[2] for r in M.m)
    if T == 0:
        raise DomainError(f"{M.name or 'map'} sends ({x}, {y}) to the line at infinity")
    return (Fraction(X, T), Fraction(Y, T))


T1 = ProjectiveMap2(((1, 0, 0), (1, 1, 0), (1, 0, 1)), "T1")
T2 = ProjectiveMap2(((0, 0, 1), (-1, 1, 1), (-1, 0, 2)), "T2")
Q = ProjectiveMap2(((1, 0, 0), (-1, 0, 1), (0, -1, 1)), "Q")
T1_EUCLID = ProjectiveMap2(((1, 0, 0), (1, 1, 0), (0, 0, 1)), "T1e")
T2_EUCLID = ProjectiveMap2(((1, 1, 0), (0, 1, 0), (0, 0, 1)), "T2e")


# ------------------------------------------------------------------------ Δ

def delta_point(a: int, q: int) -> Point:
    return (Fraction(a, q), Fraction(q - 1, q))


def delta(max_den: int) -> frozenset[Point]:
    if max_den < 2:
        raise UsageError("max_den must be >= 2")
    return frozenset(delta_point(a, q) for q, a in _coprime_pairs(max_den))


def in_delta(p: Point) -> bool:
    x, y = p
    gap = 1 - y
    if gap <= 0 or gap.numerator != 1:
        return False
    q = gap.denominator
    return q >= 2 and 0 < x < 1 and x.denominator == q


def euclid_coords(p: Point) -> tuple[int, int]:
    """Q-image of a Δ point: (a/q, (q-1)/q) -> (a, q - a)."""
    m, n = apply_projective(Q, p)
    if m.denominator != 1 or n.denominator != 1:
        raise DomainError(f"{p} has non-integral Euclid coordinates")
    return int(m), int(n)


def _from_euclid(m: int, n: int) -> Point:
    return delta_point(m, m + n)


class Classification(NamedTuple):
    kind: str  # "root", "T1" or "T2"
    parent: Optional[Point]


def classify_parent(p: Point) -> Classification:
    """Which branch of the self-similarity p lies on, and its preimage in Δ."""
    p = (Fraction(p[0]), Fraction(p[1]))
    if not in_delta(p):
        raise DomainError(f"{p} is not a point of Δ")
    m, n = euclid_coords(p)
    if m == n:
        # coprime coordinates: only (1, 1)
        return Classification("root", None)
    if m < n:
        kind, parent, T = "T1", _from_euclid(m, n - m), T1
    else:
        kind, parent, T = "T2", _from_euclid(m - n, n), T2
    if apply_projective(T, parent) != p:
        raise DomainError(f"{T.name}({parent}) != {p}")
    return Classification(kind, parent)


_INVERSES = {"T1": T1.inverse(), "T2": T2.inverse()}


def _preimage_in_delta(T: ProjectiveMap2, p: Point) -> bool:
    try:
        return in_delta(apply_projective(_INVERSES[T.name], p))
    except DomainError:
        return False


def _fmt_point(p: Point) -> list[str]:
    return [format_rational(p[0]), format_rational(p[1])]


def verify_self_similarity(max_den: int) -> Report:
    if max_den < 2:
        raise UsageError("max_den must be >= 2")
    rep = Report("selfsim", details={"max_den": max_den})
    with timed(rep):
        pts = delta(max_den)
        counts = {"root": 0, "T1": 0, "T2": 0}
        for p in sorted(pts):
            rep.checked += 1
            try:
                kind, parent = classify_parent(p)
            except DomainError as e:
                rep.failures.append({"point": _fmt_point(p), "error": str(e)})
                continue
            counts[kind] += 1
            if kind == "root":
                if p != ROOT:
                    rep.failures.append({"point": _fmt_point(p), "error": "unexpected root"})
                continue
            if parent not in pts or parent[0].denominator >= p[0].denominator:
                rep.failures.append({"point": _fmt_point(p), "error": "parent outside truncation"})
            in1, in2 = _preimage_in_delta(T1, p), _preimage_in_delta(T2, p)
            if in1 + in2 != 1 or (kind == "T1") != in1:
                rep.failures.append({"point": _fmt_point(p), "error": "branches not disjoint"})
            for T in (T1, T2):
                img = apply_projective(T, p)
                if not in_delta(img):
                    rep.failures.append({"point": _fmt_point(p), "error": f"{T.name} image not in Δ"})
        expected = sum(_totient(q) for q in range(2, max_den + 1))
        if len(pts) != expected:
            rep.failures.append({"error": f"|Δ| = {len(pts)}, totient sum {expected}"})
        if counts["T1"] + counts["T2"] + counts["root"] != len(pts) or counts["root"] != 1:
            rep.failures.append({"error": f"partition counts {counts}"})
        conj = {}
        for name, T, Te in (("T1", T1, T1_EUCLID), ("T2", T2, T2_EUCLID)):
            lam = (Q @ T).scalar_to(Te @ Q)
            conj[name] = format_rational(lam) if lam is not None else None
            if lam is None:
                rep.failures.append({"error": f"Q·{name} is not a multiple of {name}e·Q"})
        rep.details.update(points=len(pts), totient_sum=expected, t1_children=counts["T1"],
                           t2_children=counts["T2"], conjugacy_scalars=conj)
    return rep


def _totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# -------------------------------------------------------------------- lines
# green line m: through (0, 1) with slope -1/m, y = 1 - x/m
# red line k:   through (1, 1) with slope 1/k,  y = (k-1)/k + x/k

def line_indices(p: Point) -> tuple[int, int]:
    """(m, k) with p on green line m and red line k."""
    x, y = Fraction(p[0]), Fraction(p[1])
    if y == 1:
        raise DomainError(f"{p} lies on no green/red pair")
    m, k = x / (1 - y), (1 - x) / (1 - y)
    if m.denominator != 1 or k.denominator != 1 or m < 1 or k < 1:
        raise DomainError(f"{p} lies on no green/red pair")
    return int(m), int(k)


def delta_prime(bound: int) -> frozenset[Point]:
    """Green/red intersections (m/(m+k), (m+k-1)/(m+k)) with m + k <= bound."""
    if bound < 2:
        raise UsageError("bound must be >= 2")
    return frozenset((Fraction(m, s), Fraction(s - 1, s))
                     for s in range(2, bound + 1) for m in range(1, s))


def least_ordinate(points) -> frozenset[Point]:
    low: dict[Fraction, Fraction] = {}
    for x, y in points:
        if x not in low or y < low[x]:
            low[x] = y
    return frozenset(low.items())


def verify_lines(bound: int) -> Report:
    rep = Report("lines", details={"bound": bound})
    with timed(rep):
        dp = delta_prime(bound)
        least = least_ordinate(dp)
        target = delta(bound)
        rep.checked = len(dp)
        for p in sorted(least - target):
            rep.failures.append({"point": _fmt_point(p), "error": "least point not in Δ"})
        for p in sorted(target - least):
            rep.failures.append({"point": _fmt_point(p), "error": "Δ point missing"})
        rep.details.update(delta_prime_points=len(dp), least_points=len(least),
                           delta_points=len(target))
    return rep


# ----------------------------------------------------- Farey triangle tree

@dataclass(frozen=True)
class Rect:
    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def contains(self, p: Point) -> bool:
        return self.x0 <= p[0] <= self.x1 and self.y0 <= p[1] <= self.y1

    def __str__(self):
        f = format_rational
        return f"[{f(self.x0)},{f(self.x1)}]x[{f(self.y0)},{f(self.y1)}]"


@dataclass(frozen=True)
class FareyTriangle:
    """Δ_{lo,hi} = {(x, y): x + y > 1, x < hi, y < 1 - lo}."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not self.lo < self.hi or not is_farey_neighbor(self.lo, self.hi):
            raise UsageError(f"({self.lo}, {self.hi}) is not a Farey pair")

    @classmethod
    def nth(cls, n: int) -> "FareyTriangle":
        """Δ_n = {x + y > 1, x < 1/n, y < n/(n+1)}."""
        return cls(Fraction(1, n + 1), Fraction(1, n))

    def contains(self, p: Point) -> bool:
        x, y = p
        return x + y > 1 and x < self.hi and y < 1 - self.lo

    def __str__(self):
        return f"Δ[{format_rational(self.lo)},{format_rational(self.hi)}]"


def subdivide(t: FareyTriangle) -> tuple[Rect, FareyTriangle, FareyTriangle]:
    med = mediant(t.lo, t.hi)
    rect = Rect(med, t.hi, 1 - med, 1 - t.lo)
    return rect, FareyTriangle(t.lo, med), FareyTriangle(med, t.hi)


@dataclass
class TreeNode:
    triangle: FareyTriangle
    depth: int
    rect: Rect
    children: list = field(default_factory=list)

    @property
    def key(self) -> Fraction:
        return self.rect.x0


def subdivision_tree(depth: int, root: Optional[FareyTriangle] = None) -> TreeNode:
    if depth < 1:
        raise UsageError("depth must be >= 1")
    root = root or FareyTriangle(Fraction(0), Fraction(1))
    rect, _, _ = subdivide(root)
    top = TreeNode(root, 1, rect)
    todo = deque([top])
    while todo:
        node = todo.popleft()
        if node.depth == depth:
            continue
        _, left, right = subdivide(node.triangle)
        for t in (left, right):
            child = TreeNode(t, node.depth + 1, subdivide(t)[0])
            node.children.append(child)
            todo.append(child)
    return top


def iter_tree(node: TreeNode) -> Iterator[TreeNode]:
    yield node
    for c in node.children:
        yield from iter_tree(c)


def tree_text(node: TreeNode) -> str:
    lines = []
    for n in iter_tree(node):
        lines.append("  " * (n.depth - 1)
                     + f"{n.triangle} mediant={format_rational(n.key)} rect={n.rect}")
    return "\n".join(lines) + "\n"


def tree_dict(node: TreeNode) -> dict:
    return {"lo": format_rational(node.triangle.lo), "hi": format_rational(node.triangle.hi),
            "mediant": format_rational(node.key),
            "rect": [format_rational(v) for v in (node.rect.x0, node.rect.x1,
                                                  node.rect.y0, node.rect.y1)],
            "children": [tree_dict(c) for c in node.children]}


def _frac_arrays(vals):
    return (np.array([v.numerator for v in vals], dtype=np.int64),
            np.array([v.denominator for v in vals], dtype=np.int64))


def rect_adjacency_report(depth: int) -> Report:
    """Farey neighbours ⇔ their rectangles share a boundary segment of positive length."""
    rep = Report("adjacency", details={"depth": depth})
    with timed(rep):
        nodes = list(iter_tree(subdivision_tree(depth)))
        keys = [n.key for n in nodes]
        if len(set(keys)) != len(keys):
            rep.failures.append({"error": "a mediant occurs twice in the tree"})
        rects = [n.rect for n in nodes]
        A = {name: _frac_arrays([getattr(r, name) for r in rects])
             for name in ("x0", "x1", "y0", "y1")}
        kn, kd = _frac_arrays(keys)
        N = len(nodes)
        neighbours = segments = 0

        def gt(a, b, i):
            # a[j] > b[i] for all j (vectorised over j)
            (an, ad), (bn, bd) = a, b
            return an * bd[i] > bn[i] * ad

        def lt(a, b, i):
            (an, ad), (bn, bd) = a, b
            return an * bd[i] < bn[i] * ad

        for i in range(N):
            j = np.arange(i + 1, N)
            if not j.size:
                break
            sl = slice(i + 1, N)
            sub = {k: (v[0][sl], v[1][sl]) for k, v in A.items()}
            # overlap of [x0_i, x1_i] and [x0_j, x1_j]: positive, zero (touching) or negative
            x_pos = gt(sub["x1"], A["x0"], i) & lt(sub["x0"], A["x1"], i)
            x_neg = lt(sub["x1"], A["x0"], i) | gt(sub["x0"], A["x1"], i)
            y_pos = gt(sub["y1"], A["y0"], i) & lt(sub["y0"], A["y1"], i)
            y_neg = lt(sub["y1"], A["y0"], i) | gt(sub["y0"], A["y1"], i)
            x_zero, y_zero = ~x_pos & ~x_neg, ~y_pos & ~y_neg
            segment = (x_zero & y_pos) | (y_zero & x_pos)
            overlap = x_pos & y_pos
            det = np.abs(kd[i] * kn[sl] - kn[i] * kd[sl])
            neighbour = det == 1
            neighbours += int(neighbour.sum())
            segments += int(segment.sum())
            rep.checked += j.size
            for jj in np.flatnonzero(overlap | (segment != neighbour)):
                k = i + 1 + int(jj)
                rep.failures.append({"a": format_rational(keys[i]), "b": format_rational(keys[k]),
                                     "neighbours": bool(neighbour[jj]),
                                     "shared_segment": bool(segment[jj]),
                                     "interiors_overlap": bool(overlap[jj])})
        rep.details.update(rectangles=N, neighbour_pairs=neighbours, segment_pairs=segments)
    return rep


# --------------------------------------------------------- vertex condition

def vertex_condition_candidates(x: Fraction, y: Fraction, grid_den: int) -> list[Point]:
    """Grid points (i/G, j/G) <= (x, y) coordinatewise with strictly smaller sum."""
    G = grid_den
    s = x + y
    return [(Fraction(i, G), Fraction(j, G))
            for i in range(math.floor(x * G) + 1) for j in range(math.floor(y * G) + 1)
            if Fraction(i + j, G) < s]


def vertex_condition_witness(x: Fraction, y: Fraction, grid_den: int) -> Optional[Point]:
    """First grid point that violates strict growth of R at (x, y), or None."""
    top = rot_max(x, y)
    for p in vertex_condition_candidates(x, y, grid_den):
        if rot_max(*p) >= top:
            return p
    return None


def verify_vertex_condition(max_den: int, grid_den: int) -> Report:
    if grid_den < max_den:
        raise UsageError("grid_den must be >= max_den")
    rep = Report("vertexcond", details={"max_den": max_den, "grid_den": grid_den})
    with timed(rep):
        proj = sorted({(v.x, v.y) for v in vertices_rab(max_den)})
        for x, y in proj:
            top = rot_max(x, y)
            for p in vertex_condition_candidates(x, y, grid_den):
                rep.checked += 1
                if rot_max(*p) >= top:
                    rep.failures.append({"vertex": _fmt_point((x, y)), "witness": _fmt_point(p)})
                    break
        rep.details["vertices"] = len(proj)
    return rep
