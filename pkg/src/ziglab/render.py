"""Deterministic SVG and mesh emitters.

All geometry is computed exactly; conversion to decimal text happens only when
a coordinate is written, with a fixed number of digits, so identical inputs
give byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .boxes import enumerate_good
from .errors import UsageError
from .exact import mediant
from .fractal import delta, delta_prime, vertices_rab
from .rotnum import rot_max

KINDS = ("topview", "vertices", "lines", "transformed", "tree", "mesh")

_PAD, _SPAN = 50, 900
_FAMILY_COLOURS = {"F1": "#1f4e9c", "F2": "#c0392b", "F3": "#27864a"}
_RAMP = [(0.0, (255, 247, 236)), (0.25, (253, 212, 158)), (0.5, (252, 141, 89)),
         (0.75, (215, 48, 31)), (1.0, (127, 0, 0))]


@dataclass(frozen=True)
class RenderSpec:
    kind: str
    den_cutoff: int = 30
    size_px: int = 1000

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UsageError(f"unknown render kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.den_cutoff < 2:
            raise UsageError("den_cutoff must be >= 2")
        if self.size_px < 64:
            raise UsageError("size_px must be >= 64")

    @property
    def extension(self) -> str:
        return "obj" if self.kind == "mesh" else "svg"


def _f(v) -> str:
    s = f"{float(v):.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _px(x, y) -> tuple[str, str]:
    return _f(_PAD + _SPAN * x), _f(_PAD + _SPAN * (1 - y))


def _svg(size: int, body: list[str], title: str) -> str:
    head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
            f'height="{size}" viewBox="0 0 1000 1000">\n'
            f'<title>{title}</title>\n'
            '<rect x="0" y="0" width="1000" height="1000" fill="#ffffff"/>\n')
    frame = (f'<rect x="{_PAD}" y="{_PAD}" width="{_SPAN}" height="{_SPAN}" '
             'fill="none" stroke="#000000" stroke-width="1"/>\n')
    return head + "".join(line + "\n" for line in body) + frame + "</svg>\n"


def _line(p, q, colour, width=1, dash=None) -> str:
    (x1, y1), (x2, y2) = _px(*p), _px(*q)
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{colour}" '
            f'stroke-width="{width}"{extra}/>')


def _dot(p, r, colour) -> str:
    cx, cy = _px(*p)
    return f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{colour}"/>'


def _ramp(t: float) -> str:
    t = min(max(t, 0.0), 1.0)
    for (t0, c0), (t1, c1) in zip(_RAMP, _RAMP[1:]):
        if t <= t1:
            u = (t - t0) / (t1 - t0)
            rgb = [round(a + (b - a) * u) for a, b in zip(c0, c1)]
            return "#" + "".join(f"{v:02x}" for v in rgb)
    return "#7f0000"


def render_topview(spec: RenderSpec) -> str:
    G = spec.den_cutoff
    cell = Fraction(1, G)
    body = []
    for i in range(G):
        for j in range(G):
            x, y = Fraction(i, G), Fraction(j, G)
            v = rot_max(x, y)
            px, py = _px(x, y + cell)
            w = _f(_SPAN * cell)
            body.append(f'<rect x="{px}" y="{py}" width="{w}" height="{w}" '
                        f'fill="{_ramp(float((v - 1) / 2))}"/>')
    return _svg(spec.size_px, body, f"R(x,y) on the {G}x{G} grid")


def render_vertices(spec: RenderSpec) -> str:
    body = [_line((0, 0), (1, 1), "#888888", dash="6 4")]
    verts = sorted(vertices_rab(spec.den_cutoff), key=lambda v: (v.family, v.x, v.y))
    for v in verts:
        body.append(_dot((v.x, v.y), 3, _FAMILY_COLOURS[v.family]))
    return _svg(spec.size_px, body, "projected vertices of the graph of R")


def render_lines(spec: RenderSpec) -> str:
    N = spec.den_cutoff
    body = []
    for m in range(1, N):
        body.append(_line((0, 1), (1, 1 - Fraction(1, m)), "#2ca02c", 0.6))
    for k in range(1, N):
        body.append(_line((0, Fraction(k - 1, k)), (1, 1), "#d62728", 0.6))
    inner = delta(N)
    for p in sorted(delta_prime(N) - inner):
        body.append(_dot(p, 1.5, "#999999"))
    for p in sorted(inner):
        body.append(_dot(p, 3, "#000000"))
    return _svg(spec.size_px, body, "green and red line families with Δ")


def render_transformed(spec: RenderSpec) -> str:
    N = spec.den_cutoff
    scale = Fraction(1, N)
    body = [_line((0, 0), (1, 1), "#888888", dash="6 4")]
    for m in range(1, N):
        for n in range(1, N - m + 1):
            colour, r = ("#000000", 3) if math.gcd(m, n) == 1 else ("#bbbbbb", 1.5)
            body.append(_dot((m * scale, n * scale), r, colour))
    return _svg(spec.size_px, body, "Euclid coordinates of Δ")


def render_tree(spec: RenderSpec) -> str:
    N = spec.den_cutoff
    body = []
    stack = [(Fraction(0), Fraction(1))]
    while stack:
        lo, hi = stack.pop()
        med = mediant(lo, hi)
        if med.denominator > N:
            continue
        tri = [(lo, 1 - lo), (hi, 1 - hi), (hi, 1 - lo)]
        pts = " ".join(",".join(_px(*p)) for p in tri)
        body.append(f'<polygon points="{pts}" fill="none" stroke="#d62728" stroke-width="0.6"/>')
        x0, y1 = _px(med, 1 - lo)
        w, h = _f(_SPAN * (hi - med)), _f(_SPAN * (med - lo))
        body.append(f'<rect x="{x0}" y="{y1}" width="{w}" height="{h}" fill="#fdd49e" '
                    'stroke="#000000" stroke-width="0.4"/>')
        stack.append((med, hi))
        stack.append((lo, med))
    return _svg(spec.size_px, body, "Farey triangle subdivision")


_CUBE_FACES = ((1, 2, 4, 3), (5, 7, 8, 6), (1, 5, 6, 2), (3, 4, 8, 7), (1, 3, 7, 5), (2, 6, 8, 4))


def render_mesh(spec: RenderSpec) -> str:
    """Box soup: one axis-aligned cuboid per good box, OBJ-style text."""
    boxes = sorted(enumerate_good(spec.den_cutoff))
    out = [f"# good boxes with denominator <= {spec.den_cutoff}: {len(boxes)}",
           "# one cuboid [0,ax]x[0,ay]x[0,az] per box; 8 vertices and 6 quads each"]
    for k, b in enumerate(boxes):
        out.append(f"o box{k}")
        for x in (0, b.ax):
            for y in (0, b.ay):
                for z in (0, b.az):
                    out.append(f"v {float(x):.9g} {float(y):.9g} {float(z):.9g}")
        base = 8 * k
        for face in _CUBE_FACES:
            out.append("f " + " ".join(str(base + i) for i in face))
    return "\n".join(out) + "\n"


_RENDERERS = {"topview": render_topview, "vertices": render_vertices, "lines": render_lines,
              "transformed": render_transformed, "tree": render_tree, "mesh": render_mesh}


def render(spec: RenderSpec) -> str:
    return _RENDERERS[spec.kind](spec)
