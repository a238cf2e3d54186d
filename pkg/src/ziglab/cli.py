"""Command-line interface.

Exit codes: 0 success or verified, 1 negative answer or failed verification,
2 usage error. Fractions are read and written as "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import boxes, dynamics, fractal, rotnum
from .errors import DomainError, UsageError
from .exact import format_rational as fmt
from .exact import parse_rational
from .render import KINDS, RenderSpec, render
from .serialize import (boxes_to_csv, boxes_to_json, cw_to_csv, cw_to_json, points_to_csv,
                        points_to_json)

OUT_ENV = "ZIGLAB_OUT"

# (default, maximum) per verifier bound
LIMITS = {
    "equivalence": {"max_den": (30, 200)},
    "minimality": {"max_den": (30, 200)},
    "selfsim": {"max_den": (30, 2000)},
    "lines": {"max_den": (30, 2000)},
    "adjacency": {"depth": (10, 16)},
    "vertexcond": {"max_den": (10, 60), "grid_den": (12, 120)},
    "oracle-bound": {"n": (6, 7)},
    "points": {"grid_den": (12, 24), "max_den": (150, 400)},
}


def _frac(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except UsageError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_eval(a) -> int:
    x, y = a.x, a.y
    if a.json:
        out = {"x": fmt(x), "y": fmt(y), "max": fmt(rotnum.rot_max(x, y))}
        if a.min or a.interval:
            out["min"] = fmt(rotnum.rot_min(x, y))
        if a.certificate:
            out["certificate"] = _certificate(x, y)
        _emit(json.dumps(out))
        return 0
    if a.interval:
        lo, hi = rotnum.rot_interval(x, y)
        _emit(f"[{fmt(lo)}, {fmt(hi)}]")
    elif a.min:
        _emit(fmt(rotnum.rot_min(x, y)))
    else:
        _emit(fmt(rotnum.rot_max(x, y)))
    if a.certificate:
        c = _certificate(x, y)
        _emit(f"q={c['q']} p1={c['p1']} p2={c['p2']} shift={c['shift']}")
    return 0


def _certificate(x: Fraction, y: Fraction) -> dict:
    fx, fy = x.numerator // x.denominator, y.numerator // y.denominator
    c = rotnum.rot_max_certificate(x - fx, y - fy)
    return {"value": fmt(c.value + fx + fy), "q": c.q, "p1": c.p1, "p2": c.p2, "shift": fx + fy}


def cmd_member(a) -> int:
    ok = rotnum.is_realizable(a.x, a.y, a.z)
    bound = rotnum.realizable_bound(a.x, a.y)
    _emit(f"{'yes' if ok else 'no'} bound={fmt(bound)}")
    return 0 if ok else 1


def cmd_boxes(a) -> int:
    if a.which == "good":
        items = boxes.enumerate_good(a.max_den)
        text = {"json": boxes_to_json, "csv": boxes_to_csv}.get(a.format)
        if text:
            _emit(text(items))
        else:
            _emit("\n".join(str(b) for b in sorted(items)))
    else:
        items = boxes.enumerate_cw(a.max_den, include_degenerate=a.degenerate)
        text = {"json": cw_to_json, "csv": cw_to_csv}.get(a.format)
        if text:
            _emit(text(items))
        else:
            _emit("\n".join(f"{c.p1} {c.p2} {c.p3} q={c.q}  {c.box()}"
                            for c in sorted(items, key=lambda c: (c.q, c.p1, c.p2))))
    return 0


def cmd_cover(a) -> int:
    c = boxes.CwBoxParams(a.p1, a.p2, a.p3, a.q)
    cover = boxes.find_good_cover(c)
    _emit(f"{c.box()} ⊂ {cover}")
    return 0


def _bound(a, target: str, name: str) -> int:
    default, top = LIMITS[target][name]
    v = getattr(a, name)
    v = default if v is None else v
    if v > top:
        raise UsageError(f"{name} = {v} exceeds the limit {top} for {target}")
    return v


def cmd_verify(a) -> int:
    t = a.target
    if t == "equivalence":
        rep = boxes.verify_equivalence(_bound(a, t, "max_den"))
    elif t == "minimality":
        rep = boxes.verify_minimality(_bound(a, t, "max_den"))
    elif t == "selfsim":
        rep = fractal.verify_self_similarity(_bound(a, t, "max_den"))
    elif t == "lines":
        rep = fractal.verify_lines(_bound(a, t, "max_den"))
    elif t == "adjacency":
        rep = fractal.rect_adjacency_report(_bound(a, t, "depth"))
    elif t == "vertexcond":
        rep = fractal.verify_vertex_condition(_bound(a, t, "max_den"), _bound(a, t, "grid_den"))
    elif t == "oracle-bound":
        rep = dynamics.sweep_oracle_bound(_bound(a, t, "n"))
    else:
        rep = boxes.verify_point_equivalence(_bound(a, t, "grid_den"), _bound(a, t, "max_den"),
                                             include_faces=not a.open_faces)
    _emit(rep.to_json(timing=a.timing))
    return 0 if rep.ok else 1


def cmd_delta(a) -> int:
    pts = fractal.delta(a.max_den)
    if a.format == "csv":
        _emit(points_to_csv(pts))
    elif a.format == "json":
        _emit(points_to_json(pts))
    else:
        _emit("\n".join(f"{fmt(x)} {fmt(y)}" for x, y in sorted(pts)))
    return 0


def cmd_selfsim(a) -> int:
    p = (a.x, a.y)
    steps = []
    while True:
        kind, parent = fractal.classify_parent(p)
        if kind == "root":
            break
        steps.append(f"({fmt(p[0])}, {fmt(p[1])}) = {kind}({fmt(parent[0])}, {fmt(parent[1])})")
        p = parent
    m, n = fractal.euclid_coords((a.x, a.y))
    _emit(f"euclid=({m}, {n}) depth={len(steps)}")
    for s in steps:
        _emit(s)
    return 0


def cmd_lines(a) -> int:
    if a.x is not None:
        if a.y is None:
            raise UsageError("give both x and y")
        m, k = fractal.line_indices((a.x, a.y))
        _emit(f"green m={m} red k={k}")
        return 0
    dp = fractal.delta_prime(a.max_den)
    least = fractal.least_ordinate(dp)
    rows = ["x,y,least"] + [f"{fmt(x)},{fmt(y)},{int((x, y) in least)}" for x, y in sorted(dp)]
    _emit("\n".join(rows))
    return 0


def cmd_tree(a) -> int:
    root = fractal.subdivision_tree(a.depth)
    if a.format == "json":
        _emit(json.dumps(fractal.tree_dict(root), indent=1))
    else:
        _emit(fractal.tree_text(root))
    return 0


def cmd_oracle(a) -> int:
    if a.sweep_to is not None:
        ns = range(1, a.sweep_to + 1)
    else:
        ns = [a.n if a.n is not None else LIMITS["oracle-bound"]["n"][0]]
    if max(ns) > dynamics.DEFAULT_LIMIT:
        raise UsageError(f"n above {dynamics.DEFAULT_LIMIT} is not supported here")
    res = dynamics.attainment_sweep(a.x, a.y, ns)
    if not res["rows"]:
        raise DomainError(f"no n in the range is divisible by both denominators of {fmt(a.x)}, {fmt(a.y)}")
    if a.json:
        out = {"x": fmt(a.x), "y": fmt(a.y), "formula": fmt(res["formula"]),
               "smallest_attaining_n": res["smallest_attaining_n"],
               "rows": [{"n": r["n"], "max": fmt(r["max"]),
                         "witness": dynamics.witness_to_dict(*r["witness"])} for r in res["rows"]]}
        _emit(json.dumps(out, indent=1))
        return 0
    _emit(f"formula R({fmt(a.x)}, {fmt(a.y)}) = {fmt(res['formula'])}")
    for r in res["rows"]:
        f, g = r["witness"]
        _emit(f"n={r['n']}: {fmt(r['max'])}  f={list(f.values)} g={list(g.values)}")
    att = res["smallest_attaining_n"]
    _emit(f"smallest attaining n: {att if att is not None else 'not reached'}")
    return 0


def cmd_render(a) -> int:
    spec = RenderSpec(a.kind, a.den, a.size)
    path = a.output or f"{a.kind}.{spec.extension}"
    base = os.environ.get(OUT_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    text = render(spec)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as e:
        sys.stderr.write(f"ziglab: cannot write {path}: {e}\n")
        return 1
    _emit(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ziglab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", help="maximal rotation number R(x, y)")
    s.add_argument("x", type=_frac)
    s.add_argument("y", type=_frac)
    s.add_argument("--min", action="store_true", help="print r(x, y) instead")
    s.add_argument("--interval", action="store_true", help="print [r(x, y), R(x, y)]")
    s.add_argument("--certificate", action="store_true", help="also print the maximising q, p1, p2")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("member", help="is (x, y, z) in the ziggurat")
    for name in ("x", "y", "z"):
        s.add_argument(name, type=_frac)
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("boxes", help="list good or CW boxes")
    s.add_argument("which", choices=("good", "cw"))
    s.add_argument("--max-den", type=int, default=6)
    s.add_argument("--degenerate", action="store_true", help="cw: allow zero parts")
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.set_defaults(func=cmd_boxes)

    s = sub.add_parser("cover", help="good box covering Π(p1/q, p2/q, p3/q)")
    for name in ("p1", "p2", "p3", "q"):
        s.add_argument(name, type=int)
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("verify", help="run a verifier; exit 0 iff no failures")
    s.add_argument("target", choices=tuple(LIMITS))
    s.add_argument("--max-den", type=int)
    s.add_argument("--grid-den", type=int)
    s.add_argument("--depth", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--open-faces", action="store_true",
                   help="points: leave the x = 0 and y = 0 planes out of the grid")
    s.add_argument("--timing", action="store_true", help="fill in elapsed_ms")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("delta", help="list the set Δ")
    s.add_argument("--max-den", type=int, default=30)
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("selfsim", help="T1/T2 ancestry of a Δ point")
    s.add_argument("x", type=_frac)
    s.add_argument("y", type=_frac)
    s.set_defaults(func=cmd_selfsim)

    s = sub.add_parser("lines", help="green/red line indices of a point, or Δ' as CSV")
    s.add_argument("x", type=_frac, nargs="?")
    s.add_argument("y", type=_frac, nargs="?")
    s.add_argument("--max-den", type=int, default=30)
    s.set_defaults(func=cmd_lines)

    s = sub.add_parser("tree", help="Farey triangle subdivision tree")
    s.add_argument("--depth", type=int, default=4)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_tree)

    s = sub.add_parser("oracle", help="exhaustive max of rot(f∘g) on period-n lifts")
    s.add_argument("x", type=_frac)
    s.add_argument("y", type=_frac)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--n", type=int)
    g.add_argument("--sweep-to", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("render", help="write a figure (SVG) or mesh (OBJ)")
    s.add_argument("kind", choices=KINDS)
    s.add_argument("--den", type=int, default=30, help="denominator cutoff")
    s.add_argument("--size", type=int, default=1000, help="width/height in px")
    s.add_argument("-o", "--output", help=f"output path (relative paths go under ${OUT_ENV})")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"ziglab: {e}\n")
        return 2
    except DomainError as e:
        sys.stderr.write(f"ziglab: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
