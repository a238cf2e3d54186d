"""JSON and CSV round-tripping. Fractions always travel as "p/q" strings."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable

from .boxes import Box, CwBoxParams
from .exact import format_rational, parse_rational

POINT_CSV_HEADER = ["x", "y"]
BOX_CSV_HEADER = ["ax", "ay", "az"]
CW_CSV_HEADER = ["p1", "p2", "p3", "q"]


def points_to_json(points: Iterable[tuple[Fraction, Fraction]]) -> str:
    rows = [[format_rational(x), format_rational(y)] for x, y in sorted(points)]
    return json.dumps({"points": rows}, indent=1)


def points_from_json(text: str) -> list[tuple[Fraction, Fraction]]:
    return [(parse_rational(x), parse_rational(y)) for x, y in json.loads(text)["points"]]


def points_to_csv(points: Iterable[tuple[Fraction, Fraction]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(POINT_CSV_HEADER)
    for x, y in sorted(points):
        w.writerow([format_rational(x), format_rational(y)])
    return buf.getvalue()


def points_from_csv(text: str) -> list[tuple[Fraction, Fraction]]:
    rows = list(csv.DictReader(io.StringIO(text)))
    return [(parse_rational(r["x"]), parse_rational(r["y"])) for r in rows]


def boxes_to_json(boxes: Iterable[Box]) -> str:
    rows = [[format_rational(v) for v in b.corner] for b in sorted(boxes)]
    return json.dumps({"boxes": rows}, indent=1)


def boxes_from_json(text: str) -> list[Box]:
    return [Box(*(parse_rational(v) for v in row)) for row in json.loads(text)["boxes"]]


def boxes_to_csv(boxes: Iterable[Box]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BOX_CSV_HEADER)
    for b in sorted(boxes):
        w.writerow([format_rational(v) for v in b.corner])
    return buf.getvalue()


def cw_to_json(params: Iterable[CwBoxParams]) -> str:
    rows = [[c.p1, c.p2, c.p3, c.q] for c in sorted(params, key=lambda c: (c.q, c.p1, c.p2))]
    return json.dumps({"cw_boxes": rows}, indent=1)


def cw_from_json(text: str) -> list[CwBoxParams]:
    return [CwBoxParams(*row) for row in json.loads(text)["cw_boxes"]]


def cw_to_csv(params: Iterable[CwBoxParams]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CW_CSV_HEADER)
    for c in sorted(params, key=lambda c: (c.q, c.p1, c.p2)):
        w.writerow([c.p1, c.p2, c.p3, c.q])
    return buf.getvalue()
