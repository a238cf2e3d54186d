import csv
import io
import json
from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from ziglab.boxes import Box, CwBoxParams, enumerate_cw, enumerate_good
from ziglab.fractal import delta
from ziglab.serialize import (BOX_CSV_HEADER, CW_CSV_HEADER, POINT_CSV_HEADER, boxes_from_json,
                              boxes_to_csv, boxes_to_json, cw_from_json, cw_to_csv, cw_to_json,
                              points_from_csv, points_from_json, points_to_csv, points_to_json)

fr = st.fractions(min_value=-5, max_value=5, max_denominator=1000)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(fr, fr), max_size=20))
def test_points_roundtrip(pts):
    assert points_from_json(points_to_json(pts)) == sorted(pts)
    assert points_from_csv(points_to_csv(pts)) == sorted(pts)


def test_points_json_uses_fraction_strings():
    text = points_to_json(delta(3))
    assert json.loads(text) == {"points": [["1/3", "2/3"], ["1/2", "1/2"], ["2/3", "2/3"]]}


def test_csv_headers_are_fixed():
    assert points_to_csv([]).splitlines() == [",".join(POINT_CSV_HEADER)]
    assert boxes_to_csv([]).splitlines() == ["ax,ay,az"] == [",".join(BOX_CSV_HEADER)]
    assert cw_to_csv([]).splitlines() == ["p1,p2,p3,q"] == [",".join(CW_CSV_HEADER)]


def test_boxes_roundtrip():
    boxes = enumerate_good(8)
    assert set(boxes_from_json(boxes_to_json(boxes))) == boxes
    rows = list(csv.DictReader(io.StringIO(boxes_to_csv(boxes))))
    assert {Box(F(r["ax"]), F(r["ay"]), F(r["az"])) for r in rows} == boxes


def test_cw_roundtrip():
    params = enumerate_cw(6, include_degenerate=True)
    assert set(cw_from_json(cw_to_json(params))) == params
    rows = list(csv.DictReader(io.StringIO(cw_to_csv(params))))
    assert {CwBoxParams(*(int(r[k]) for k in CW_CSV_HEADER)) for r in rows} == params


def test_output_is_order_independent():
    pts = sorted(delta(12))
    assert points_to_json(pts) == points_to_json(reversed(pts))
    assert boxes_to_json(list(enumerate_good(5))) == boxes_to_json(sorted(enumerate_good(5)))
