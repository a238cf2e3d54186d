"""Acceptance gate: one test per criterion, at full scope, with its runtime budget.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import math
import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from ziglab.boxes import verify_equivalence, verify_minimality, verify_point_equivalence
from ziglab.dynamics import MonotoneLift, compose, max_composition, rotation_number, sweep_oracle_bound
from ziglab.exact import farey_sequence
from ziglab.fractal import (T1, T1_EUCLID, T2, T2_EUCLID, Q, rect_adjacency_report, verify_lines,
                            verify_self_similarity, vertices_rab)
from ziglab.render import KINDS
from ziglab.rotnum import rot_max, rot_min

criterion = pytest.mark.criterion


@contextmanager
def budget(seconds):
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    assert elapsed < seconds, f"took {elapsed:.2f} s, budget {seconds} s"


def grid(max_den, lo_open=False):
    pts = {F(a, b) for b in range(1, max_den + 1) for a in range(b)}
    if lo_open:
        pts.discard(F(0))
    return sorted(pts)


@criterion(1, "formula values on the first family and the three vertex families")
def test_c01_formula_values():
    with budget(2):
        for q in range(2, 51):
            for p in range(1, q):
                if math.gcd(p, q) == 1:
                    assert rot_max(F(p, q), F(q - p, q)) == 1 + F(1, q)
        fams = {"F1": 0, "F2": 0, "F3": 0}
        for v in vertices_rab(30):
            assert rot_max(v.x, v.y) == v.z
            for fam in v.families:
                fams[fam] += 1
        n_coprime = sum(1 for m in range(2, 31) for a in range(1, m) if math.gcd(a, m) == 1)
        assert all(c == n_coprime for c in fams.values())


@criterion(2, "sub-diagonal plateau R = 1 for x + y < 1, den <= 40")
def test_c02_plateau():
    with budget(5):
        g = grid(40)
        count = 0
        for x in g:
            for y in g:
                if x + y < 1:
                    assert rot_max(x, y) == 1
                    count += 1
        assert count > 0


@criterion(3, "search bound: scanning to 3 lcm never beats the q <= lcm maximum")
def test_c03_search_bound():
    rng = random.Random(20240917)
    with budget(5):
        for _ in range(200):
            b, d = rng.randint(1, 30), rng.randint(1, 30)
            x, y = F(rng.randrange(b), b), F(rng.randrange(d), d)
            L = math.lcm(x.denominator, y.denominator)
            vals = [F(math.floor(q * x) + math.floor(q * y) + 1, q) for q in range(1, 3 * L + 1)]
            assert max(vals[L:]) <= max(vals[:L]) == rot_max(x, y)


@criterion(4, "duality identities on the open grid, den <= 30")
def test_c04_duality():
    with budget(5):
        g = grid(30, lo_open=True)
        for x in g:
            for y in g:
                r = rot_min(x, y)
                assert r == -rot_max(-x, -y)
                assert r == 2 - rot_max(1 - x, 1 - y)


@criterion(5, "every non-degenerate CW box with q <= 40 has a good cover of denominator <= q")
def test_c05_equivalence():
    with budget(10):
        rep = verify_equivalence(40)
    assert rep.ok and rep.failures == []
    assert rep.details["cover_den_exceeds_q"] == 0
    assert rep.checked == sum(math.comb(q, 2) for q in range(1, 41))


@criterion(6, "no good box with denominator <= 30 contains another")
def test_c06_minimality():
    with budget(10):
        rep = verify_minimality(30)
    assert rep.ok and rep.details["nested_pairs"] == 0


@criterion(7, "box union equals the closed-form predicate on the grid den <= 12, z > 0")
def test_c07_point_equivalence():
    with budget(60):
        rep = verify_point_equivalence(grid_den=12, box_den=150, include_faces=True)
    assert rep.details["mismatches"] == 0, (
        f"{rep.details['mismatches']} mismatches, e.g. {rep.failures[:2]}")


@criterion(8, "self-similarity of the set up to denominator 300, with matrix conjugacies")
def test_c08_self_similarity():
    with budget(10):
        rep = verify_self_similarity(300)
    assert rep.ok
    assert (Q @ T1).m == (T1_EUCLID @ Q).m and (Q @ T2).m == (T2_EUCLID @ Q).m


@criterion(9, "least-ordinate green/red intersections equal the set, bound 200")
def test_c09_lines():
    with budget(10):
        rep = verify_lines(200)
    assert rep.ok
    assert rep.details["least_points"] == rep.details["delta_points"]


@criterion(10, "combinatorial oracle: bounds hold for n <= 6 and extremes are attained")
def test_c10_oracle():
    with budget(300):
        rep = sweep_oracle_bound(6)
        value, (f, g) = max_composition(F(1, 2), F(1, 2), 4)
        v2 = max_composition(F(1, 2), F(1, 2), 2)[0]
        v0 = max_composition(F(0), F(0), 2)[0]
    assert rep.ok
    assert all(r["upper_violations"] == r["lower_violations"] == 0 for r in rep.details["per_n"])
    assert value == F(3, 2) == rot_max(F(1, 2), F(1, 2))
    assert (rotation_number(f), rotation_number(g), rotation_number(compose(f, g))) == (
        F(1, 2), F(1, 2), F(3, 2))
    documented = compose(MonotoneLift(4, (2, 4, 4, 6)), MonotoneLift(4, (3, 3, 5, 5)))
    assert rotation_number(documented) == F(3, 2)
    assert v2 == 1 and v0 == 1


@criterion(11, "Farey neighbour determinant for N <= 100 and rectangle adjacency at depth 10")
def test_c11_farey():
    with budget(10):
        for N in range(1, 101):
            seq = farey_sequence(N)
            for a, c in zip(seq, seq[1:]):
                assert a.denominator * c.numerator - a.numerator * c.denominator == 1
        rep = rect_adjacency_report(10)
    assert rep.ok
    assert rep.details["neighbour_pairs"] == rep.details["segment_pairs"]


DETERMINISM_COMMANDS = [
    ["verify", "equivalence", "--max-den", "40"],
    ["verify", "minimality", "--max-den", "30"],
    ["verify", "selfsim", "--max-den", "300"],
    ["verify", "lines", "--max-den", "200"],
    ["verify", "adjacency", "--depth", "10"],
    ["verify", "vertexcond", "--max-den", "10", "--grid-den", "12"],
    ["verify", "oracle-bound", "--n", "5"],
    ["verify", "points", "--grid-den", "12", "--max-den", "150"],
] + [["render", kind, "--den", "20", "-o", f"{kind}.out"] for kind in KINDS]


def _run_all(outdir, hashseed):
    env = dict(os.environ, ZIGLAB_OUT=str(outdir), PYTHONHASHSEED=str(hashseed))
    procs = [subprocess.Popen([sys.executable, "-m", "ziglab", *cmd], env=env,
                              stdout=subprocess.PIPE, stderr=subprocess.PIPE)
             for cmd in DETERMINISM_COMMANDS]
    outs = []
    for cmd, p in zip(DETERMINISM_COMMANDS, procs):
        out, err = p.communicate(timeout=600)
        assert p.returncode in (0, 1), (cmd, err.decode())
        if cmd[0] == "render":
            out = (outdir / cmd[-1]).read_bytes()
        outs.append(out)
    return outs


@criterion(12, "verify and render outputs are byte-identical across runs")
def test_c12_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir()
    b.mkdir()
    first, second = _run_all(a, 1), _run_all(b, 2)
    for cmd, x, y in zip(DETERMINISM_COMMANDS, first, second):
        assert x == y, f"output of {' '.join(cmd)} differs between runs"
        assert x, f"{' '.join(cmd)} produced no output"
