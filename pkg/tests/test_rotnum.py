import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ziglab.errors import UsageError
from ziglab.rotnum import (is_realizable, realizable_bound, rot_interval, rot_max,
                           rot_max_certificate, rot_min)


def brute_R(x, y, q_max):
    """sup over q <= q_max of (p1 + p2 + 1)/q with p1/q <= x, p2/q <= y (any sign)."""
    best = None
    for q in range(1, q_max + 1):
        v = F(math.floor(q * x) + math.floor(q * y) + 1, q)
        best = v if best is None else max(best, v)
    return best


def lcm_den(*xs):
    return math.lcm(*(F(v).denominator for v in xs))


unit = st.fractions(min_value=0, max_value=1, max_denominator=60).filter(lambda v: v < 1)
anyq = st.fractions(min_value=-4, max_value=4, max_denominator=40)


@pytest.mark.parametrize("x, y, want", [
    (F(0), F(0), F(1)),
    (F(1, 2), F(1, 2), F(3, 2)),
    (F(2, 3), F(1, 3), F(4, 3)),
    (F(2, 5), F(1, 5), F(1)),
    (F(2, 3), F(1, 2), F(3, 2)),
    (F(3, 2), F(1, 2), F(5, 2)),
])
def test_rot_max_examples(x, y, want):
    assert rot_max(x, y) == want


def test_rot_max_examples_agree_with_scan():
    assert brute_R(F(2, 5), F(1, 5), 5) == 1
    assert brute_R(F(2, 3), F(1, 2), 6) == F(3, 2)
    # q = 2 is where 3/2 is first reached
    assert brute_R(F(2, 3), F(1, 2), 1) < F(3, 2) == brute_R(F(2, 3), F(1, 2), 2)


@pytest.mark.parametrize("x, y, cert", [
    (F(1, 2), F(1, 2), (F(3, 2), 2, 1, 1)),
    (F(0), F(0), (F(1), 1, 0, 0)),
    (F(2, 5), F(1, 5), (F(1), 1, 0, 0)),
])
def test_certificate_examples(x, y, cert):
    c = rot_max_certificate(x, y)
    assert (c.value, c.q, c.p1, c.p2) == cert


def test_certificate_requires_unit_square():
    with pytest.raises(UsageError):
        rot_max_certificate(F(1), F(0))
    with pytest.raises(UsageError):
        rot_max_certificate(F(-1, 2), F(0))


@settings(max_examples=300, deadline=None)
@given(unit, unit)
def test_certificate_soundness(x, y):
    c = rot_max_certificate(x, y)
    L = lcm_den(x, y)
    assert c.p1 == math.floor(c.q * x) and c.p2 == math.floor(c.q * y)
    assert F(c.p1, c.q) <= x and F(c.p2, c.q) <= y
    assert c.value == F(c.p1 + c.p2 + 1, c.q)
    assert c.q <= L
    assert c.value == brute_R(x, y, 3 * L)
    # smallest maximiser
    assert all(brute_R(x, y, q) < c.value for q in range(1, c.q))


@pytest.mark.parametrize("x, y, want", [
    (F(0), F(0), F(-1)), (F(1, 2), F(1, 2), F(1, 2)), (F(1, 3), F(1, 3), F(1, 3)),
])
def test_rot_min_examples(x, y, want):
    assert rot_min(x, y) == want


def test_rot_interval_examples():
    assert rot_interval(F(0), F(0)) == (F(-1), F(1))
    assert rot_interval(F(1, 2), F(1, 2)) == (F(1, 2), F(3, 2))
    assert rot_interval(F(1, 3), F(2, 3)) == (F(2, 3), F(4, 3))
    assert rot_max(F(2, 3), F(2, 3)) == F(5, 3) == brute_R(F(2, 3), F(2, 3), 3)


@settings(max_examples=300, deadline=None)
@given(anyq, anyq)
def test_rot_max_matches_brute_force_any_sign(x, y):
    L = lcm_den(x, y)
    assert rot_max(x, y) == brute_R(x, y, 3 * L)


@settings(max_examples=300, deadline=None)
@given(anyq, anyq, anyq, anyq)
def test_monotone(x, y, dx, dy):
    assert rot_max(x, y) <= rot_max(x + abs(dx), y + abs(dy))


@settings(max_examples=300, deadline=None)
@given(anyq, anyq, st.integers(-3, 3))
def test_symmetry_and_periodicity(x, y, k):
    assert rot_max(x, y) == rot_max(y, x)
    assert rot_max(x + k, y) == rot_max(x, y) + k
    assert rot_max(x, y + k) == rot_max(x, y) + k


@settings(max_examples=300, deadline=None)
@given(unit, unit)
def test_bounds_on_unit_square(x, y):
    R = rot_max(x, y)
    assert max(F(1), x + y) <= R <= x + y + 1


def test_sub_unit_diagonal_plateau():
    grid = sorted({F(a, b) for b in range(1, 41) for a in range(b)})
    for x in grid:
        for y in grid:
            if x + y >= 1:
                break
            assert rot_max(x, y) == 1


def test_first_family_values():
    for q in range(2, 51):
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                assert rot_max(F(p, q), F(q - p, q)) == 1 + F(1, q)


@settings(max_examples=300, deadline=None)
@given(unit.filter(lambda v: v > 0), unit.filter(lambda v: v > 0))
def test_duality(x, y):
    assert rot_min(x, y) == -rot_max(-x, -y)
    assert rot_min(x, y) == 2 - rot_max(1 - x, 1 - y)
    lo, hi = rot_interval(x, y)
    assert lo <= hi


@pytest.mark.parametrize("x, y, z, want", [
    (F(1, 2), F(1, 3), F(1, 6), True),
    (F(2, 3), F(2, 3), F(1, 2), False),
])
def test_is_realizable_examples(x, y, z, want):
    assert is_realizable(x, y, z) is want


def test_is_realizable_bounds():
    assert realizable_bound(F(1, 2), F(1, 3)) == F(1, 2)
    assert realizable_bound(F(2, 3), F(2, 3)) == 0
    with pytest.raises(UsageError):
        is_realizable(F(1), F(0), F(0))
    with pytest.raises(UsageError):
        is_realizable(F(0), F(0), F(-1, 2))


@settings(max_examples=200, deadline=None)
@given(unit, unit)
def test_zero_height_always_realizable(x, y):
    assert is_realizable(x, y, F(0))


@settings(max_examples=200, deadline=None)
@given(unit, unit, unit)
def test_realizable_via_duality(x, y, z):
    # z <= R(1-x, 1-y) - 1  <=>  1 - z >= r(x, y)   (unit-translation convention)
    assert is_realizable(x, y, z) == (rot_min(x, y) <= 1 - z)


def test_large_denominators_use_python_path():
    x, y = F(1, 2**21 + 1), F(1, 2**21 - 1)
    assert rot_max(x, y) == 1
    assert rot_max_certificate(x, y).q == 1
