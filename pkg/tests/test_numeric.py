import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rationals
from oracle import index_by_scan
from floordyn.numeric import (
    MINUS_INF,
    PLUS_INF,
    ParamClass,
    ParseError,
    Regime,
    classify_lambda,
    closed_form_index,
    floor_scale,
    format_ext,
    format_rational,
    parse_rational,
    scan_index,
)


@pytest.mark.parametrize(
    "lam, x, expected",
    [(F(3, 4), F(-10), -8), (F(-1), F(5, 2), -3), (F(3, 4), F(-3), -3)],
)
def test_floor_scale_examples(lam, x, expected):
    assert floor_scale(lam, x) == expected


@given(rationals(), rationals(max_num=10**6, max_den=999))
def test_floor_scale_brackets_product(lam, x):
    n = floor_scale(lam, x)
    assert n <= lam * x < n + 1


@pytest.mark.parametrize(
    "lam, expected",
    [
        (F(3, 4), ParamClass(Regime.POS_SHALLOW, 3)),
        (F(5, 4), ParamClass(Regime.POS_STEEP, 4)),
        (F(-1), ParamClass(Regime.NEG_ONE)),
        (F(2), ParamClass(Regime.POS_STEEP, 1)),
        (F(0), ParamClass(Regime.ZERO)),
        (F(1), ParamClass(Regime.ONE)),
        (F(-1, 2), ParamClass(Regime.NEG_SHALLOW)),
        (F(-3), ParamClass(Regime.NEG_STEEP)),
    ],
)
def test_classify_examples(lam, expected):
    assert classify_lambda(lam) == expected


@pytest.mark.parametrize("lam", [F(1, 2), F(2, 3), F(3, 4), F(4, 3), F(3, 2), F(2)])
def test_boundary_values_take_the_closed_side(lam):
    # m/(m+1) closes the shallow bracket from above; (m+1)/m opens the steep one
    m = classify_lambda(lam).m
    if lam < 1:
        assert lam == F(m, m + 1)
    else:
        assert lam == F(m + 1, m)


@given(rationals(max_num=200, max_den=97).filter(lambda v: v > 0 and v != 1))
def test_closed_form_index_agrees_with_scan(lam):
    assert closed_form_index(lam) == scan_index(lam) == index_by_scan(lam)
    assert classify_lambda(lam).m == scan_index(lam)


def test_index_grid_agrees_with_scan():
    grid = {F(p, q) for q in range(1, 40) for p in range(1, 120)} - {F(1)}
    for lam in sorted(grid):
        assert closed_form_index(lam) == scan_index(lam), lam


def _matching_regimes(lam):
    checks = {
        Regime.NEG_STEEP: lam < -1,
        Regime.NEG_ONE: lam == -1,
        Regime.NEG_SHALLOW: -1 < lam < 0,
        Regime.ZERO: lam == 0,
        Regime.POS_SHALLOW: 0 < lam < 1,
        Regime.ONE: lam == 1,
        Regime.POS_STEEP: lam > 1,
    }
    return [r for r, ok in checks.items() if ok]


@given(rationals(max_num=50, max_den=20))
def test_regimes_partition_the_rationals(lam):
    (only,) = _matching_regimes(lam)
    assert classify_lambda(lam).regime is only


def test_scan_rejects_unbracketed():
    for lam in (F(0), F(1), F(-1, 2)):
        with pytest.raises(ValueError):
            scan_index(lam)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("-1/2", F(-1, 2)),
        ("−1/2", F(-1, 2)),
        ("7.3", F(73, 10)),
        ("-0.25", F(-1, 4)),
        ("42", F(42)),
        ("+3/6", F(1, 2)),
        (" 5 ", F(5)),
    ],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize(
    "text, position",
    [("3/0", 2), ("", 0), ("abc", 0), ("1/2x", 3), ("1.", 2), ("1/-2", 2), ("--1", 0)],
)
def test_parse_rational_errors(text, position):
    with pytest.raises(ParseError) as info:
        parse_rational(text)
    assert info.value.position == position


@given(rationals(max_num=10**9, max_den=10**6))
def test_format_round_trips(x):
    assert parse_rational(format_rational(x)) == x


def test_ext_order_and_tokens():
    assert MINUS_INF < -(10**400) < 10**400 < PLUS_INF
    assert [format_ext(v) for v in (MINUS_INF, -3, 0, PLUS_INF)] == ["-inf", "-3", "0", "+inf"]
    assert math.isinf(PLUS_INF)
