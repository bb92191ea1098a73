import datetime as dt
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from entrovol.core import DailySeries, OhlcvBar, WindowSpec, WindowView, components, validate_bar
from entrovol.errors import (
    NegativeVolumeError,
    NonPositivePriceError,
    RangeViolationError,
    UnorderedDatesError,
    WindowTooShortError,
)

from _helpers import valid_bars

D = dt.date(2021, 1, 4)


def bar(o, h, l, c, v=1000, date=D):
    return OhlcvBar(date, o, h, l, c, v)


def test_validate_ok_returns_same_bar():
    b = bar(100, 110, 95, 105)
    assert validate_bar(b) is b


@pytest.mark.parametrize(
    "b, err",
    [
        (bar(100, 90, 95, 92), RangeViolationError),
        (bar(0, 1, 0.5, 0.7, 10), NonPositivePriceError),
        (bar(100, 110, 95, 111), RangeViolationError),
        (bar(94, 110, 95, 100), RangeViolationError),
        (bar(100, 110, 95, 105, -1), NegativeVolumeError),
        (bar(100, 110, float("nan"), 105), NonPositivePriceError),
        (bar(100, float("inf"), 95, 105), NonPositivePriceError),
    ],
)
def test_validate_rejects(b, err):
    with pytest.raises(err):
        validate_bar(b)


def test_zero_volume_allowed():
    validate_bar(bar(100, 100, 100, 100, 0))


def test_series_requires_increasing_dates():
    b1 = bar(100, 101, 99, 100, date=D)
    b2 = bar(100, 101, 99, 100, date=D)
    with pytest.raises(UnorderedDatesError):
        DailySeries("X", [b1, b2])


def test_series_validates_bars():
    with pytest.raises(RangeViolationError):
        DailySeries("X", [bar(100, 90, 95, 92)])


@pytest.mark.parametrize(
    "prev, b, expected",
    [
        (100, bar(100, 100, 100, 100), (0.0, 0.0, 0.0, 0.0)),
        (100, bar(102, 102, 102, 102), (0.0198026, 0.0, 0.0, 0.0)),
        (100, bar(100, 110, 100, 105), (0.0, 0.0953102, 0.0, 0.0487902)),
    ],
)
def test_components_examples(prev, b, expected):
    assert components(prev, b) == pytest.approx(expected, abs=5e-8)


@given(valid_bars(), st.floats(min_value=1e-2, max_value=1e5), st.floats(min_value=1e-3, max_value=1e3))
def test_components_orderings_scale_and_roundtrip(b, prev, lam):
    comp = components(prev, b)
    assert comp.d <= comp.u
    assert comp.d <= comp.c <= comp.u
    scaled = components(prev * lam, OhlcvBar(b.date, b.open * lam, b.high * lam, b.low * lam, b.close * lam))
    assert scaled == pytest.approx(comp, abs=1e-12)
    assert math.exp(comp.o) * prev == pytest.approx(b.open, rel=1e-12)
    assert math.exp(comp.u) * b.open == pytest.approx(b.high, rel=1e-12)
    assert math.exp(comp.d) * b.open == pytest.approx(b.low, rel=1e-12)
    assert math.exp(comp.c) * b.open == pytest.approx(b.close, rel=1e-12)


def test_window_spec_and_view_need_two_bars():
    with pytest.raises(WindowTooShortError):
        WindowSpec(1)
    with pytest.raises(WindowTooShortError):
        WindowView((bar(100, 100, 100, 100),), 100.0)
    with pytest.raises(NonPositivePriceError):
        WindowView((bar(1, 1, 1, 1), bar(1, 1, 1, 1)), 0.0)


def test_window_ending_at_alignment():
    bars = [bar(100 + i, 101 + i, 99 + i, 100 + i, v=i, date=D + dt.timedelta(days=i)) for i in range(6)]
    w = WindowView.ending_at(bars, 5, 5)
    assert [b.date for b in w.bars] == [D + dt.timedelta(days=i) for i in range(1, 6)]
    assert w.preceding_close == 100 and w.preceding_volume == 0
    assert w.previous_closes == [100, 101, 102, 103, 104]
    with pytest.raises(IndexError):
        WindowView.ending_at(bars, 4, 5)
