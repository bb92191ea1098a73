"""Daily bar types, validation, and the normalized log-price components."""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .errors import (
    NegativeVolumeError,
    NonPositivePriceError,
    RangeViolationError,
    UnorderedDatesError,
    WindowTooShortError,
)


@dataclass(frozen=True, slots=True)
class OhlcvBar:
    """One trading day. Construction does not validate; see :func:`validate_bar`."""

    date: dt.date
    open: float
    high: float
    low: float
    close: float
    volume: int = 0


def validate_bar(bar: OhlcvBar) -> OhlcvBar:
    """Return ``bar`` unchanged if its prices and volume are consistent, else raise."""
    for name in ("open", "high", "low", "close"):
        price = getattr(bar, name)
        # the negated comparison also rejects NaN
        if not (price > 0) or math.isinf(price):
            raise NonPositivePriceError(f"{bar.date}: {name}={price!r} must be a positive finite price")
    if bar.high < bar.low:
        raise RangeViolationError(f"{bar.date}: high {bar.high} < low {bar.low}")
    for name in ("open", "close"):
        price = getattr(bar, name)
        if price > bar.high or price < bar.low:
            raise RangeViolationError(
                f"{bar.date}: {name} {price} outside [low {bar.low}, high {bar.high}]"
            )
    if not (bar.volume >= 0):
        raise NegativeVolumeError(f"{bar.date}: volume {bar.volume!r} is negative")
    return bar


@dataclass(frozen=True)
class DailySeries:
    """Validated bars for one symbol, strictly increasing by date."""

    symbol: str
    bars: tuple[OhlcvBar, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bars", tuple(self.bars))
        prev = None
        for bar in self.bars:
            validate_bar(bar)
            if prev is not None and bar.date <= prev:
                raise UnorderedDatesError(f"{self.symbol}: date {bar.date} does not follow {prev}")
            prev = bar.date

    def __len__(self) -> int:
        return len(self.bars)

    def __iter__(self) -> Iterator[OhlcvBar]:
        return iter(self.bars)

    def __getitem__(self, idx):
        return self.bars[idx]

    @property
    def dates(self) -> list[dt.date]:
        return [b.date for b in self.bars]

    def until(self, anchor: dt.date) -> "DailySeries":
        """Bars dated on or before ``anchor``."""
        return DailySeries(self.symbol, tuple(b for b in self.bars if b.date <= anchor))


class BarComponents(NamedTuple):
    """Log returns of one bar: opening jump, high, low and close relative to the open."""

    o: float
    u: float
    d: float
    c: float


def components(prev_close: float, bar: OhlcvBar) -> BarComponents:
    return BarComponents(
        o=math.log(bar.open / prev_close),
        u=math.log(bar.high / bar.open),
        d=math.log(bar.low / bar.open),
        c=math.log(bar.close / bar.open),
    )


@dataclass(frozen=True)
class WindowSpec:
    n: int
    requires_preceding_bar: bool = True

    def __post_init__(self) -> None:
        if self.n < 2:
            raise WindowTooShortError(f"window length must be >= 2, got {self.n}")


@dataclass(frozen=True)
class WindowView:
    """The ``n`` bars of one window plus the close and volume of the bar before it."""

    bars: tuple[OhlcvBar, ...]
    preceding_close: float
    preceding_volume: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "bars", tuple(self.bars))
        if len(self.bars) < 2:
            raise WindowTooShortError(f"window needs at least 2 bars, got {len(self.bars)}")
        if not (self.preceding_close > 0):
            raise NonPositivePriceError(f"preceding close {self.preceding_close!r} must be positive")

    @classmethod
    def ending_at(cls, series: Sequence[OhlcvBar] | DailySeries, end: int, n: int) -> "WindowView":
        """Window of bars ``end-n+1 .. end`` (inclusive) with bar ``end-n`` as predecessor."""
        bars = series.bars if isinstance(series, DailySeries) else series
        if end < 0:
            end += len(bars)
        if n < 2:
            raise WindowTooShortError(f"window length must be >= 2, got {n}")
        if end - n < 0 or end >= len(bars):
            raise IndexError(f"window of {n} ending at {end} needs bars {end - n}..{end}")
        prev = bars[end - n]
        return cls(tuple(bars[end - n + 1 : end + 1]), prev.close, prev.volume)

    @property
    def n(self) -> int:
        return len(self.bars)

    @property
    def previous_closes(self) -> list[float]:
        """``C_{i-1}`` for each in-window bar."""
        return [self.preceding_close] + [b.close for b in self.bars[:-1]]

    def components(self) -> list[BarComponents]:
        return [components(pc, b) for pc, b in zip(self.previous_closes, self.bars)]
