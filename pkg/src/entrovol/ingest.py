"""CSV readers for daily OHLCV bars and intraday trades.

Both readers accept a binary or text stream, or a path. Any missing, NaN or
non-numeric cell is an error; nothing is imputed or silently dropped.
Line numbers in errors count the header as line 1.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import math
import os
import re
from dataclasses import dataclass
from typing import IO, Iterator, Union

from .core import DailySeries, OhlcvBar, validate_bar
from .errors import (
    DuplicateDateError,
    EmptySeriesError,
    InputError,
    MissingColumnError,
    NonMonotoneTimestampError,
    NonPositivePriceError,
    NonPositiveQuantityError,
    UnparseableRowError,
)

Source = Union[str, os.PathLike, IO[bytes], IO[str]]

DAILY_COLUMNS = ("date", "open", "high", "low", "close", "volume")
TRADE_COLUMNS = ("price", "quantity", "timestamp")

_ISO_DATE = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_EPOCH_MS = re.compile(r"^-?\d+$")


@dataclass(frozen=True, slots=True)
class TradeRecord:
    seq: int
    price: float
    quantity: float
    timestamp: dt.datetime


def _read_text(source: Source) -> tuple[str, str | None]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            return fh.read().decode("utf-8-sig"), os.fspath(source)
    data = source.read()
    name = getattr(source, "name", None)
    if isinstance(data, bytes):
        data = data.decode("utf-8-sig")
    elif data.startswith("\ufeff"):
        data = data[1:]
    return data, name if isinstance(name, str) else None


def _rows(text: str) -> Iterator[tuple[int, list[str]]]:
    reader = csv.reader(io.StringIO(text, newline=""))
    for row in reader:
        if not row or all(not cell.strip() for cell in row):
            continue
        yield reader.line_num, row


def _header_index(header: list[str], required: tuple[str, ...], source: str | None) -> dict[str, int]:
    names = [h.strip().lower() for h in header]
    missing = [col for col in required if col not in names]
    if missing:
        raise MissingColumnError(
            f"missing column(s) {', '.join(missing)}; header was {','.join(header)}", line=1, source=source
        )
    return {col: names.index(col) for col in required}


def _number(cell: str, column: str, line: int, source: str | None) -> float:
    try:
        value = float(cell.strip())
    except ValueError:
        raise UnparseableRowError(f"{column}: cannot parse {cell!r} as a number", line=line, source=source) from None
    if not math.isfinite(value):
        raise UnparseableRowError(f"{column}: {cell!r} is not a finite number", line=line, source=source)
    return value


def _count(cell: str, column: str, line: int, source: str | None):
    value = _number(cell, column, line, source)
    return int(value) if value.is_integer() else value


def parse_daily_csv(source: Source, symbol: str) -> DailySeries:
    """Parse a daily OHLCV file (Yahoo-style header accepted) into a sorted series."""
    text, name = _read_text(source)
    rows = _rows(text)
    try:
        _, header = next(rows)
    except StopIteration:
        raise EmptySeriesError("file is empty", source=name) from None
    idx = _header_index(header, DAILY_COLUMNS, name)
    width = max(idx.values()) + 1

    bars: list[OhlcvBar] = []
    seen: dict[dt.date, int] = {}
    for line, row in rows:
        if len(row) < width:
            raise UnparseableRowError(f"expected at least {width} fields, got {len(row)}", line=line, source=name)
        raw_date = row[idx["date"]].strip()
        if not _ISO_DATE.match(raw_date):
            raise UnparseableRowError(f"date {raw_date!r} is not YYYY-MM-DD", line=line, source=name)
        try:
            date = dt.date.fromisoformat(raw_date)
        except ValueError:
            raise UnparseableRowError(f"invalid date {raw_date!r}", line=line, source=name) from None
        if date in seen:
            raise DuplicateDateError(f"date {date} already seen on line {seen[date]}", line=line, source=name)
        seen[date] = line
        bar = OhlcvBar(
            date,
            _number(row[idx["open"]], "open", line, name),
            _number(row[idx["high"]], "high", line, name),
            _number(row[idx["low"]], "low", line, name),
            _number(row[idx["close"]], "close", line, name),
            _count(row[idx["volume"]], "volume", line, name),
        )
        try:
            validate_bar(bar)
        except InputError as exc:
            exc.line, exc.source = line, name
            raise
        bars.append(bar)
    if not bars:
        raise EmptySeriesError("no data rows", source=name)
    bars.sort(key=lambda b: b.date)
    return DailySeries(symbol, tuple(bars))


def parse_timestamp(cell: str) -> dt.datetime:
    """ISO-8601 instant or integer epoch milliseconds, as an aware UTC datetime.

    ISO values without an offset are taken as UTC.
    """
    cell = cell.strip()
    if _EPOCH_MS.match(cell):
        return dt.datetime.fromtimestamp(int(cell) / 1000.0, tz=dt.timezone.utc)
    if cell.endswith(("Z", "z")):
        cell = cell[:-1] + "+00:00"
    ts = dt.datetime.fromisoformat(cell)
    if ts.tzinfo is None:
        return ts.replace(tzinfo=dt.timezone.utc)
    return ts.astimezone(dt.timezone.utc)


def parse_trades_csv(source: Source) -> list[TradeRecord]:
    text, name = _read_text(source)
    rows = _rows(text)
    try:
        _, header = next(rows)
    except StopIteration:
        raise EmptySeriesError("file is empty", source=name) from None
    idx = _header_index(header, TRADE_COLUMNS, name)
    width = max(idx.values()) + 1

    trades: list[TradeRecord] = []
    for line, row in rows:
        if len(row) < width:
            raise UnparseableRowError(f"expected at least {width} fields, got {len(row)}", line=line, source=name)
        price = _number(row[idx["price"]], "price", line, name)
        quantity = _count(row[idx["quantity"]], "quantity", line, name)
        try:
            ts = parse_timestamp(row[idx["timestamp"]])
        except ValueError:
            raise UnparseableRowError(
                f"timestamp {row[idx['timestamp']]!r} is neither ISO-8601 nor epoch milliseconds",
                line=line,
                source=name,
            ) from None
        if not price > 0:
            raise NonPositivePriceError(f"price {price} must be positive", line=line, source=name)
        if not quantity > 0:
            raise NonPositiveQuantityError(f"quantity {quantity} must be positive", line=line, source=name)
        if trades and ts < trades[-1].timestamp:
            raise NonMonotoneTimestampError(
                f"timestamp {ts.isoformat()} precedes previous {trades[-1].timestamp.isoformat()}",
                line=line,
                source=name,
            )
        trades.append(TradeRecord(len(trades) + 1, price, quantity, ts))
    return trades
