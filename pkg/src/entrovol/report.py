"""CSV/JSON output for comparison reports and estimate series.

Numbers are written with 8 fixed decimals, LF line endings and no locale
dependence, so output is byte-identical for identical input. Annualizing
scales the displayed volatilities by sqrt(252) (variances and MSE by 252);
the ``raw`` block of the JSON document is never scaled.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import IO, Iterable, Mapping

from . import __version__
from .core import DailySeries
from .errors import InputError, SinkWriteFailureError
from .metrics import INDICATORS, ComparisonReport, EstimateSeries
from .rolling import ESTIMATORS

TRADING_DAYS = 252
COMPARISON_HEADER = ("n", "estimator", *INDICATORS, "gaps")
SERIES_HEADER = ("date", "estimator", "n", "value")

# indicator -> power of sqrt(252) applied when annualizing
_SCALE_POWER = {"mean": 1, "var": 2, "cv": 0, "mse": 2, "pb": 0, "efficiency": 0}
_ORDER = {name: i for i, name in enumerate(ESTIMATORS)}


def fmt(x: float | None) -> str:
    if x is None:
        return ""
    text = f"{x:.8f}"
    # -0.0 and tiny negatives that round to zero
    return text[1:] if text == "-0.00000000" else text


def _scaled(value: float | None, indicator: str, annualize: bool) -> float | None:
    if value is None or not annualize:
        return value
    return value * (1.0, math.sqrt(TRADING_DAYS), float(TRADING_DAYS))[_SCALE_POWER[indicator]]


def _write(sink: IO[str], text: str) -> int:
    try:
        sink.write(text)
        sink.flush()
    except (OSError, ValueError) as exc:
        raise SinkWriteFailureError(f"cannot write output: {exc}") from exc
    return len(text.encode("utf-8"))


def _sorted_rows(reports: Iterable[ComparisonReport]):
    rows = []
    for rep in reports:
        for name, row in rep.rows.items():
            rows.append((rep.window_n, _ORDER[name], rep, row))
    rows.sort(key=lambda r: (r[0], r[1]))
    return [(rep, row) for _, _, rep, row in rows]


def comparison_csv(reports: Iterable[ComparisonReport], annualize: bool = False) -> str:
    lines = [",".join(COMPARISON_HEADER)]
    for rep, row in _sorted_rows(reports):
        cells = [str(rep.window_n), row.estimator]
        cells += [fmt(_scaled(row.get(ind), ind, annualize)) for ind in INDICATORS]
        cells.append(str(row.gaps))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_comparison_csv(reports: Iterable[ComparisonReport], sink: IO[str], annualize: bool = False) -> int:
    """Header plus one row per (n, estimator); n ascending, estimators in canonical order."""
    reports = list(reports)
    if not reports or not any(rep.rows for rep in reports):
        raise InputError("nothing to write: the report has no rows")
    return _write(sink, comparison_csv(reports, annualize))


def read_comparison_csv(source: IO[str]) -> dict[tuple[int, str], dict[str, float | int | None]]:
    """Parse a comparison CSV back into ``{(n, estimator): {indicator: value}}``."""
    out = {}
    for rec in csv.DictReader(source):
        key = (int(rec["n"]), rec["estimator"])
        row: dict[str, float | int | None] = {ind: (float(rec[ind]) if rec[ind] else None) for ind in INDICATORS}
        row["gaps"] = int(rec["gaps"])
        out[key] = row
    return out


def _series_rows(series: Iterable[EstimateSeries]):
    rows = []
    for s in series:
        for d, v in zip(s.dates, s.values):
            rows.append((d, _ORDER.get(s.estimator, len(_ORDER)), s.estimator, s.window_n, v))
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[3]))
    return rows


def _gap_rows(series: Iterable[EstimateSeries]):
    rows = [
        (d, _ORDER.get(s.estimator, len(_ORDER)), s.estimator, s.window_n, reason)
        for s in series
        for d, reason in s.gaps
    ]
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[3]))
    return rows


def write_series_csv(series: Iterable[EstimateSeries], sink: IO[str], annualize: bool = False) -> int:
    """Long format ``date,estimator,n,value`` sorted by date, estimator, n. Gaps are omitted."""
    series = list(series)
    if not series:
        raise InputError("nothing to write: no estimate series")
    scale = math.sqrt(TRADING_DAYS) if annualize else 1.0
    lines = [",".join(SERIES_HEADER)]
    for d, _, name, n, v in _series_rows(series):
        lines.append(f"{d.isoformat()},{name},{n},{fmt(v * scale)}")
    return _write(sink, "\n".join(lines) + "\n")


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _rounded(x: float | None) -> float | None:
    return None if x is None else float(fmt(x))


def comparison_document(
    reports: Iterable[ComparisonReport],
    series: Mapping[tuple[str, int], EstimateSeries] | None = None,
    *,
    anchor_date=None,
    annualize: bool = False,
    backend: str | None = None,
) -> dict:
    reports = list(reports)
    if not reports:
        raise InputError("nothing to write: the report has no rows")
    first = reports[0]
    meta = {
        "symbol": first.symbol,
        "anchor_date": anchor_date.isoformat() if anchor_date else None,
        "entropy_mode": first.entropy_mode,
        "benchmark": first.benchmark,
        "annualized": annualize,
        "tool_version": __version__,
    }
    if backend:
        meta["backend"] = backend
    tables, raw = [], []
    for rep, row in _sorted_rows(reports):
        shown = {"n": rep.window_n, "estimator": row.estimator}
        exact = dict(shown)
        for ind in INDICATORS:
            shown[ind] = _rounded(_scaled(row.get(ind), ind, annualize))
            exact[ind] = row.get(ind)
        for target in (shown, exact):
            target["gaps"] = row.gaps
            target["pb_skipped"] = row.pb_skipped
            target["compared"] = row.compared
            target["errors"] = dict(sorted(row.errors.items()))
        tables.append(shown)
        raw.append(exact)
    doc = {"metadata": meta, "tables": tables, "raw": raw}
    if series is not None:
        doc["gaps"] = [
            {"date": d.isoformat(), "estimator": name, "n": n, "reason": reason}
            for d, _, name, n, reason in _gap_rows(series.values())
        ]
    return doc


def write_comparison_json(reports: Iterable[ComparisonReport], sink: IO[str], **kwargs) -> int:
    return _write(sink, _dumps(comparison_document(reports, **kwargs)))


def write_series_json(series: Iterable[EstimateSeries], sink: IO[str], annualize: bool = False) -> int:
    series = list(series)
    if not series:
        raise InputError("nothing to write: no estimate series")
    scale = math.sqrt(TRADING_DAYS) if annualize else 1.0
    doc = {
        "annualized": annualize,
        "series": [
            {"date": d.isoformat(), "estimator": name, "n": n, "value": _rounded(v * scale), "raw": v}
            for d, _, name, n, v in _series_rows(series)
        ],
        "gaps": [
            {"date": d.isoformat(), "estimator": name, "n": n, "reason": reason}
            for d, _, name, n, reason in _gap_rows(series)
        ],
    }
    return _write(sink, _dumps(doc))


def write_daily_csv(series: DailySeries, sink: IO[str]) -> int:
    """Daily bars at full precision; ``parse_daily_csv`` reads this back exactly."""
    buf = io.StringIO(newline="")
    buf.write("Date,Open,High,Low,Close,Volume\n")
    for b in series:
        buf.write(f"{b.date.isoformat()},{b.open!r},{b.high!r},{b.low!r},{b.close!r},{b.volume!r}\n")
    return _write(sink, buf.getvalue())
