"""Command-line interface.

    entrovol estimate --input SPX.csv --symbol ^GSPC --out-series s.csv --out-report r.csv
    entrovol intraday --trades trades.csv --prev-close 100 --emit-curve curve.csv

Exit codes: 0 success, 1 input error, 2 computation error.
"""

from __future__ import annotations

import argparse
import datetime as dt
import logging
import sys
from pathlib import Path

from . import __version__, _backend
from .entropy import EntropyMode
from .errors import ComputationError, EntrovolError, InputError, SinkWriteFailureError
from .ingest import parse_daily_csv, parse_trades_csv
from .intraday import IntradayState
from .report import (
    fmt,
    write_comparison_csv,
    write_comparison_json,
    write_series_csv,
    write_series_json,
)
from .rolling import ESTIMATORS, RollingConfig, roll, summarize

log = logging.getLogger("entrovol")


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("no window lengths given")
    return values


def _estimator_list(text: str) -> tuple[str, ...]:
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    unknown = [n for n in names if n not in ESTIMATORS]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown estimator(s) {', '.join(unknown) or '(none)'}; valid set: {','.join(ESTIMATORS)}"
        )
    return names


def _date(text: str) -> dt.date:
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="entrovol", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    est = sub.add_parser("estimate", help="rolling estimates and comparison report from daily OHLCV")
    est.add_argument("--input", required=True, type=Path, help="daily OHLCV CSV")
    est.add_argument("--symbol", required=True)
    est.add_argument("--windows", type=_int_list, default=None, help="comma-separated window lengths")
    est.add_argument("--estimators", type=_estimator_list, default=ESTIMATORS, help=",".join(ESTIMATORS))
    est.add_argument("--entropy-mode", choices=[m.value for m in EntropyMode], default="relative")
    est.add_argument("--anchor", type=_date, default=None, help="last date to include (YYYY-MM-DD)")
    est.add_argument("--benchmark", choices=ESTIMATORS, default="cc")
    est.add_argument("--annualize", action="store_true", help="display volatilities times sqrt(252)")
    est.add_argument("--workers", type=int, default=1)
    est.add_argument("--out-series", required=True, type=Path)
    est.add_argument("--out-report", required=True, type=Path)
    est.add_argument("--format", choices=("csv", "json"), default="csv")

    intr = sub.add_parser("intraday", help="intrinsic entropy after every trade")
    intr.add_argument("--trades", required=True, type=Path, help="CSV with Price,Quantity,Timestamp")
    intr.add_argument("--prev-close", type=float, default=None, help="reference price for the first trade")
    intr.add_argument("--emit-curve", type=Path, default=None, help="write seq,timestamp,entropy per trade")
    return parser


def _open_out(path: Path):
    try:
        return open(path, "w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise SinkWriteFailureError(f"{path}: {exc.strerror}") from exc


def cmd_estimate(args) -> int:
    series = parse_daily_csv(args.input, args.symbol)
    cfg = RollingConfig(
        windows=args.windows or RollingConfig.windows,
        estimators=args.estimators,
        entropy_mode=args.entropy_mode,
        anchor_date=args.anchor,
        benchmark=args.benchmark,
        workers=args.workers,
    )
    if cfg.benchmark not in cfg.estimators:
        raise UsageError(f"benchmark {cfg.benchmark!r} must be among the selected estimators")
    log.info("%s: %d bars, kernels=%s", args.symbol, len(series), _backend.NAME)
    rolled = roll(series, cfg)
    reports = summarize(rolled, cfg, args.symbol)
    for rep in reports:
        for row in rep.rows.values():
            for indicator, reason in sorted(row.errors.items()):
                print(f"{args.input}: n={rep.window_n} {row.estimator} {indicator}: {reason}", file=sys.stderr)
            if row.gaps:
                print(f"{args.input}: n={rep.window_n} {row.estimator}: {row.gaps} undefined window(s)", file=sys.stderr)

    with _open_out(args.out_report) as fh:
        if args.format == "csv":
            write_comparison_csv(reports, fh, annualize=args.annualize)
        else:
            write_comparison_json(reports, fh, series=rolled, anchor_date=args.anchor, annualize=args.annualize)
    with _open_out(args.out_series) as fh:
        if args.format == "csv":
            write_series_csv(rolled.values(), fh, annualize=args.annualize)
        else:
            write_series_json(rolled.values(), fh, annualize=args.annualize)
    if args.annualize:
        print("note: displayed volatilities are annualized (x sqrt(252))", file=sys.stderr)
    return 0


def cmd_intraday(args) -> int:
    trades = parse_trades_csv(args.trades)
    state = IntradayState(reference=args.prev_close)
    state.extend(trades)
    curve = state.curve()
    if args.emit_curve is not None:
        lines = ["seq,timestamp,entropy"]
        for trade, h in zip(trades, curve.tolist()):
            lines.append(f"{trade.seq},{trade.timestamp.isoformat()},{fmt(h)}")
        with _open_out(args.emit_curve) as fh:
            fh.write("\n".join(lines) + "\n")
    print(fmt(state.entropy_at()))
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "estimate":
            return cmd_estimate(args)
        return cmd_intraday(args)
    except (InputError, SinkWriteFailureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 1
    except EntrovolError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
