"""Day-by-day rolling evaluation of every estimator over n-bar windows.

The estimate dated at bar ``t`` uses bars ``t-n+1 .. t`` and the bar
``t-n`` before them (for its close and volume), so a series of ``N`` bars
yields ``N - n`` estimates per estimator. Windows count bars, not calendar
days.
"""

from __future__ import annotations

import datetime as dt
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .core import DailySeries
from .entropy import EntropyMode
from .errors import BenchmarkMissingError, InputError, SeriesTooShortError, WindowTooShortError
from .metrics import ComparisonReport, EstimateSeries, compare

log = logging.getLogger(__name__)

#: canonical estimator order, used for output ordering everywhere
ESTIMATORS = ("cc", "parkinson", "gk", "rs", "yz", "entropy")
DEFAULT_WINDOWS = (5, 10, 15, 20, 30, 60, 90, 150, 260, 520)

GAP_REASONS = {1: "NegativeVarianceSum", 2: "ZeroTotalVolume"}


@dataclass(frozen=True)
class RollingConfig:
    windows: tuple[int, ...] = DEFAULT_WINDOWS
    estimators: tuple[str, ...] = ESTIMATORS
    entropy_mode: EntropyMode = EntropyMode.RELATIVE
    anchor_date: dt.date | None = None
    benchmark: str = "cc"
    workers: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "windows", tuple(sorted(set(int(n) for n in self.windows))))
        object.__setattr__(self, "entropy_mode", EntropyMode(self.entropy_mode))
        if not self.windows:
            raise InputError("no window lengths configured")
        bad = [n for n in self.windows if n < 2]
        if bad:
            raise WindowTooShortError(f"window lengths must be >= 2, got {bad}")
        if not self.estimators:
            raise InputError("estimator set is empty")
        unknown = [e for e in self.estimators if e not in ESTIMATORS]
        if unknown:
            raise InputError(f"unknown estimator(s) {', '.join(unknown)}; valid: {', '.join(ESTIMATORS)}")
        ordered = tuple(e for e in ESTIMATORS if e in set(self.estimators))
        object.__setattr__(self, "estimators", ordered)
        if self.workers < 1:
            raise InputError(f"workers must be >= 1, got {self.workers}")


@dataclass
class DayArrays:
    """Per-bar inputs to the kernels, computed once per series."""

    dates: list[dt.date]
    o: np.ndarray
    u: np.ndarray
    d: np.ndarray
    c: np.ndarray
    volume: np.ndarray
    _entropy: dict = field(default_factory=dict, repr=False)
    _arrays: tuple = field(default=(), repr=False)

    @classmethod
    def from_series(cls, series: DailySeries) -> "DayArrays":
        op = np.array([b.open for b in series], dtype=np.float64)
        hi = np.array([b.high for b in series], dtype=np.float64)
        lo = np.array([b.low for b in series], dtype=np.float64)
        cl = np.array([b.close for b in series], dtype=np.float64)
        prev_close = np.concatenate(([np.nan], cl[:-1]))
        self = cls(
            dates=series.dates,
            o=np.log(op / prev_close),
            u=np.log(hi / op),
            d=np.log(lo / op),
            c=np.log(cl / op),
            volume=np.array([b.volume for b in series], dtype=np.float64),
        )
        self._arrays = (op, hi, lo, cl, prev_close)
        return self

    def entropy_factors(self, mode: EntropyMode) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if mode not in self._entropy:
            op, hi, lo, cl, prev_close = self._arrays
            if mode is EntropyMode.RELATIVE:
                f = lambda a, b: a / b - 1.0  # noqa: E731
            else:
                f = lambda a, b: np.log(a / b)  # noqa: E731
            f_co = f(op, prev_close)
            f_oc = f(cl, op)
            f_ohlc = f(hi, op) * f(hi, cl) + f(lo, op) * f(lo, cl)
            self._entropy[mode] = (f_co, f_oc, f_ohlc)
        return self._entropy[mode]


def _run_kernel(kernels, days: DayArrays, name: str, n: int, mode: EntropyMode):
    if name == "entropy":
        f_co, f_oc, f_ohlc = days.entropy_factors(mode)
        return kernels.roll_entropy(f_co, f_oc, f_ohlc, days.volume, n)
    fn = getattr(kernels, f"roll_{name}")
    return fn(days.o, days.u, days.d, days.c, n)


def _to_series(days: DayArrays, name: str, n: int, values, status) -> EstimateSeries:
    dates, vals, gaps = [], [], []
    for j, (v, s) in enumerate(zip(values.tolist(), status.tolist())):
        date = days.dates[j + n]
        if s:
            gaps.append((date, GAP_REASONS[s]))
        else:
            dates.append(date)
            vals.append(v)
    return EstimateSeries(name, n, tuple(dates), tuple(vals), tuple(gaps))


def roll(series: DailySeries, cfg: RollingConfig, kernels=None) -> dict[tuple[str, int], EstimateSeries]:
    """Estimate series for every configured (estimator, n) that fits the data.

    Windows needing more than ``len(series) - 1`` bars are skipped with a
    log message. Individual undefined windows become gaps, never values.
    """
    if cfg.anchor_date is not None:
        series = series.until(cfg.anchor_date)
    fitting = [n for n in cfg.windows if len(series) >= n + 1]
    if not fitting:
        raise SeriesTooShortError(
            f"{series.symbol}: {len(series)} bars is too short for any window in {list(cfg.windows)} "
            "(each needs n + 1 bars)"
        )
    for n in cfg.windows:
        if n not in fitting:
            log.info("%s: skipping n=%d, needs %d bars, have %d", series.symbol, n, n + 1, len(series))

    kernels = kernels or _backend.kernels
    days = DayArrays.from_series(series)
    if "entropy" in cfg.estimators:
        days.entropy_factors(cfg.entropy_mode)
    tasks = [(name, n) for name in cfg.estimators for n in fitting]

    def work(task):
        name, n = task
        values, status = _run_kernel(kernels, days, name, n, cfg.entropy_mode)
        return _to_series(days, name, n, values, status)

    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(work, tasks))
    else:
        results = [work(t) for t in tasks]
    return dict(zip(tasks, results))


def summarize(
    rolled: dict[tuple[str, int], EstimateSeries], cfg: RollingConfig, symbol: str = ""
) -> list[ComparisonReport]:
    """One comparison report per window length, rows in canonical estimator order."""
    reports = []
    for n in sorted({n for _, n in rolled}):
        bench = rolled.get((cfg.benchmark, n))
        if bench is None:
            raise BenchmarkMissingError(f"benchmark estimator {cfg.benchmark!r} missing for n={n}")
        rows = {}
        for name in ESTIMATORS:
            if (name, n) in rolled:
                rows[name] = compare(rolled[(name, n)], bench)
        reports.append(ComparisonReport(symbol, n, cfg.benchmark, rows, cfg.entropy_mode.value))
    return reports
