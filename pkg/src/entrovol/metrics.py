"""Comparison statistics for estimate series.

All variances use the population (1/n) divisor. The comparison metrics
take the benchmark as the second argument; ``mse`` is symmetric,
``proportional_bias`` is not.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import (
    AllBenchmarkZeroError,
    InputError,
    MisalignedSeriesError,
    ZeroEstimatorVarianceError,
    ZeroMeanCVError,
)


@dataclass(frozen=True)
class EstimateSeries:
    """Per-date estimates from one estimator and window length.

    ``gaps`` lists the dates where the estimator was undefined, with the
    reason; those dates are absent from ``dates``/``values``.
    """

    estimator: str
    window_n: int
    dates: tuple[dt.date, ...]
    values: tuple[float, ...]
    gaps: tuple[tuple[dt.date, str], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "dates", tuple(self.dates))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "gaps", tuple(self.gaps))
        if len(self.dates) != len(self.values):
            raise InputError(f"{self.estimator}/{self.window_n}: {len(self.dates)} dates but {len(self.values)} values")
        for a, b in zip(self.dates, self.dates[1:]):
            if b <= a:
                raise InputError(f"{self.estimator}/{self.window_n}: dates not strictly increasing at {b}")
        for v in self.values:
            if not (math.isfinite(v) and v >= 0):
                raise InputError(f"{self.estimator}/{self.window_n}: invalid estimate {v!r}")

    def __len__(self) -> int:
        return len(self.values)

    def restrict(self, dates: Sequence[dt.date]) -> "EstimateSeries":
        """The sub-series on ``dates`` (which must all be present)."""
        lookup = dict(zip(self.dates, self.values))
        return EstimateSeries(self.estimator, self.window_n, tuple(dates), tuple(lookup[d] for d in dates))


class Dispersion(NamedTuple):
    mean: float
    var: float
    cv: float


class ProportionalBias(NamedTuple):
    value: float
    skipped: int


def _mean(xs: Sequence[float]) -> float:
    return math.fsum(xs) / len(xs)


def _var(xs: Sequence[float]) -> float:
    m = _mean(xs)
    return math.fsum((x - m) ** 2 for x in xs) / len(xs)


def mean_var_cv(s: EstimateSeries) -> Dispersion:
    """Mean, variance and coefficient of variation.

    Raises ZeroMeanCVError when the mean is zero; the error still carries
    ``mean`` and ``var``.
    """
    if len(s) == 0:
        raise InputError(f"{s.estimator}/{s.window_n}: empty estimate series")
    mean = _mean(s.values)
    var = _var(s.values)
    if mean == 0:
        raise ZeroMeanCVError(f"{s.estimator}/{s.window_n}: mean is zero, CV undefined", mean=mean, var=var)
    return Dispersion(mean, var, math.sqrt(var) / mean)


def _check_aligned(est: EstimateSeries, bench: EstimateSeries) -> None:
    if len(est) != len(bench) or est.dates != bench.dates:
        raise MisalignedSeriesError(
            f"{est.estimator}/{est.window_n} ({len(est)} points) is not date-aligned with "
            f"benchmark {bench.estimator}/{bench.window_n} ({len(bench)} points)"
        )
    if len(est) == 0:
        raise MisalignedSeriesError("cannot compare empty series")


def mse(est: EstimateSeries, bench: EstimateSeries) -> float:
    _check_aligned(est, bench)
    return math.fsum((b - e) ** 2 for b, e in zip(bench.values, est.values)) / len(est)


def proportional_bias(est: EstimateSeries, bench: EstimateSeries) -> ProportionalBias:
    """Mean of ``|V - v| / V``; points with a zero benchmark are skipped and counted."""
    _check_aligned(est, bench)
    terms = [abs(b - e) / b for b, e in zip(bench.values, est.values) if b > 0]
    if not terms:
        raise AllBenchmarkZeroError(f"benchmark {bench.estimator}/{bench.window_n} is zero at every point")
    return ProportionalBias(math.fsum(terms) / len(terms), len(est) - len(terms))


def efficiency(est: EstimateSeries, bench: EstimateSeries) -> float:
    _check_aligned(est, bench)
    var_est = _var(est.values)
    if var_est == 0:
        raise ZeroEstimatorVarianceError(f"{est.estimator}/{est.window_n} has zero variance; efficiency undefined")
    return _var(bench.values) / var_est


INDICATORS = ("mean", "var", "cv", "mse", "pb", "efficiency")


@dataclass
class ComparisonRow:
    estimator: str
    mean: float | None = None
    var: float | None = None
    cv: float | None = None
    mse: float | None = None
    pb: float | None = None
    efficiency: float | None = None
    gaps: int = 0
    pb_skipped: int = 0
    compared: int = 0
    #: indicator -> reason it is missing
    errors: dict[str, str] = field(default_factory=dict)

    def get(self, indicator: str) -> float | None:
        return getattr(self, indicator)


@dataclass
class ComparisonReport:
    symbol: str
    window_n: int
    benchmark: str
    rows: dict[str, ComparisonRow]
    entropy_mode: str = "relative"


def compare(est: EstimateSeries, bench: EstimateSeries) -> ComparisonRow:
    """One report row: own-series dispersion plus metrics on the common dates."""
    row = ComparisonRow(est.estimator, gaps=len(est.gaps))
    if len(est):
        try:
            row.mean, row.var, row.cv = mean_var_cv(est)
        except ZeroMeanCVError as exc:
            row.mean, row.var = exc.mean, exc.var
            row.errors["cv"] = "ZeroMeanCV"
    else:
        for name in ("mean", "var", "cv"):
            row.errors[name] = "EmptySeries"

    bench_dates = set(bench.dates)
    common = [d for d in est.dates if d in bench_dates]
    row.compared = len(common)
    if not common:
        for name in ("mse", "pb", "efficiency"):
            row.errors[name] = "NoCommonDates"
        return row
    a, b = est.restrict(common), bench.restrict(common)
    row.mse = mse(a, b)
    try:
        row.pb, row.pb_skipped = proportional_bias(a, b)
    except AllBenchmarkZeroError:
        row.errors["pb"] = "AllBenchmarkZero"
    try:
        row.efficiency = efficiency(a, b)
    except ZeroEstimatorVarianceError:
        row.errors["efficiency"] = "ZeroEstimatorVariance"
    return row
