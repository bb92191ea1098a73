"""Exception hierarchy.

``InputError`` subclasses describe bad data or arguments (CLI exit code 1);
``ComputationError`` subclasses describe numerically undefined results
(CLI exit code 2).
"""

from __future__ import annotations


class EntrovolError(Exception):
    """Base class for every error raised by this package."""


class InputError(EntrovolError):
    def __init__(self, message: str, *, line: int | None = None, source: str | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.source = source

    def __str__(self) -> str:
        where = ""
        if self.source is not None:
            where = f"{self.source}:"
        if self.line is not None:
            where += f"{self.line}:" if where else f"line {self.line}:"
        return f"{where} {self.message}" if where else self.message


class ComputationError(EntrovolError):
    pass


# bar / series validation
class NonPositivePriceError(InputError):
    pass


class RangeViolationError(InputError):
    pass


class NegativeVolumeError(InputError):
    pass


class UnorderedDatesError(InputError):
    pass


# CSV ingest
class MissingColumnError(InputError):
    pass


class UnparseableRowError(InputError):
    pass


class DuplicateDateError(InputError):
    pass


class EmptySeriesError(InputError):
    pass


class NonMonotoneTimestampError(InputError):
    pass


class NonPositiveQuantityError(InputError):
    pass


# estimators
class WindowTooShortError(ComputationError):
    pass


class NegativeVarianceSumError(ComputationError):
    pass


class ZeroTotalVolumeError(ComputationError):
    pass


class EmptyStateError(ComputationError):
    pass


# metrics
class ZeroMeanCVError(ComputationError):
    def __init__(self, message: str, *, mean: float, var: float):
        super().__init__(message)
        self.mean = mean
        self.var = var


class MisalignedSeriesError(ComputationError):
    pass


class AllBenchmarkZeroError(ComputationError):
    pass


class ZeroEstimatorVarianceError(ComputationError):
    pass


# rolling / report
class SeriesTooShortError(ComputationError):
    pass


class BenchmarkMissingError(ComputationError):
    pass


class SinkWriteFailureError(EntrovolError):
    pass
