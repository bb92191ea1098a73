"""Intraday intrinsic entropy over a growing trade sequence.

After ``N`` trades with total quantity ``Q`` the entropy is

    H = -sum_k (p_k / ref_k - 1) * (q_k / Q) * ln(q_k / Q)

where every ratio is recomputed with the latest ``Q``. With the default
``previous`` reference, ``ref_k`` is the price of trade ``k - 1``; the first
trade is compared with the session reference (usually the previous close)
and contributes nothing when none is given.
"""

from __future__ import annotations

import datetime as dt
from typing import Iterable, Literal

import numpy as np

from . import _backend
from .entropy import xlnx
from .errors import EmptyStateError, InputError, NonMonotoneTimestampError
from .ingest import TradeRecord

RefPolicy = Literal["previous", "fixed"]


class IntradayState:
    """Trade log for one symbol and session.

    Not thread-safe for writers: serialize :meth:`push` calls externally.
    """

    def __init__(self, reference: float | None = None, policy: RefPolicy = "previous"):
        if policy not in ("previous", "fixed"):
            raise InputError(f"unknown reference policy {policy!r}; use 'previous' or 'fixed'")
        if policy == "fixed" and reference is None:
            raise InputError("fixed reference policy needs a reference price")
        if reference is not None and not reference > 0:
            raise InputError(f"reference price {reference!r} must be positive")
        self.reference = reference
        self.policy = policy
        self.prices: list[float] = []
        self.quantities: list[float] = []
        self.total_quantity = 0
        self.last_timestamp: dt.datetime | None = None

    @property
    def trades_seen(self) -> int:
        return len(self.prices)

    def push(self, trade: TradeRecord) -> "IntradayState":
        if self.last_timestamp is not None and trade.timestamp < self.last_timestamp:
            raise NonMonotoneTimestampError(
                f"trade {trade.seq} at {trade.timestamp.isoformat()} precedes {self.last_timestamp.isoformat()}"
            )
        if not trade.quantity > 0 or not trade.price > 0:
            raise InputError(f"trade {trade.seq}: price and quantity must be positive")
        self.prices.append(float(trade.price))
        self.quantities.append(trade.quantity)
        self.total_quantity += trade.quantity
        self.last_timestamp = trade.timestamp
        return self

    def extend(self, trades: Iterable[TradeRecord]) -> "IntradayState":
        for trade in trades:
            self.push(trade)
        return self

    def price_factors(self) -> list[float]:
        """``p_k / ref_k - 1`` for every retained trade."""
        if self.policy == "fixed":
            return [p / self.reference - 1.0 for p in self.prices]
        factors = []
        prev = self.reference
        for p in self.prices:
            factors.append(0.0 if prev is None else p / prev - 1.0)
            prev = p
        return factors

    def _require_trades(self) -> None:
        if not self.prices:
            raise EmptyStateError("no trades pushed yet")

    def entropy_at(self) -> float:
        """Entropy of the session so far, recomputed over every trade."""
        self._require_trades()
        total = self.total_quantity
        h = 0.0
        for f, q in zip(self.price_factors(), self.quantities):
            h -= f * xlnx(q / total)
        return h

    def curve(self, kernels=None) -> np.ndarray:
        """Entropy after each trade, as ``entropy_at`` would report it at that moment."""
        self._require_trades()
        kernels = kernels or _backend.kernels
        return kernels.intraday_curve(
            np.asarray(self.price_factors(), dtype=np.float64),
            np.asarray(self.quantities, dtype=np.float64),
        )

    def moving_base_fractions(self, direction: Literal["oldest-first", "newest-first"] = "oldest-first") -> list[float]:
        """Each quantity over the running total accumulated in ``direction``.

        Oldest-first gives ``q1/q1, q2/(q1+q2), ...``; newest-first starts from
        the latest trade and walks back.
        """
        self._require_trades()
        if direction == "oldest-first":
            seq = self.quantities
        elif direction == "newest-first":
            seq = self.quantities[::-1]
        else:
            raise InputError(f"direction must be 'oldest-first' or 'newest-first', got {direction!r}")
        out = []
        running = 0
        for q in seq:
            running += q
            out.append(q / running)
        return out

    def final_fractions(self) -> list[float]:
        """Each quantity over the current total ``Q``; these sum to one."""
        self._require_trades()
        return [q / self.total_quantity for q in self.quantities]


def push_trade(state: IntradayState, trade: TradeRecord) -> IntradayState:
    return state.push(trade)


def entropy_at(state: IntradayState) -> float:
    return state.entropy_at()


def moving_base_fractions(state: IntradayState, direction: str = "oldest-first") -> list[float]:
    return state.moving_base_fractions(direction)
