"""Volume-weighted intrinsic-entropy volatility over a daily window.

Each in-window day gets the weight ``p_i = q_i / Q`` with ``Q`` the total
in-window volume. Price changes are weighted by ``-p_i ln p_i`` and split
into an overnight term, an open-to-close term and an intraday-range term,
which are combined with the Yang-Zhang weight ``k`` and taken in absolute
value.

The overnight term of the first day needs the weight of the bar before the
window; it is ``p0 = q0 / Q`` with the same in-window ``Q``, so the
in-window weights still sum to one.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .classical import yang_zhang_k
from .core import WindowView
from .errors import ZeroTotalVolumeError


class EntropyMode(str, enum.Enum):
    RELATIVE = "relative"
    LOG = "log"


@dataclass(frozen=True)
class EntropicWeights:
    p: tuple[float, ...]
    p0: float


@dataclass(frozen=True)
class EntropyComponents:
    h_co: float
    h_oc: float
    h_ohlc: float
    mode: EntropyMode


def xlnx(x: float) -> float:
    """``x ln x`` extended continuously with 0 at ``x = 0``."""
    return 0.0 if x == 0 else x * math.log(x)


def _relative(a: float, b: float) -> float:
    return a / b - 1.0


def _log_ratio(a: float, b: float) -> float:
    return math.log(a / b)


def price_factor(mode: EntropyMode | str) -> Callable[[float, float], float]:
    return _relative if EntropyMode(mode) is EntropyMode.RELATIVE else _log_ratio


def entropic_weights(w: WindowView) -> EntropicWeights:
    total = sum(b.volume for b in w.bars)
    if total <= 0:
        raise ZeroTotalVolumeError(
            f"window ending {w.bars[-1].date} has zero total volume; entropy weights undefined"
        )
    return EntropicWeights(p=tuple(b.volume / total for b in w.bars), p0=w.preceding_volume / total)


def entropy_cc(w: WindowView, weights: EntropicWeights) -> float:
    """Close-to-close analogue; a standalone diagnostic, not part of the combined estimate."""
    h = 0.0
    for prev_close, bar, p in zip(w.previous_closes, w.bars, weights.p):
        h -= (bar.close / prev_close - 1.0) * xlnx(p)
    return h


def entropy_components(
    w: WindowView, weights: EntropicWeights, mode: EntropyMode | str = EntropyMode.RELATIVE
) -> EntropyComponents:
    mode = EntropyMode(mode)
    f = price_factor(mode)
    prev_weights = (weights.p0,) + weights.p[:-1]
    h_co = h_oc = h_ohlc = 0.0
    for prev_close, bar, p, p_prev in zip(w.previous_closes, w.bars, weights.p, prev_weights):
        o, h, l, c = bar.open, bar.high, bar.low, bar.close
        plnp = xlnx(p)
        h_co -= f(o, prev_close) * xlnx(p_prev)
        h_oc -= f(c, o) * plnp
        h_ohlc -= (f(h, o) * f(h, c) + f(l, o) * f(l, c)) * plnp
    return EntropyComponents(h_co, h_oc, h_ohlc, mode)


def combine(parts: EntropyComponents, n: int) -> float:
    k = yang_zhang_k(n)
    return abs(parts.h_co + k * parts.h_oc + (1.0 - k) * parts.h_ohlc)


def intrinsic_entropy_estimate(w: WindowView, mode: EntropyMode | str = EntropyMode.RELATIVE) -> float:
    weights = entropic_weights(w)
    return combine(entropy_components(w, weights, mode), w.n)
