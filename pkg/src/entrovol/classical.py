"""Variance-based volatility estimators over a single window.

All estimates are per-day (not annualized) and use population (1/n)
divisors. Every function takes a :class:`~entrovol.core.WindowView`;
``close_to_close`` and ``yang_zhang`` read its preceding close through the
opening-jump term, the others ignore it.
"""

from __future__ import annotations

import math

from .core import WindowView
from .errors import NegativeVarianceSumError, WindowTooShortError

LN2 = math.log(2.0)
GK_CLOSE_WEIGHT = 2.0 * LN2 - 1.0

#: estimators that read ``preceding_close``
USES_PRECEDING_BAR = {"cc": True, "parkinson": False, "gk": False, "rs": False, "yz": True}


def _population_variance(xs: list[float]) -> float:
    m = sum(xs) / len(xs)
    return sum((x - m) ** 2 for x in xs) / len(xs)


def yang_zhang_k(n: int) -> float:
    """Weight of the open-to-close variance in the Yang-Zhang combination.

    Strictly inside (0, 1) and increasing in ``n`` towards 0.34/2.34.
    """
    if n < 2:
        raise WindowTooShortError(f"Yang-Zhang weight needs n >= 2, got {n}")
    return 0.34 / (1.34 + (n + 1) / (n - 1))


def close_to_close(w: WindowView) -> float:
    xs = [comp.o + comp.c for comp in w.components()]
    return math.sqrt(_population_variance(xs))


def parkinson(w: WindowView) -> float:
    s = 0.0
    for comp in w.components():
        s += (comp.u - comp.d) ** 2 / (4.0 * LN2)
    return math.sqrt(s / w.n)


def garman_klass(w: WindowView) -> float:
    """Raises :class:`NegativeVarianceSumError` rather than clamping a negative sum.

    For bars with ``low <= open, close <= high`` every daily term is
    non-negative, so the error is only reachable with unvalidated bars.
    """
    s = 0.0
    for b in w.bars:
        s += 0.5 * math.log(b.high / b.low) ** 2 - GK_CLOSE_WEIGHT * math.log(b.close / b.open) ** 2
    if s < 0:
        raise NegativeVarianceSumError(f"Garman-Klass variance sum is negative ({s:.3e})")
    return math.sqrt(s / w.n)


def rogers_satchell_term(u: float, d: float, c: float) -> float:
    return u * (u - c) + d * (d - c)


def rogers_satchell_variance(w: WindowView) -> float:
    s = 0.0
    for comp in w.components():
        s += rogers_satchell_term(comp.u, comp.d, comp.c)
    return s / w.n


def rogers_satchell(w: WindowView) -> float:
    return math.sqrt(rogers_satchell_variance(w))


def _yang_zhang_variance(w: WindowView, k: float) -> float:
    comps = w.components()
    v_open = _population_variance([comp.o for comp in comps])
    v_close = _population_variance([comp.c for comp in comps])
    # Rogers-Satchell enters as a variance, like the other two terms
    return v_open + k * v_close + (1.0 - k) * rogers_satchell_variance(w)


def yang_zhang(w: WindowView) -> float:
    return math.sqrt(_yang_zhang_variance(w, yang_zhang_k(w.n)))


CLASSICAL = {
    "cc": close_to_close,
    "parkinson": parkinson,
    "gk": garman_klass,
    "rs": rogers_satchell,
    "yz": yang_zhang,
}
