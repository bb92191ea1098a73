"""numpy implementation of the rolling and intraday kernels.

Used when the compiled ``_kernels`` extension is unavailable. Signatures and
status codes match ``_kernels.pyx`` exactly.

Array conventions: inputs are float64 arrays over all ``N`` bars; per-day
terms that need the previous close are undefined for day 0. Output entry
``j`` belongs to the window that ends at bar ``j + n`` and starts at bar
``j + 1``.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

OK = 0
NEGATIVE_SUM = 1
ZERO_VOLUME = 2

_LN2 = np.log(2.0)
_GK_CLOSE_WEIGHT = 2.0 * _LN2 - 1.0


def _windows(x, n):
    # windows starting at day 1 .. N-n
    return sliding_window_view(x, n)[1:]


def _pop_var(win):
    m = win.mean(axis=1)
    return ((win - m[:, None]) ** 2).mean(axis=1)


def _ok(values):
    return values, np.zeros(values.shape[0], dtype=np.int8)


def roll_cc(o, u, d, c, n):
    return _ok(np.sqrt(_pop_var(_windows(o + c, n))))


def roll_parkinson(o, u, d, c, n):
    terms = (u - d) ** 2 / (4.0 * _LN2)
    return _ok(np.sqrt(_windows(terms, n).mean(axis=1)))


def roll_gk(o, u, d, c, n):
    hl = u - d
    terms = 0.5 * hl * hl - _GK_CLOSE_WEIGHT * c * c
    s = _windows(terms, n).sum(axis=1)
    status = np.where(s < 0, NEGATIVE_SUM, OK).astype(np.int8)
    values = np.full(s.shape, np.nan)
    good = status == OK
    values[good] = np.sqrt(s[good] / n)
    return values, status


def _rs_var(u, d, c, n):
    return _windows(u * (u - c) + d * (d - c), n).mean(axis=1)


def roll_rs(o, u, d, c, n):
    return _ok(np.sqrt(_rs_var(u, d, c, n)))


def roll_yz(o, u, d, c, n):
    k = 0.34 / (1.34 + (n + 1) / (n - 1))
    var = _pop_var(_windows(o, n)) + k * _pop_var(_windows(c, n)) + (1.0 - k) * _rs_var(u, d, c, n)
    return _ok(np.sqrt(var))


def _xlnx(p):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(p == 0, 0.0, p * np.log(np.where(p == 0, 1.0, p)))


def roll_entropy(f_co, f_oc, f_ohlc, volume, n):
    """Absolute combined intrinsic entropy per window.

    ``f_co[j]``, ``f_oc[j]``, ``f_ohlc[j]`` are the per-day price factors of
    the overnight, open-to-close and range terms (relative or log form).
    """
    k = 0.34 / (1.34 + (n + 1) / (n - 1))
    vol_win = sliding_window_view(volume, n)
    cur = vol_win[1:]
    prev = vol_win[:-1]
    total = cur.sum(axis=1)
    status = np.where(total > 0, OK, ZERO_VOLUME).astype(np.int8)
    safe = np.where(total > 0, total, 1.0)[:, None]
    plnp = _xlnx(cur / safe)
    plnp_prev = _xlnx(prev / safe)
    h_co = -(_windows(f_co, n) * plnp_prev).sum(axis=1)
    h_oc = -(_windows(f_oc, n) * plnp).sum(axis=1)
    h_ohlc = -(_windows(f_ohlc, n) * plnp).sum(axis=1)
    values = np.abs(h_co + k * h_oc + (1.0 - k) * h_ohlc)
    values[status != OK] = np.nan
    return values, status


def intraday_entropy(factors, quantities):
    """Full recomputation of ``-sum f_k (q_k/Q) ln(q_k/Q)`` with the final ``Q``."""
    total = quantities.sum()
    return float(-(factors * _xlnx(quantities / total)).sum())


def intraday_curve(factors, quantities):
    """Entropy after each trade, from running sums.

    With ``A = sum f q ln q`` and ``B = sum f q`` the entropy of the first
    ``t`` trades is ``-(A_t - B_t ln Q_t) / Q_t``.
    """
    fq = factors * quantities
    a = np.cumsum(fq * np.log(quantities))
    b = np.cumsum(fq)
    q = np.cumsum(quantities)
    return -(a - b * np.log(q)) / q
