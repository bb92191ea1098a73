# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled rolling-window and intraday kernels.

Same signatures, conventions and status codes as ``_pykernels``. Every
window is summed directly (no sliding updates) so results do not drift
along the series.
"""

import numpy as np

from libc.math cimport log, sqrt, fabs, NAN

cdef enum:
    OK = 0
    NEGATIVE_SUM = 1
    ZERO_VOLUME = 2

cdef double LN2 = log(2.0)
cdef double GK_CLOSE_WEIGHT = 2.0 * log(2.0) - 1.0


cdef inline double _k(Py_ssize_t n) noexcept nogil:
    return 0.34 / (1.34 + (n + 1.0) / (n - 1.0))


cdef inline double _xlnx(double p) noexcept nogil:
    if p == 0.0:
        return 0.0
    return p * log(p)


cdef inline double _sum(const double[::1] x, Py_ssize_t start, Py_ssize_t n) noexcept nogil:
    # four independent accumulators; the window is still summed from scratch
    cdef double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0
    cdef Py_ssize_t j = start, stop = start + n
    while j + 4 <= stop:
        s0 += x[j]
        s1 += x[j + 1]
        s2 += x[j + 2]
        s3 += x[j + 3]
        j += 4
    while j < stop:
        s0 += x[j]
        j += 1
    return (s0 + s1) + (s2 + s3)


cdef inline double _pop_var(const double[::1] x, Py_ssize_t start, Py_ssize_t n) noexcept nogil:
    cdef double m = _sum(x, start, n) / n
    cdef double s0 = 0.0, s1 = 0.0, d0, d1
    cdef Py_ssize_t j = start, stop = start + n
    while j + 2 <= stop:
        d0 = x[j] - m
        d1 = x[j + 1] - m
        s0 += d0 * d0
        s1 += d1 * d1
        j += 2
    if j < stop:
        d0 = x[j] - m
        s0 += d0 * d0
    return (s0 + s1) / n


def _alloc(Py_ssize_t total, Py_ssize_t n):
    m = total - n if total > n else 0
    return np.empty(m, dtype=np.float64), np.zeros(m, dtype=np.int8)


cdef double[::1] _rs_terms(const double[::1] u, const double[::1] d, const double[::1] c):
    cdef Py_ssize_t j, total = u.shape[0]
    cdef double[::1] t = np.empty(total, dtype=np.float64)
    with nogil:
        for j in range(total):
            t[j] = u[j] * (u[j] - c[j]) + d[j] * (d[j] - c[j])
    return t


def roll_cc(const double[::1] o, const double[::1] u, const double[::1] d,
            const double[::1] c, Py_ssize_t n):
    values, status = _alloc(o.shape[0], n)
    cdef double[::1] out = values
    cdef double[::1] x = np.empty(o.shape[0], dtype=np.float64)
    cdef Py_ssize_t w, j, m = out.shape[0]
    with nogil:
        for j in range(o.shape[0]):
            x[j] = o[j] + c[j]
        for w in range(m):
            out[w] = sqrt(_pop_var(x, w + 1, n))
    return values, status


def roll_parkinson(const double[::1] o, const double[::1] u, const double[::1] d,
                   const double[::1] c, Py_ssize_t n):
    values, status = _alloc(o.shape[0], n)
    cdef double[::1] out = values
    cdef double[::1] t = np.empty(o.shape[0], dtype=np.float64)
    cdef Py_ssize_t w, j, m = out.shape[0]
    with nogil:
        for j in range(o.shape[0]):
            t[j] = (u[j] - d[j]) * (u[j] - d[j]) / (4.0 * LN2)
        for w in range(m):
            out[w] = sqrt(_sum(t, w + 1, n) / n)
    return values, status


def roll_gk(const double[::1] o, const double[::1] u, const double[::1] d,
            const double[::1] c, Py_ssize_t n):
    values, status = _alloc(o.shape[0], n)
    cdef double[::1] out = values
    cdef signed char[::1] st = status
    cdef double[::1] t = np.empty(o.shape[0], dtype=np.float64)
    cdef Py_ssize_t w, j, m = out.shape[0]
    cdef double s, hl
    with nogil:
        for j in range(o.shape[0]):
            hl = u[j] - d[j]
            t[j] = 0.5 * hl * hl - GK_CLOSE_WEIGHT * c[j] * c[j]
        for w in range(m):
            s = _sum(t, w + 1, n)
            if s < 0.0:
                st[w] = NEGATIVE_SUM
                out[w] = NAN
            else:
                out[w] = sqrt(s / n)
    return values, status


def roll_rs(const double[::1] o, const double[::1] u, const double[::1] d,
            const double[::1] c, Py_ssize_t n):
    values, status = _alloc(o.shape[0], n)
    cdef double[::1] out = values
    cdef double[::1] t = _rs_terms(u, d, c)
    cdef Py_ssize_t w, m = out.shape[0]
    with nogil:
        for w in range(m):
            out[w] = sqrt(_sum(t, w + 1, n) / n)
    return values, status


def roll_yz(const double[::1] o, const double[::1] u, const double[::1] d,
            const double[::1] c, Py_ssize_t n):
    values, status = _alloc(o.shape[0], n)
    cdef double[::1] out = values
    cdef double[::1] t = _rs_terms(u, d, c)
    cdef Py_ssize_t w, m = out.shape[0]
    cdef double k = _k(n)
    with nogil:
        for w in range(m):
            out[w] = sqrt(_pop_var(o, w + 1, n) + k * _pop_var(c, w + 1, n)
                          + (1.0 - k) * (_sum(t, w + 1, n) / n))
    return values, status


def roll_entropy(const double[::1] f_co, const double[::1] f_oc, const double[::1] f_ohlc,
                 const double[::1] volume, Py_ssize_t n):
    values, status = _alloc(volume.shape[0], n)
    cdef double[::1] out = values
    cdef signed char[::1] st = status
    cdef Py_ssize_t w, j, m = out.shape[0]
    cdef double k = _k(n)
    cdef double total, h_co, h_oc, h_ohlc, plnp, prev_plnp
    with nogil:
        for w in range(m):
            total = 0.0
            for j in range(w + 1, w + 1 + n):
                total += volume[j]
            if not total > 0.0:
                st[w] = ZERO_VOLUME
                out[w] = NAN
                continue
            h_co = 0.0
            h_oc = 0.0
            h_ohlc = 0.0
            prev_plnp = _xlnx(volume[w] / total)
            for j in range(w + 1, w + 1 + n):
                plnp = _xlnx(volume[j] / total)
                h_co -= f_co[j] * prev_plnp
                h_oc -= f_oc[j] * plnp
                h_ohlc -= f_ohlc[j] * plnp
                prev_plnp = plnp
            out[w] = fabs(h_co + k * h_oc + (1.0 - k) * h_ohlc)
    return values, status


def intraday_entropy(const double[::1] factors, const double[::1] quantities):
    cdef Py_ssize_t i, m = quantities.shape[0]
    cdef double total = 0.0, h = 0.0
    with nogil:
        for i in range(m):
            total += quantities[i]
        for i in range(m):
            h -= factors[i] * _xlnx(quantities[i] / total)
    return h


cdef inline void _neumaier(double *s, double *comp, double x) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        comp[0] += (s[0] - t) + x
    else:
        comp[0] += (x - t) + s[0]
    s[0] = t


def intraday_curve(const double[::1] factors, const double[::1] quantities):
    cdef Py_ssize_t i, m = quantities.shape[0]
    curve = np.empty(m, dtype=np.float64)
    cdef double[::1] out = curve
    cdef double a = 0.0, ca = 0.0, b = 0.0, cb = 0.0, q = 0.0, cq = 0.0
    cdef double fq, qt
    with nogil:
        for i in range(m):
            fq = factors[i] * quantities[i]
            _neumaier(&a, &ca, fq * log(quantities[i]))
            _neumaier(&b, &cb, fq)
            _neumaier(&q, &cq, quantities[i])
            qt = q + cq
            out[i] = -((a + ca) - (b + cb) * log(qt)) / qt
    return curve
