"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--bars 5000] [--trades 200000] [--repeat 5]

Prints the best-of-``repeat`` wall time per kernel for each backend, the
speedup, and the largest absolute difference between the two outputs.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from entrovol import _pykernels
from entrovol._backend import compiled_kernels

CLASSICAL = ("roll_cc", "roll_parkinson", "roll_gk", "roll_rs", "roll_yz")


def synthetic_days(bars: int, seed: int = 1):
    rng = np.random.default_rng(seed)
    o = rng.normal(0, 0.004, bars)
    c = rng.normal(0, 0.01, bars)
    u = np.maximum(0.0, c) + np.abs(rng.normal(0, 0.004, bars))
    d = np.minimum(0.0, c) - np.abs(rng.normal(0, 0.004, bars))
    vol = rng.lognormal(20, 0.4, bars)
    f_co, f_oc = np.expm1(o), np.expm1(c)
    f_ohlc = np.expm1(u) * (np.exp(u - c) - 1) + np.expm1(d) * (np.exp(d - c) - 1)
    return (o, u, d, c), (f_co, f_oc, f_ohlc, vol)


def best_time(fn, repeat: int):
    best, out = math.inf, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--bars", type=int, default=5000)
    parser.add_argument("--window", type=int, default=260)
    parser.add_argument("--trades", type=int, default=200_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    fast = compiled_kernels()
    if fast is None:
        print("compiled kernels are not built; only the numpy fallback is available")
        return 1

    ocud, entropy_in = synthetic_days(args.bars)
    rng = np.random.default_rng(2)
    factors = rng.normal(0, 1e-3, args.trades)
    qty = rng.integers(1, 10_000, args.trades).astype(np.float64)

    cases = [(name, (*ocud, args.window)) for name in CLASSICAL]
    cases.append(("roll_entropy", (*entropy_in, args.window)))
    cases.append(("intraday_curve", (factors, qty)))

    print(f"bars={args.bars} window={args.window} trades={args.trades} best of {args.repeat}")
    print(f"{'kernel':<16}{'cython ms':>11}{'numpy ms':>11}{'speedup':>9}{'max |diff|':>12}")
    for name, call_args in cases:
        t_fast, (v_fast, *_) = _as_tuple(best_time(lambda: getattr(fast, name)(*call_args), args.repeat))
        t_slow, (v_slow, *_) = _as_tuple(best_time(lambda: getattr(_pykernels, name)(*call_args), args.repeat))
        diff = float(np.max(np.abs(np.asarray(v_fast) - np.asarray(v_slow))))
        print(f"{name:<16}{t_fast * 1e3:>11.3f}{t_slow * 1e3:>11.3f}{t_slow / t_fast:>8.1f}x{diff:>12.2e}")
    return 0


def _as_tuple(timed):
    seconds, out = timed
    return seconds, (out if isinstance(out, tuple) else (out,))


if __name__ == "__main__":
    raise SystemExit(main())
