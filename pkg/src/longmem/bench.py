"""Micro-benchmark harness and the standard comparison suites.

Absolute timings are machine-specific; only relative orderings (FFT vs
naive differencing, asymptotic vs finite aggregation, loop recursion vs
cumulative product) are meaningful and asserted downstream.
"""
from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import RangeError
from .generate import RngSpec, csa_gen, csa_gen_finite, fi_gen, fracdiff
from .semiparam import gph_est, whittle_est
from .specfun import _csa_ratio_terms, _fi_ar, _fi_ma, _fi_ratio_terms

__all__ = [
    "BenchResult",
    "time_fn",
    "naive_fracdiff",
    "fi_ma_coefs_cumprod",
    "bench_coef_recursion",
    "bench_csa_finite_vs_asym",
    "bench_fracdiff_fft_vs_naive",
    "bench_estimators",
    "run_suite",
]


@dataclass(frozen=True)
class BenchResult:
    name: str
    sample_size: int
    reps: int
    mean_ns: float
    median_ns: float


def time_fn(label: str, thunk, reps: int = 20, warmup: int = 3, sample_size: int = 0) -> BenchResult:
    """Time a zero-argument callable: warmup discarded runs, then reps
    timed runs on the monotonic nanosecond clock."""
    if reps < 1:
        raise RangeError(f"reps must be >= 1, got {reps}")
    for _ in range(warmup):
        thunk()
    times = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        thunk()
        times.append(time.perf_counter_ns() - t0)
    return BenchResult(label, sample_size, reps, statistics.fmean(times), statistics.median(times))


@njit(cache=True)
def _naive_convolve(x, c):
    T = x.shape[0]
    out = np.zeros(T)
    for t in range(T):
        acc = 0.0
        for k in range(t + 1):
            acc += c[k] * x[t - k]
        out[t] = acc
    return out


def naive_fracdiff(x, d: float) -> np.ndarray:
    """O(T^2) truncated-binomial fractional differencing (oracle)."""
    v = np.asarray(getattr(x, "values", x), dtype=float)
    return _naive_convolve(v, _fi_ar(len(v), d))


def fi_ma_coefs_cumprod(K: int, d: float) -> np.ndarray:
    """Cumulative-product variant of the coefficient recursion, kept only
    for the benchmark comparison against the production loop."""
    return np.cumprod(_fi_ratio_terms(K, d))


def csa_ma_coefs_cumprod(K: int, p: float, q: float) -> np.ndarray:
    return np.cumprod(_csa_ratio_terms(K, p, q))


def bench_coef_recursion(n: int = 10_000, reps: int = 50) -> dict:
    d = 0.45
    return {
        "loop": time_fn("fi_coefs_loop", lambda: _fi_ma(n, d), reps, sample_size=n),
        "cumprod": time_fn("fi_coefs_cumprod", lambda: fi_ma_coefs_cumprod(n, d), reps,
                           sample_size=n),
    }


def bench_csa_finite_vs_asym(n: int = 10_000, reps: int = 5) -> dict:
    p, q = 1.3, 1.5
    return {
        "asymptotic": time_fn("csa_asymptotic",
                              lambda: csa_gen(n, p, q, rng=RngSpec(7)), reps, sample_size=n),
        "finite": time_fn("csa_finite",
                          lambda: csa_gen_finite(n, n, p, q, rng=RngSpec(7)),
                          reps, warmup=1, sample_size=n),
    }


def bench_fracdiff_fft_vs_naive(n: int = 10_000, reps: int = 5) -> dict:
    x = fi_gen(n, 0.3, rng=RngSpec(11))
    d = 0.3
    fft_out = fracdiff(x, d).values
    naive_out = naive_fracdiff(x, d)
    max_rel = float(np.max(np.abs(fft_out - naive_out)) / np.max(np.abs(naive_out)))
    return {
        "fft": time_fn("fracdiff_fft", lambda: fracdiff(x, d), reps, sample_size=n),
        "naive": time_fn("fracdiff_naive", lambda: naive_fracdiff(x, d), reps,
                         warmup=1, sample_size=n),
        "max_rel_diff": max_rel,
    }


def bench_estimators(n: int = 10_000, reps: int = 5) -> dict:
    x = fi_gen(n, 0.3, rng=RngSpec(13))
    return {
        "gph": time_fn("gph", lambda: gph_est(x), reps, sample_size=n),
        "lw": time_fn("lw", lambda: whittle_est(x), reps, sample_size=n),
    }


_SUITES = {
    "coef-recursion": bench_coef_recursion,
    "csa-finite-vs-asym": bench_csa_finite_vs_asym,
    "fracdiff-fft-vs-naive": bench_fracdiff_fft_vs_naive,
    "estimators": bench_estimators,
}


def run_suite(name: str, n: int, reps: int) -> dict:
    if name not in _SUITES:
        raise RangeError(f"unknown benchmark suite {name!r}; choose from {sorted(_SUITES)}")
    return _SUITES[name](n, reps)
