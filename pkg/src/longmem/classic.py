"""Classic heuristic memory estimators: log-variance scaling and the
rescaled-range (R/S) statistic.

Both reduce to an OLS fit on a log-log scaling plot; they are
diagnostic-grade and carry no asymptotic variance.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateInputError, RangeError

__all__ = ["ScalingMethod", "ScalingRegression", "log_variance_est", "rescaled_range_est"]


class ScalingMethod(Enum):
    LOG_VARIANCE = "log_variance"
    RESCALED_RANGE = "rescaled_range"


@dataclass(frozen=True)
class ScalingRegression:
    """An OLS fit of log statistics on log sizes, with the implied memory
    parameter under the method's scaling law."""

    log_sizes: np.ndarray
    log_stats: np.ndarray
    slope: float
    intercept: float
    implied_d: float
    method: ScalingMethod


def _values(x) -> np.ndarray:
    return np.asarray(getattr(x, "values", x), dtype=float)


def _ols_line(lx: np.ndarray, ly: np.ndarray) -> tuple[float, float]:
    slope, intercept = np.polyfit(lx, ly, 1)
    return float(slope), float(intercept)


def _geometric_sizes(lo: int, hi: int, m: int) -> np.ndarray:
    sizes = np.unique(np.round(np.geomspace(lo, hi, m)).astype(int))
    return sizes


def log_variance_est(x, m: int) -> ScalingRegression:
    """Memory estimate from the scaling of block-mean variances.

    For geometrically spaced block sizes n between 10 and T/2, the series
    is cut into floor(T/n) contiguous blocks and the variance of the block
    means is regressed (log-log) on n; implied_d = (slope + 1)/2, with
    slope -1 corresponding to short memory.
    """
    z = _values(x)
    T = len(z)
    if not 2 <= m <= T // 2:
        raise RangeError(f"need 2 <= m <= T/2, got m={m}, T={T}")
    if np.var(z) == 0:
        raise DegenerateInputError("constant series has no variance scaling")
    sizes = _geometric_sizes(min(10, max(2, T // 4)), T // 2, m)
    lv = []
    ls = []
    for n in sizes:
        nb = T // n
        if nb < 2:
            continue
        means = z[: nb * n].reshape(nb, n).mean(axis=1)
        v = means.var(ddof=1)
        if v > 0:
            ls.append(np.log(n))
            lv.append(np.log(v))
    if len(ls) < 2:
        raise DegenerateInputError("fewer than two usable block sizes")
    lx, ly = np.array(ls), np.array(lv)
    slope, intercept = _ols_line(lx, ly)
    return ScalingRegression(lx, ly, slope, intercept, (slope + 1.0) / 2.0, ScalingMethod.LOG_VARIANCE)


def rescaled_range_est(x, k: int) -> ScalingRegression:
    """Memory estimate from rescaled-range scaling; implied_d = slope - 1/2.

    Windows are prefixes of the series with k sizes linearly spaced from
    T/k to T. Within each window the range of the cumulative deviations
    from the overall sample mean is divided by the window standard
    deviation, and log(R/S) is regressed on log window size.
    """
    z = _values(x)
    T = len(z)
    if k < 4:
        raise RangeError(f"need at least k=4 window sizes, got {k}")
    sizes = np.unique(np.round(np.linspace(T / k, T, k)).astype(int))
    sizes = sizes[sizes >= 2]
    if len(sizes) < 2:
        raise RangeError(f"series of length {T} too short for k={k} windows of size >= 2")
    dev = z - z.mean()
    csum = np.cumsum(dev)
    lx = []
    ly = []
    for n in sizes:
        s = z[:n].std(ddof=1)
        if s == 0:
            raise DegenerateInputError(f"window of size {n} has zero standard deviation")
        r = csum[:n].max() - csum[:n].min()
        lx.append(np.log(n))
        ly.append(np.log(r / s))
    lx, ly = np.array(lx), np.array(ly)
    slope, intercept = _ols_line(lx, ly)
    return ScalingRegression(lx, ly, slope, intercept, slope - 0.5, ScalingMethod.RESCALED_RANGE)
