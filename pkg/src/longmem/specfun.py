"""Special-function kernels and fast convolution primitives.

Everything here is a pure function. The coefficient sequences are computed
by sequential recursion rather than direct gamma evaluation: the gamma
function overflows double precision past argument ~171, while the term
ratios stay O(1) for every k.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numba import njit
from scipy.special import gammaln

from .errors import DegenerateInputError, DomainError, ShapeError

__all__ = [
    "CoefKind",
    "CoefSequence",
    "fi_ma_coefs",
    "fi_ar_coefs",
    "csa_ma_coefs",
    "fft_convolve",
    "log_gamma",
    "log_beta",
]


class CoefKind(Enum):
    FI_MA = "fi_ma"
    FI_AR = "fi_ar"
    CSA_MA = "csa_ma"


@dataclass(frozen=True)
class CoefSequence:
    """Expansion coefficients indexed k = 0..K-1, with values[0] = 1."""

    values: np.ndarray
    kind: CoefKind
    param: tuple

    def __len__(self) -> int:
        return len(self.values)


@njit(cache=True)
def _ratio_recursion(ratios):
    # ratios[k] holds term(k)/term(k-1) for k >= 1 and 1.0 at k = 0.
    # Two passes: the ratio fill vectorizes, the in-place product is the
    # sequential recursion itself.
    v = ratios
    for k in range(1, v.shape[0]):
        v[k] *= v[k - 1]
    return v


@njit(cache=True)
def _fi_ratio_terms(K, d):
    v = np.empty(K)
    v[0] = 1.0
    kf = 1.0
    for k in range(1, K):
        v[k] = (kf - 1.0 + d) / kf
        kf += 1.0
    return v


def _fi_ma(K: int, d: float) -> np.ndarray:
    """values[k] = values[k-1] * (k-1+d)/k; the MA expansion of (1-L)^{-d}."""
    return _ratio_recursion(_fi_ratio_terms(K, d))


def _fi_ar(K: int, d: float) -> np.ndarray:
    """values[k] = values[k-1] * (k-1-d)/k; the expansion of (1-L)^d."""
    return _ratio_recursion(_fi_ratio_terms(K, -d))


@njit(cache=True)
def _csa_ratio_terms(K, p, q):
    v = np.empty(K)
    v[0] = 1.0
    kf = 1.0
    for k in range(1, K):
        v[k] = np.sqrt((p + kf - 1.0) / (p + q + kf - 1.0))
        kf += 1.0
    return v


def _csa_ma(K: int, p: float, q: float) -> np.ndarray:
    return _ratio_recursion(_csa_ratio_terms(K, p, q))


def _check_K(K: int) -> None:
    if K < 1:
        raise DegenerateInputError("need at least one coefficient, got K=%r" % (K,))


def _check_d(d: float, lo: float = -0.5, hi: float = 0.5) -> None:
    if not (lo < d < hi):
        raise DomainError(f"memory parameter d={d} outside ({lo}, {hi})")


def fi_ma_coefs(K: int, d: float) -> CoefSequence:
    """MA coefficients of the fractionally integrated process.

    values[k] = Gamma(k+d) / (Gamma(d) Gamma(k+1)), computed by the ratio
    recursion values[k] = values[k-1] * (k-1+d)/k.
    """
    _check_K(K)
    _check_d(d)
    return CoefSequence(_fi_ma(K, d), CoefKind.FI_MA, (d,))


def fi_ar_coefs(K: int, d: float) -> CoefSequence:
    """Expansion coefficients of the fractional difference operator (1-L)^d.

    values[k] = Gamma(k-d) / (Gamma(-d) Gamma(k+1)); note values[1] = -d.
    Forecasting negates lags k >= 1 to obtain predictor weights.
    """
    _check_K(K)
    _check_d(d)
    return CoefSequence(_fi_ar(K, d), CoefKind.FI_AR, (d,))


def csa_ma_coefs(K: int, p: float, q: float) -> CoefSequence:
    """MA coefficients of the aggregated-AR limit process.

    values[k] = sqrt(B(p+k, q) / B(p, q)), via the beta-ratio recursion
    values[k] = values[k-1] * sqrt((p+k-1)/(p+q+k-1)); no beta evaluation.
    """
    _check_K(K)
    if p <= 1 or q <= 1:
        raise DomainError(f"aggregation parameters require p>1 and q>1, got p={p}, q={q}")
    return CoefSequence(_csa_ma(K, p, q), CoefKind.CSA_MA, (p, q))


def _next_pow2(n: int) -> int:
    m = 1
    while m < n:
        m <<= 1
    return m


def fft_convolve(x: np.ndarray, c: np.ndarray) -> np.ndarray:
    """First T terms of the linear convolution sum_{k<=t} c_k x_{t-k}.

    Zero-pads to the next power of two >= 2T-1 and multiplies real FFTs.
    """
    x = np.asarray(x, dtype=float)
    c = np.asarray(c, dtype=float)
    if x.ndim != 1 or c.ndim != 1 or len(x) != len(c):
        raise ShapeError(f"inputs must be 1-d of equal length, got {x.shape} and {c.shape}")
    T = len(x)
    if T == 1:
        return x * c
    L = _next_pow2(2 * T - 1)
    out = np.fft.irfft(np.fft.rfft(x, L) * np.fft.rfft(c, L), L)
    return out[:T]


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if not np.all(np.asarray(x) > 0):
        raise DomainError(f"log_gamma requires a positive argument, got {x}")
    return gammaln(x)


def log_beta(a: float, b: float) -> float:
    """log B(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a+b)."""
    if not (np.all(np.asarray(a) > 0) and np.all(np.asarray(b) > 0)):
        raise DomainError(f"log_beta requires positive arguments, got ({a}, {b})")
    return gammaln(a) + gammaln(b) - gammaln(np.asarray(a) + np.asarray(b))
