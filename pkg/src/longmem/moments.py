"""Sample and theoretical second moments: ACF/ACV, periodogram, and the
closed forms for the fractionally integrated and aggregated processes."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateInputError, DomainError, RangeError
from .specfun import _ratio_recursion, log_beta, log_gamma

__all__ = [
    "AcfKind",
    "AcfResult",
    "Periodogram",
    "autocovariance",
    "autocorrelation",
    "fi_cor_vals",
    "fi_var_vals",
    "csa_cor_vals",
    "csa_var_vals",
    "periodogram",
]


class AcfKind(Enum):
    SAMPLE = "sample"
    THEORETICAL_FI = "theoretical_FI"
    THEORETICAL_CSA = "theoretical_CSA"


@dataclass(frozen=True)
class AcfResult:
    lags: np.ndarray
    values: np.ndarray
    kind: AcfKind


@dataclass(frozen=True)
class Periodogram:
    """Ordinates I(lambda_k) at the Fourier frequencies 2*pi*k/T, k=1..T//2."""

    frequencies: np.ndarray
    ordinates: np.ndarray


def _values(x) -> np.ndarray:
    # accept a Series or a bare array
    v = getattr(x, "values", x)
    return np.asarray(v, dtype=float)


def autocovariance(x, K: int) -> np.ndarray:
    """Biased sample autocovariance gamma_hat(k), k = 0..K-1.

    Uses the divisor T (not T-k) so the implied Toeplitz matrix is positive
    semidefinite for downstream Yule-Walker solves.
    """
    z = _values(x)
    T = len(z)
    if not 1 <= K <= T:
        raise RangeError(f"need 1 <= K <= T, got K={K}, T={T}")
    z = z - z.mean()
    L = 1
    while L < 2 * T:
        L <<= 1
    f = np.fft.rfft(z, L)
    acv = np.fft.irfft(f * np.conj(f), L)[:K] / T
    return acv


def autocorrelation(x, K: int) -> AcfResult:
    """Sample autocorrelation gamma_hat(k)/gamma_hat(0)."""
    acv = autocovariance(x, K)
    if acv[0] <= 0:
        raise DegenerateInputError("zero-variance series has no autocorrelation")
    return AcfResult(np.arange(K), acv / acv[0], AcfKind.SAMPLE)


def fi_cor_vals(K: int, d: float) -> AcfResult:
    """Theoretical FI(d) autocorrelation via the ratio recursion
    rho(k) = rho(k-1) * (k-1+d)/(k-d)."""
    if K < 1:
        raise DegenerateInputError("K must be >= 1")
    if not -0.5 < d < 0.5:
        raise DomainError(f"d={d} outside (-1/2, 1/2)")
    k = np.arange(K, dtype=float)
    terms = np.empty(K)
    terms[0] = 1.0
    if K > 1:
        terms[1:] = (k[1:] - 1 + d) / (k[1:] - d)
    return AcfResult(np.arange(K), _ratio_recursion(terms), AcfKind.THEORETICAL_FI)


def fi_var_vals(K: int, d: float, sigma: float = 1.0) -> np.ndarray:
    """Theoretical FI(d) autocovariance; gamma(0) = sigma^2 G(1-2d)/G(1-d)^2."""
    rho = fi_cor_vals(K, d).values
    g0 = np.exp(log_gamma(1 - 2 * d) - 2 * log_gamma(1 - d))
    return sigma**2 * g0 * rho


def csa_cor_vals(K: int, p: float, q: float) -> AcfResult:
    """Theoretical aggregated-process autocorrelation
    rho(k) = B(p + k/2, q-1) / B(p, q-1)."""
    if K < 1:
        raise DegenerateInputError("K must be >= 1")
    if q <= 1 or p <= 0:
        raise DomainError(f"need p>0 and q>1 for the correlation closed form, got p={p}, q={q}")
    k = np.arange(K, dtype=float)
    rho = np.exp(log_beta(p + k / 2, q - 1) - log_beta(p, q - 1))
    return AcfResult(np.arange(K), rho, AcfKind.THEORETICAL_CSA)


def csa_var_vals(K: int, p: float, q: float, sigma: float = 1.0) -> np.ndarray:
    """Theoretical aggregated-process autocovariance
    gamma(k) = sigma^2 B(p + k/2, q-1) / B(p, q).

    Derived from the correlation closed form together with
    gamma(0)/sigma^2 = B(p, q-1)/B(p, q) = (p+q-1)/(q-1).
    """
    if K < 1:
        raise DegenerateInputError("K must be >= 1")
    if q <= 1 or p <= 0:
        raise DomainError(f"need p>0 and q>1, got p={p}, q={q}")
    k = np.arange(K, dtype=float)
    return sigma**2 * np.exp(log_beta(p + k / 2, q - 1) - log_beta(p, q))


def periodogram(x) -> Periodogram:
    """Periodogram I(lambda_k) = |DFT|^2 / (2 pi T) at k = 1..T//2.

    The 1/T factor makes the ordinates a consistent spectral density
    estimator; every estimator downstream is invariant to this constant.
    """
    z = _values(x)
    T = len(z)
    if T < 2:
        raise DegenerateInputError("periodogram needs at least two observations")
    half = T // 2
    I = np.abs(np.fft.rfft(z)) ** 2 / (2 * np.pi * T)
    lam = 2 * np.pi * np.arange(1, half + 1) / T
    return Periodogram(lam, I[1 : half + 1])
