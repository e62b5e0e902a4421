"""Parametric estimation: concentrated Gaussian MLE for the fractionally
integrated and aggregated models via Toeplitz likelihoods, and the
heterogeneous-autoregressive (HAR) regression.

The Toeplitz likelihood is evaluated with the Durbin-Levinson prediction
error decomposition (O(T^2), O(T) memory). For the fractionally
integrated model at large T an algebraically equivalent O(T log T) path
is used: the log-determinant from the closed-form partial
autocorrelations and the quadratic form from a preconditioned conjugate
gradient solve with FFT Toeplitz products.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.optimize import minimize, minimize_scalar
from scipy.sparse.linalg import LinearOperator, cg

from .errors import DegenerateInputError, DomainError, NumericalError, RangeError
from .moments import csa_cor_vals, fi_cor_vals
from .specfun import log_gamma

__all__ = [
    "FIParams",
    "CSAParams",
    "HARModel",
    "ToeplitzGram",
    "toeplitz_loglik_terms",
    "fi_mle_est",
    "csa_mle_est",
    "har_est",
]

_DL_MAX_T = 2048  # above this fi_mle_est switches to the O(T log T) path


@dataclass(frozen=True)
class FIParams:
    """Fractionally integrated model: memory d and innovation s.d. sigma."""

    d: float
    sigma: float
    boundary: bool = False


@dataclass(frozen=True)
class CSAParams:
    """Aggregation model: beta parameters (p, q) and the fitted scale.

    sigma follows the convention scale = process s.d. * sqrt(q - 1); the
    innovation s.d. is recoverable as sigma / sqrt(p + q - 1).
    """

    p: float
    q: float
    sigma: float
    boundary: bool = False


@dataclass(frozen=True)
class HARModel:
    """Constrained AR on trailing means: coefficients [a_0, a_1, ...] for
    an intercept plus one trailing-mean regressor per lag."""

    lags: tuple
    coefficients: np.ndarray
    sigma: float


@dataclass(frozen=True)
class ToeplitzGram:
    """First row of a symmetric Toeplitz correlation matrix, rho(0)=1."""

    first_row: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.first_row, dtype=float)
        if r.ndim != 1 or len(r) < 1:
            raise DegenerateInputError("first_row must be a nonempty 1-d array")
        if abs(r[0] - 1.0) > 1e-12:
            raise DomainError(f"correlation matrix needs rho(0)=1, got {r[0]}")
        object.__setattr__(self, "first_row", r)


@njit(cache=True)
def _dl_terms(rho, x):
    """Durbin-Levinson pass: (log|Gamma|, x' Gamma^{-1} x, ok flag)."""
    T = x.shape[0]
    phi = np.zeros(T)
    tmp = np.zeros(T)
    v = rho[0]
    logdet = np.log(v)
    quad = x[0] * x[0] / v
    for t in range(1, T):
        acc = rho[t]
        for j in range(1, t):
            acc -= phi[j - 1] * rho[t - j]
        k = acc / v
        for j in range(1, t):
            tmp[j - 1] = phi[j - 1] - k * phi[t - 1 - j]
        tmp[t - 1] = k
        for j in range(t):
            phi[j] = tmp[j]
        v = v * (1.0 - k * k)
        if v <= 0.0 or not np.isfinite(v):
            return 0.0, 0.0, False
        e = x[t]
        for j in range(1, t + 1):
            e -= phi[j - 1] * x[t - j]
        logdet += np.log(v)
        quad += e * e / v
    return logdet, quad, True


def toeplitz_loglik_terms(rho, x) -> tuple[float, float]:
    """Joint log-determinant and quadratic form of a Toeplitz Gram matrix.

    rho may be a ToeplitzGram or a bare first row; x is the (demeaned)
    data vector. Raises NumericalError if the recursion loses positive
    definiteness.
    """
    r = np.asarray(getattr(rho, "first_row", rho), dtype=float)
    z = np.asarray(getattr(x, "values", x), dtype=float)
    if len(r) < len(z):
        raise RangeError(f"need at least T={len(z)} correlations, got {len(r)}")
    logdet, quad, ok = _dl_terms(r[: len(z)], z)
    if not ok:
        raise NumericalError("Toeplitz matrix lost positive definiteness in the recursion")
    return float(logdet), float(quad)


def _fi_logdet(T: int, d: float) -> float:
    """log|Gamma_T| for the FI correlation matrix via the closed-form
    partial autocorrelations phi_kk = d/(k-d)."""
    k = np.arange(1, T, dtype=float)
    pacf = d / (k - d)
    return float(((T - k) * np.log1p(-(pacf**2))).sum())


def _fi_quadform_pcg(z: np.ndarray, d: float) -> float:
    """x' Gamma^{-1} x by preconditioned CG with circulant-embedded
    Toeplitz products (exact up to the 1e-10 solve tolerance)."""
    T = len(z)
    rho = fi_cor_vals(T, d).values
    L = 1
    while L < 2 * T:
        L <<= 1
    circ = np.zeros(L)
    circ[:T] = rho
    circ[L - T + 1 :] = rho[1:][::-1]
    eig = np.fft.rfft(circ)

    def matvec(v):
        return np.fft.irfft(eig * np.fft.rfft(v, L), L)[:T]

    # Strang circulant preconditioner on the T-point grid
    pre = np.empty(T)
    half = T // 2
    pre[: half + 1] = rho[: half + 1]
    for j in range(half + 1, T):
        pre[j] = rho[T - j]
    pre_eig = np.fft.rfft(pre).real
    pre_eig = np.maximum(pre_eig, 1e-10)

    def solve_pre(v):
        return np.fft.irfft(np.fft.rfft(v) / pre_eig, T)

    A = LinearOperator((T, T), matvec=matvec)
    M = LinearOperator((T, T), matvec=solve_pre)
    y, info = cg(A, z, rtol=1e-10, atol=0.0, maxiter=500, M=M)
    if info != 0:
        raise NumericalError(f"conjugate gradient failed to converge (info={info})")
    return float(z @ y)


def _demeaned(x) -> np.ndarray:
    z = np.asarray(getattr(x, "values", x), dtype=float)
    if len(z) < 10:
        raise RangeError(f"parametric fits need T >= 10, got T={len(z)}")
    if np.all(z == z[0]):
        raise DegenerateInputError("constant series cannot be fit")
    return z - z.mean()


def fi_mle_est(x) -> FIParams:
    """Concentrated Gaussian MLE of the fractionally integrated model.

    Minimizes (1/2T) log|Gamma| + (1/2) log(quadform/T) over d; sigma is
    the innovation standard deviation implied by the profiled-out scale.
    """
    z = _demeaned(x)
    T = len(z)
    lo, hi = -0.5 + 1e-4, 0.5 - 1e-4

    def terms(d):
        if T <= _DL_MAX_T:
            return toeplitz_loglik_terms(fi_cor_vals(T, d).values, z)
        return _fi_logdet(T, d), _fi_quadform_pcg(z, d)

    def obj(d):
        try:
            logdet, quad = terms(d)
        except NumericalError:
            return np.inf
        return logdet / (2.0 * T) + 0.5 * np.log(quad / T)

    res = minimize_scalar(obj, bounds=(lo, hi), method="bounded", options={"xatol": 1e-8})
    d_hat = float(res.x)
    boundary = d_hat - lo < 1e-5 or hi - d_hat < 1e-5
    _, quad = terms(d_hat)
    # quad/T estimates the process variance under the correlation-matrix
    # parametrization; convert to the innovation variance.
    innov_var = (quad / T) * np.exp(2.0 * log_gamma(1.0 - d_hat) - log_gamma(1.0 - 2.0 * d_hat))
    return FIParams(d_hat, float(np.sqrt(innov_var)), boundary)


_CSA_BOX = (1.0 + 1e-6, 50.0)


def csa_mle_est(x) -> CSAParams:
    """Concentrated Gaussian MLE of the aggregation model over (p, q).

    Same objective as fi_mle_est with the aggregated-process correlations;
    optimized by Nelder-Mead from (1.5, 1.5) inside the box
    [1+1e-6, 50]^2. The returned scale is process s.d. * sqrt(q-1).
    """
    z = _demeaned(x)
    T = len(z)
    lo, hi = _CSA_BOX

    def terms(p, q):
        return toeplitz_loglik_terms(csa_cor_vals(T, p, q).values, z)

    def obj(theta):
        p = min(max(theta[0], lo), hi)
        q = min(max(theta[1], lo), hi)
        try:
            logdet, quad = terms(p, q)
        except NumericalError:
            return np.inf
        return logdet / (2.0 * T) + 0.5 * np.log(quad / T)

    res = minimize(obj, np.array([1.5, 1.5]), method="Nelder-Mead",
                   options={"xatol": 1e-6, "fatol": 1e-10, "maxiter": 500})
    p_hat = float(min(max(res.x[0], lo), hi))
    q_hat = float(min(max(res.x[1], lo), hi))
    boundary = min(p_hat - lo, hi - p_hat, q_hat - lo, hi - q_hat) < 1e-5
    _, quad = terms(p_hat, q_hat)
    scale = float(np.sqrt((quad / T) * (q_hat - 1.0)))
    return CSAParams(p_hat, q_hat, scale, boundary)


def har_est(x, lags=(1, 5, 22)) -> HARModel:
    """OLS fit of the HAR regression on trailing means.

    For each lag L the regressor at time t is the mean of the previous L
    observations; rows run from t = max(lags) to the end of the sample.
    """
    z = np.asarray(getattr(x, "values", x), dtype=float)
    T = len(z)
    lags = tuple(int(L) for L in lags)
    if len(lags) == 0 or any(L < 1 for L in lags) or any(
        b <= a for a, b in zip(lags, lags[1:])
    ):
        raise DomainError(f"lags must be strictly increasing positive integers, got {lags}")
    mx = max(lags)
    if T <= mx + 10:
        raise RangeError(f"need T > max(lags)+10 = {mx + 10}, got T={T}")
    csum = np.concatenate(([0.0], np.cumsum(z)))
    rows = np.arange(mx, T)
    X = np.ones((len(rows), len(lags) + 1))
    for j, L in enumerate(lags):
        X[:, j + 1] = (csum[rows] - csum[rows - L]) / L
    y = z[rows]
    rank = np.linalg.matrix_rank(X)
    if rank < X.shape[1]:
        raise DegenerateInputError("collinear HAR regressors (constant data or duplicate lags)")
    beta, rss, *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ beta
    dof = len(rows) - len(lags) - 1
    sigma = float(np.sqrt(resid @ resid / dof))
    return HARModel(lags, beta, sigma)
