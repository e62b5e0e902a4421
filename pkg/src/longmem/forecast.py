"""h-step-ahead forecasting for the FI, CSA, and HAR models.

All three iterate a linear predictor forward, feeding forecasts back in,
and attach symmetric 95% bands built from the cumulative moving-average
variance of the corresponding model.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_toeplitz

from .errors import DegenerateInputError, DomainError, NumericalError, RangeError
from .moments import csa_cor_vals
from .parametric import HARModel, har_est
from .specfun import _fi_ar, csa_ma_coefs, fi_ma_coefs

__all__ = ["Forecast", "fi_forecast", "csa_forecast", "har_forecast"]

_YW_ORDER_CAP = 500  # Yule-Walker truncation; weights decay hyperbolically

Z_95 = 1.959963984540054  # standard normal 97.5% quantile


@dataclass(frozen=True)
class Forecast:
    history_length: int
    horizon: int
    point: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    model: object


def _history(x) -> np.ndarray:
    z = np.asarray(getattr(x, "values", x), dtype=float)
    if len(z) < 2:
        raise DegenerateInputError("forecasting needs at least two observations")
    return z


def _check_h(h: int) -> None:
    if h < 1:
        raise RangeError(f"horizon must be >= 1, got {h}")


def _check_sigma(sigma: float) -> None:
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")


def _iterate_linear(z: np.ndarray, weights: np.ndarray, h: int) -> np.ndarray:
    """Feed the predictor x_hat_t = sum_k w_k x_{t-k} forward h steps."""
    k = len(weights)
    ext = np.concatenate([z, np.zeros(h)])
    T = len(z)
    wrev = weights[::-1]
    for j in range(h):
        t = T + j
        n = min(k, t)
        ext[t] = wrev[k - n :] @ ext[t - n : t]
    return ext[T:]


def _bands(point: np.ndarray, sigma: float, ma: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    half = Z_95 * sigma * np.sqrt(np.cumsum(ma**2))
    return point - half, point + half


def fi_forecast(x, h: int, d: float, sigma: float) -> Forecast:
    """Truncated-AR(inf) forecast of the fractionally integrated model.

    Predictor weights are the negated lag-k coefficients of (1-L)^d (so
    a_1 = d); bands use the cumulative MA variance sigma^2 sum pi_i^2.
    """
    z = _history(x)
    _check_h(h)
    _check_sigma(sigma)
    if not -0.5 < d < 0.5:
        raise DomainError(f"d={d} outside (-1/2, 1/2)")
    T = len(z)
    weights = -_fi_ar(T + h, d)[1:]
    point = _iterate_linear(z, weights, h)
    lower, upper = _bands(point, sigma, fi_ma_coefs(h, d).values)
    return Forecast(T, h, point, lower, upper, model=("fi", d, sigma))


def csa_forecast(x, h: int, p: float, q: float, sigma: float) -> Forecast:
    """Yule-Walker forecast of the aggregation model.

    Solves the order-k Toeplitz system (k = min(T-1, 500)) for the best
    linear predictor weights and iterates them forward.
    """
    z = _history(x)
    _check_h(h)
    _check_sigma(sigma)
    T = len(z)
    k = min(T - 1, _YW_ORDER_CAP)
    rho = csa_cor_vals(k + 1, p, q).values
    try:
        weights = solve_toeplitz(rho[:k], rho[1 : k + 1])
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Yule-Walker system is singular for p={p}, q={q}") from exc
    if not np.all(np.isfinite(weights)):
        raise NumericalError(f"Yule-Walker solve produced non-finite weights for p={p}, q={q}")
    point = _iterate_linear(z, weights, h)
    lower, upper = _bands(point, sigma, csa_ma_coefs(h, p, q).values)
    return Forecast(T, h, point, lower, upper, model=("csa", p, q, sigma))


def _har_ma_coefs(model: HARModel, h: int) -> np.ndarray:
    """MA expansion of the fitted constrained AR recursion, m_0 = 1."""
    mx = max(model.lags)
    # unconstrained AR weight on lag i implied by the trailing-mean terms
    w = np.zeros(mx + 1)
    for a_j, L in zip(model.coefficients[1:], model.lags):
        w[1 : L + 1] += a_j / L
    m = np.zeros(h)
    m[0] = 1.0
    for i in range(1, h):
        n = min(i, mx)
        m[i] = w[1 : n + 1] @ m[i - 1 :: -1][:n]
    return m


def har_forecast(x, h: int, lags=(1, 5, 22)) -> Forecast:
    """Recursive HAR forecast: fits the model, then iterates the
    regression forward, rebuilding trailing means from past data and
    earlier forecasts."""
    z = _history(x)
    _check_h(h)
    model = har_est(z, lags)
    mx = max(model.lags)
    ext = np.concatenate([z, np.zeros(h)])
    T = len(z)
    for j in range(h):
        t = T + j
        pred = model.coefficients[0]
        for a_j, L in zip(model.coefficients[1:], model.lags):
            pred += a_j * ext[t - L : t].mean()
        ext[t] = pred
    point = ext[T:]
    lower, upper = _bands(point, model.sigma, _har_ma_coefs(model, h))
    return Forecast(T, h, point, lower, upper, model=model)
