"""Simulation of long-memory series.

Three mechanisms are implemented: fractional integration (MA(inf) filter of
Gaussian noise), cross-sectional aggregation of heterogeneous AR(1)
processes (finite panel and its asymptotic limit filter), and
stochastic-duration shocks where each innovation persists for a random
lifetime drawn from a heavy-tailed survival distribution.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateInputError, DomainError, ShapeError
from .moments import csa_var_vals, fi_cor_vals
from .specfun import _fi_ar, fft_convolve, fi_ma_coefs

__all__ = [
    "Origin",
    "Series",
    "RngSpec",
    "make_rng",
    "fi_gen",
    "fracdiff",
    "csa_gen",
    "csa_gen_finite",
    "fi_survival_probs",
    "sds_gen",
]


class Origin(Enum):
    SIMULATED = "simulated"
    LOADED = "loaded"


@dataclass(frozen=True)
class Series:
    """A univariate real-valued time series."""

    values: np.ndarray
    label: str | None = None
    origin: Origin = Origin.SIMULATED
    seed: int | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1:
            raise ShapeError(f"series values must be 1-d, got shape {v.shape}")
        if len(v) < 1:
            raise DegenerateInputError("series must contain at least one observation")
        if not np.all(np.isfinite(v)):
            raise DomainError("series values must all be finite")
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class RngSpec:
    """Seed plus algorithm tag; identical specs yield identical draws."""

    seed: int
    algorithm: str = "pcg64"


def make_rng(rng: RngSpec | int | None) -> tuple[np.random.Generator, int | None]:
    """Build a private generator from a spec, a bare seed, or None (entropy)."""
    if rng is None:
        seed = int(np.random.SeedSequence().entropy % (2**63))
        rng = RngSpec(seed)
    elif isinstance(rng, (int, np.integer)):
        rng = RngSpec(int(rng))
    if rng.algorithm.lower() != "pcg64":
        raise DomainError(f"unknown RNG algorithm {rng.algorithm!r}; only 'pcg64' is supported")
    return np.random.Generator(np.random.PCG64(rng.seed)), rng.seed


def _check_T(T: int) -> None:
    if T < 1:
        raise DegenerateInputError(f"sample size must be >= 1, got {T}")


def fi_gen(T: int, d: float, sigma: float = 1.0, rng: RngSpec | int | None = None) -> Series:
    """Fractionally integrated Gaussian noise of length T.

    Filters N(0, sigma^2) innovations with the MA expansion of (1-L)^{-d};
    d = 0 returns the raw innovation stream exactly.
    """
    _check_T(T)
    _check_sigma(sigma)
    gen, seed = make_rng(rng)
    eps = gen.normal(0.0, sigma, T)
    if d == 0.0:
        out = eps
    else:
        out = fft_convolve(eps, fi_ma_coefs(T, d).values)
    return Series(out, label=f"fi(d={d})", seed=seed)


def _check_sigma(sigma: float) -> None:
    if not sigma > 0:
        raise DomainError(f"innovation scale must be positive, got {sigma}")


def fracdiff(x: Series | np.ndarray, d: float) -> Series:
    """Apply the fractional difference operator (1-L)^d to a series."""
    v = np.asarray(getattr(x, "values", x), dtype=float)
    if not -1.0 < d < 1.0:
        raise DomainError(f"differencing order d={d} outside (-1, 1)")
    if d == 0.0:
        out = v.copy()
    else:
        out = fft_convolve(v, _fi_ar(len(v), d))
    return Series(out, label=f"fracdiff(d={d})", origin=getattr(x, "origin", Origin.SIMULATED))


def csa_gen(T: int, p: float, q: float, sigma: float = 1.0, rng: RngSpec | int | None = None) -> Series:
    """Asymptotic cross-sectional-aggregation process (memory d = 1 - q/2).

    Samples the limiting Gaussian process exactly by circulant embedding
    of its closed-form autocovariance (O(T log T)): the truncated
    square-root-beta MA filter only reproduces that autocovariance in the
    tail, not lag by lag, so the spectral sampler is used instead.
    """
    _check_T(T)
    _check_sigma(sigma)
    if not 1.0 < q < 2.0:
        raise DomainError(f"long memory requires q in (1, 2), got q={q}")
    if p <= 1:
        raise DomainError(f"aggregation parameter requires p>1, got p={p}")
    gen, seed = make_rng(rng)
    gamma = csa_var_vals(T, p, q, sigma)
    if T == 1:
        out = gen.normal(0.0, np.sqrt(gamma[0]), 1)
    else:
        M = 2 * T - 2
        circ = np.concatenate([gamma, gamma[T - 2 : 0 : -1]])
        lam = np.fft.fft(circ).real
        # tiny negative eigenvalues can occur from roundoff; clip to zero
        lam = np.maximum(lam, 0.0)
        zeta = gen.normal(size=M) + 1j * gen.normal(size=M)
        out = np.sqrt(M) * np.fft.ifft(np.sqrt(lam) * zeta).real[:T]
    return Series(out, label=f"csa(p={p},q={q})", seed=seed)


def csa_gen_finite(
    T: int, N: int, p: float, q: float, sigma: float = 1.0, rng: RngSpec | int | None = None
) -> Series:
    """Finite cross-sectional aggregation of N stationary AR(1) paths.

    Each path has coefficient alpha_i = sqrt(beta_i), beta_i ~ Beta(p, q),
    is initialized at its stationary distribution, and the output is the
    cross-section sum scaled by 1/sqrt(N).
    """
    _check_T(T)
    _check_sigma(sigma)
    if N < 1:
        raise DegenerateInputError(f"panel size must be >= 1, got {N}")
    if p <= 1 or q <= 1:
        raise DomainError(f"aggregation parameters require p>1 and q>1, got p={p}, q={q}")
    gen, seed = make_rng(rng)
    alpha = np.sqrt(gen.beta(p, q, N))
    state = gen.normal(0.0, sigma / np.sqrt(1.0 - alpha**2), N)
    out = np.empty(T)
    scale = 1.0 / np.sqrt(N)
    for t in range(T):
        state = alpha * state + gen.normal(0.0, sigma, N)
        out[t] = scale * state.sum()
    return Series(out, label=f"csa_finite(N={N},p={p},q={q})", seed=seed)


def fi_survival_probs(K: int, d: float) -> np.ndarray:
    """Shock-survival probabilities that mimic FI(d) autocovariances.

    p_k = [rho(k) - rho(k+1)] / [1 - rho(1)], k = 0..K-1, using the
    recursive FI autocorrelation; p_0 = 1 and the tail decays like
    k^{2d-2}. Partial sums telescope to the FI autocovariance profile.
    """
    if K < 1:
        raise DegenerateInputError("K must be >= 1")
    if not 0.0 < d < 0.5:
        raise DomainError(f"survival construction needs d in (0, 1/2), got d={d}")
    rho = fi_cor_vals(K + 1, d).values
    return (rho[:-1] - rho[1:]) / (1.0 - rho[1])


def sds_gen(T: int, d: float, sigma: float = 1.0, rng: RngSpec | int | None = None) -> Series:
    """Stochastic-duration-shock process of length T.

    A shock born at each t = 1..T stays alive for a random number of
    periods with P(lifetime > k) = p_k from fi_survival_probs; x_t is the
    sum of all currently alive shocks. Pre-sample shocks are truncated and
    lifetimes are capped at T.
    """
    _check_T(T)
    _check_sigma(sigma)
    probs = fi_survival_probs(T, d)
    gen, seed = make_rng(rng)
    eps = gen.normal(0.0, sigma, T)
    u = gen.random(T)
    # lifetime = #{k : p_k >= u}, computed on the ascending negated array
    life = np.searchsorted(-probs, -u, side="right")
    # difference-array accumulation: shock s covers positions s..s+life-1
    bump = np.zeros(T + 1)
    np.add.at(bump, np.arange(T), eps)
    ends = np.minimum(np.arange(T) + life, T)
    np.add.at(bump, ends, -eps)
    return Series(np.cumsum(bump[:T]), label=f"sds(d={d})", seed=seed)
