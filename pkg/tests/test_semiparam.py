"""GPH, bias-reduced GPH, local Whittle, and exact local Whittle."""
import numpy as np
import pytest

from longmem.errors import DegenerateInputError, DomainError, RangeError
from longmem.generate import RngSpec, fi_gen
from longmem.moments import periodogram
from longmem.semiparam import (
    EstMethod,
    default_bandwidth,
    exact_whittle_est,
    exact_whittle_est_variance,
    gph_est,
    gph_est_variance,
    whittle_est,
    whittle_est_variance,
)


class TestDefaultBandwidth:
    def test_nile_value(self):
        # [DERIVED] the printed variances invert to exactly m = 181
        assert default_bandwidth(663) == 181

    def test_exact_power(self):
        assert default_bandwidth(100, 0.5) == 10

    def test_clamp_floor(self):
        assert default_bandwidth(4) == 2

    def test_errors(self):
        with pytest.raises(RangeError):
            default_bandwidth(3)
        with pytest.raises(DomainError):
            default_bandwidth(100, 1.5)


class TestGph:
    def test_nile_values(self, nile):
        # [PAPER §3.2.2] (0.37449410505423664, 0.39745526593583125)
        assert gph_est(nile).d_hat == pytest.approx(0.37449410505423664, abs=1e-3)
        assert gph_est(nile, br=1).d_hat == pytest.approx(0.39745526593583125, abs=1e-3)
        assert gph_est(nile, br=1).method is EstMethod.GPH_BR

    def test_monte_carlo_mean_and_variance(self):
        # [DERIVED] Eq. 17: sqrt(m)(d_hat - d) -> N(0, pi^2/24)
        T, d, reps = 2**14, 0.3, 200
        m = int(T**0.8)
        ests = np.array(
            [gph_est(fi_gen(T, d, rng=RngSpec(1000 + r))).d_hat for r in range(reps)]
        )
        assert abs(ests.mean() - d) < 0.02
        target = np.pi**2 / (24 * m)
        assert 0.5 * target < ests.var(ddof=1) < 1.5 * target

    def test_variance_function(self):
        # [PAPER §3.2.2] exact printed values
        assert gph_est_variance(663) == 0.002272008379624622
        assert gph_est_variance(663, br=1) == 0.0051120188541553995
        assert gph_est_variance(663, br=1) / gph_est_variance(663) == 2.25

    def test_variance_series_or_length(self, nile):
        assert gph_est_variance(nile) == gph_est_variance(663)

    def test_errors(self, nile):
        with pytest.raises(RangeError):
            gph_est(nile, m=400)
        with pytest.raises(RangeError):
            gph_est(nile, br=9)
        with pytest.raises(DegenerateInputError):
            gph_est(np.ones(64))


class TestWhittle:
    def test_nile_value(self, nile):
        # [PAPER §3.2.4] 0.37635955766433826
        assert whittle_est(nile).d_hat == pytest.approx(0.37635955766433826, abs=1e-3)

    def test_variance(self, nile):
        # [PAPER §3.2.5] both variances are exactly 1/(4*181)
        assert whittle_est_variance(nile) == 0.0013812154696132596
        assert exact_whittle_est_variance(663) == 0.0013812154696132596

    def test_white_noise(self):
        x = fi_gen(2**14, 0.0, rng=RngSpec(5))
        est = whittle_est(x)
        assert abs(est.d_hat) < 3 * np.sqrt(est.asy_variance)

    def test_objective_unique_interior_minimum(self):
        # [DERIVED] grid oracle validating the scalar optimizer
        x = fi_gen(2**12, 0.3, rng=RngSpec(6))
        T = len(x.values)
        m = int(T**0.8)
        pg = periodogram(x.values)
        lam, I = pg.frequencies[:m], pg.ordinates[:m]

        def R(d):
            return np.log(np.mean(lam ** (2 * d) * I)) - 2 * d * np.log(lam).mean()

        grid = np.linspace(-0.45, 0.99, 100)
        vals = np.array([R(d) for d in grid])
        k = vals.argmin()
        assert 0 < k < len(grid) - 1  # interior
        assert np.all(np.diff(vals[: k + 1]) < 0) and np.all(np.diff(vals[k:]) > 0)
        assert abs(grid[k] - whittle_est(x).d_hat) < (grid[1] - grid[0])


class TestExactWhittle:
    def test_nile_value(self, nile):
        # [PAPER §3.2.4] 0.4088495239569418
        assert exact_whittle_est(nile).d_hat == pytest.approx(0.4088495239569418, abs=5e-3)

    def test_fi_recovery_high_d(self):
        x = fi_gen(2**13, 0.45, rng=RngSpec(7))
        est = exact_whittle_est(x)
        assert abs(est.d_hat - 0.45) < 3 * np.sqrt(est.asy_variance)

    def test_grid_oracle_equivalence(self, nile):
        # [DERIVED] optimizer result matches a 400-point grid minimum
        est = exact_whittle_est(nile)
        T = len(nile.values)
        z = nile.values - nile.values.mean()
        m = est.bandwidth_m
        from longmem.generate import fracdiff

        lam = 2 * np.pi * np.arange(1, m + 1) / T
        mean_loglam = np.log(lam).mean()

        def R(d):
            w = fracdiff(z, d).values if abs(d) < 1 else None
            if w is None:
                from longmem.specfun import _fi_ar, fft_convolve

                w = fft_convolve(z, _fi_ar(T, d))
            I = np.abs(np.fft.rfft(w)[1 : m + 1]) ** 2 / (2 * np.pi * T)
            return np.log(np.mean(I)) - 2 * d * mean_loglam

        grid = np.linspace(-1.0, 2.0, 400)
        best = grid[np.argmin([R(d) for d in grid])]
        assert abs(best - est.d_hat) <= (grid[1] - grid[0])


class TestScaleInvariance:
    def test_d_hat_unchanged_by_scaling(self, nile):
        x = nile.values
        for est in (gph_est, whittle_est, exact_whittle_est):
            assert est(7.3 * x).d_hat == pytest.approx(est(x).d_hat, abs=1e-6)
