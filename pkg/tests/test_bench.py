"""Timing harness sanity and the benchmark comparison suites."""
import time

import numpy as np
import pytest

from longmem.bench import (
    fi_ma_coefs_cumprod,
    naive_fracdiff,
    run_suite,
    time_fn,
)
from longmem.errors import RangeError
from longmem.specfun import fi_ma_coefs


class TestTimeFn:
    def test_noop_is_fast(self):
        res = time_fn("noop", lambda: None, reps=10)
        assert res.median_ns < 1e5
        assert res.reps == 10
        assert res.name == "noop"

    def test_sleep_is_measured(self):
        res = time_fn("sleep", lambda: time.sleep(0.01), reps=3, warmup=0)
        assert 0.8e7 < res.median_ns < 1e8
        assert res.mean_ns > 0.8e7

    def test_reps_validation(self):
        with pytest.raises(RangeError):
            time_fn("bad", lambda: None, reps=0)


class TestVariants:
    def test_cumprod_matches_loop(self):
        # [DERIVED] both evaluate the same product recursion
        assert np.allclose(
            fi_ma_coefs_cumprod(500, 0.3), fi_ma_coefs(500, 0.3).values, rtol=1e-12
        )

    def test_naive_fracdiff_impulse(self):
        e0 = np.zeros(10)
        e0[0] = 1.0
        out = naive_fracdiff(e0, 0.4)
        assert out[1] == pytest.approx(-0.4, abs=1e-14)


class TestSuites:
    def test_unknown_suite(self):
        with pytest.raises(RangeError):
            run_suite("nope", 100, 1)

    def test_fracdiff_suite_reports_agreement(self):
        res = run_suite("fracdiff-fft-vs-naive", 2000, 2)
        assert res["max_rel_diff"] < 1e-10
        assert res["fft"].median_ns > 0 and res["naive"].median_ns > 0

    def test_coef_recursion_suite_shape(self):
        res = run_suite("coef-recursion", 2000, 3)
        assert set(res) == {"loop", "cumprod"}
        assert all(v.sample_size == 2000 for v in res.values())
