"""Long-memory time series toolkit.

Generation (fractional integration, cross-sectional aggregation,
stochastic-duration shocks), memory-parameter estimation (classic,
semiparametric, parametric), forecasting with confidence bands, bundled
benchmark datasets, diagnostic plots, and a micro-benchmark harness.
"""

from .bench import BenchResult, naive_fracdiff, run_suite, time_fn
from .classic import ScalingMethod, ScalingRegression, log_variance_est, rescaled_range_est
from .data import Dataset, load_csv, nhtemp_data, nile_data
from .errors import (
    DataError,
    DegenerateInputError,
    DomainError,
    LongmemError,
    NumericalError,
    RangeError,
    ShapeError,
)
from .forecast import Forecast, csa_forecast, fi_forecast, har_forecast
from .generate import (
    Origin,
    RngSpec,
    Series,
    csa_gen,
    csa_gen_finite,
    fi_gen,
    fi_survival_probs,
    fracdiff,
    sds_gen,
)
from .moments import (
    AcfKind,
    AcfResult,
    Periodogram,
    autocorrelation,
    autocovariance,
    csa_cor_vals,
    csa_var_vals,
    fi_cor_vals,
    fi_var_vals,
    periodogram,
)
from .parametric import (
    CSAParams,
    FIParams,
    HARModel,
    ToeplitzGram,
    csa_mle_est,
    fi_mle_est,
    har_est,
    toeplitz_loglik_terms,
)
from .plotting import (
    Panel,
    PanelKind,
    PlotSpec,
    acf_plot,
    dump_csv,
    forecast_plot,
    lm_plot,
    log_variance_plot,
    periodogram_plot,
    render_svg,
    rescaled_range_plot,
)
from .semiparam import (
    EstMethod,
    MemoryEstimate,
    default_bandwidth,
    exact_whittle_est,
    exact_whittle_est_variance,
    gph_est,
    gph_est_variance,
    whittle_est,
    whittle_est_variance,
)
from .specfun import (
    CoefKind,
    CoefSequence,
    csa_ma_coefs,
    fft_convolve,
    fi_ar_coefs,
    fi_ma_coefs,
    log_beta,
    log_gamma,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
