"""Closed-form analytics: KL divergence, matrix identities and covertness limits."""

from covertctl.core.analysis.bounds import (  # noqa: F401
    covert_gain_bound,
    covert_gain_report,
    covertness_target,
    detection_target,
    gain_change_error_bounds,
    k0_reports,
    n0_reports,
    one_bit_k0,
    one_bit_steady_energy,
    reset_covert_bound,
    reset_covert_report,
    reset_detect_gain_bound,
    reset_detect_report,
    stabilized_moment_bound,
)
from covertctl.core.analysis.divergence import (  # noqa: F401
    error_sum_lower_bound,
    gaussian_kl,
    gaussian_total_variation_1d,
    mixture_kl_1d,
    mixture_kl_upper_bound,
)
from covertctl.core.analysis.matrices import (  # noqa: F401
    gain_change_kl,
    gain_change_window,
    reset_kl,
    stationary_inverse,
    stationary_logdet,
    trace_ratio_ss,
)
from covertctl.core.analysis.oracles import (  # noqa: F401
    OracleName,
    OracleOutcome,
    ar1_factor_matrices,
    cholesky_logdet,
    dense_inverse,
    dense_inverse_trace,
    dense_state_covariance,
    run_oracle,
)
from covertctl.core.analysis.reports import BoundDirection, BoundReport  # noqa: F401
