"""
Module: covertctl.constants

Global constants for the covertctl laboratory.
Centralizes names, tolerances, environment variables, and output formats.
"""

from __future__ import annotations

from enum import StrEnum

APP_NAME = "covertctl"
APP_VERSION = "0.1.0"

ENV_THREADS = "COVERTCTL_THREADS"
ENV_HORIZON_CAP = "COVERTCTL_HORIZON_CAP"

LOG_DIR_NAME = "logs"
LOG_FILE_NAME = "covertctl.log"

# Numeric tolerances
SYMMETRY_RTOL = 1e-12
PROBABILITY_SUM_TOL = 1e-12
ORACLE_TOLERANCE = 1e-9
INVERSE_TOLERANCE = 1e-10
KL_CLAMP_TOLERANCE = 1e-10

# Monte Carlo
MIN_TRIALS = 100
WILSON_Z_95 = 1.959963984540054
VERIFICATION_SLACK_SE = 3.0

# Output formatting
SIGNIFICANT_DIGITS = 12
TRAJECTORY_CSV_HEADER = ("n", "x", "u")
RESULTS_CSV_HEADER = (
    "param",
    "value",
    "alpha",
    "beta",
    "alpha_ci",
    "beta_ci",
    "trials",
    "verdict",
)
NOT_APPLICABLE = "n/a"


class Hypothesis(StrEnum):
    """Willie's two hypotheses; the value keys the trial seed streams."""

    NULL = "h0"
    ALTERNATIVE = "h1"


HYPOTHESIS_STREAM_KEY: dict[Hypothesis, int] = {
    Hypothesis.NULL: 0,
    Hypothesis.ALTERNATIVE: 1,
}

# Spawn-key prefix for the per-value master seeds of a sweep.
SWEEP_STREAM_KEY = 2
