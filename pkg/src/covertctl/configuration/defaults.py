"""
Module: covertctl.configuration.defaults

Default runtime settings for covertctl.
Environment variables override the two limits exposed in configuration.limits.
"""

from covertctl.constants import (
    INVERSE_TOLERANCE,
    KL_CLAMP_TOLERANCE,
    ORACLE_TOLERANCE,
    VERIFICATION_SLACK_SE,
)
from covertctl.types import JsonObject, RuntimeSettings

DEFAULT_SETTINGS: RuntimeSettings = {
    "unstable_horizon_cap": 200,
    "overflow_limit": 1e15,
    "default_trials": 10_000,
    "default_master_seed": 0,
    "verification_slack_se": VERIFICATION_SLACK_SE,
    "oracle_tolerance": ORACLE_TOLERANCE,
    "inverse_tolerance": INVERSE_TOLERANCE,
    "kl_clamp_tolerance": KL_CLAMP_TOLERANCE,
}

# Experiment documents are merged onto this before validation.
DEFAULT_EXPERIMENT_DOCUMENT: JsonObject = {
    "controller": {"kind": "none"},
    "trials": DEFAULT_SETTINGS["default_trials"],
    "master_seed": DEFAULT_SETTINGS["default_master_seed"],
    "moment_bound_c": None,
    "gamma": None,
    "expected_bound": None,
}

DEFAULT_ORACLE_GRID: JsonObject = {
    "gains": [-0.95, -0.9, -0.6, -0.3, -0.1, 0.1, 0.3, 0.6, 0.9, 0.95],
    "unstable_gains": [-1.5, -1.2, 1.2, 1.5],
    "dimensions": [1, 2, 3, 5, 10, 25, 50, 100],
    "init_variances": [0.0, 0.5],
    "sigma_z": 1.0,
}
