"""Runtime limits with environment overrides.

Precedence: environment variable > DEFAULT_SETTINGS.
"""

from __future__ import annotations

import os

from covertctl.configuration.defaults import DEFAULT_SETTINGS
from covertctl.constants import ENV_HORIZON_CAP, ENV_THREADS
from covertctl.exceptions import ConfigurationError


def _positive_int_from_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.strip())
    except ValueError as err:
        raise ConfigurationError(
            f"{name} must be a positive integer, got {raw!r}",
            suggested_fix=f"Unset {name} or set it to e.g. 4",
        ) from err
    if value < 1:
        raise ConfigurationError(
            f"{name} must be a positive integer, got {value}",
            suggested_fix=f"Unset {name} or set it to e.g. 4",
        )
    return value


def get_thread_limit() -> int:
    """Worker threads for the Monte Carlo harness (default: hardware count)."""
    return _positive_int_from_env(ENV_THREADS, os.cpu_count() or 1)


def get_unstable_horizon_cap() -> int:
    """Longest horizon simulated for |a| > 1."""
    return _positive_int_from_env(ENV_HORIZON_CAP, DEFAULT_SETTINGS["unstable_horizon_cap"])


def get_overflow_limit() -> float:
    return DEFAULT_SETTINGS["overflow_limit"]
