"""Base type aliases for covertctl."""

from pathlib import Path
from typing import Any, TypeAlias, TypedDict

import numpy as np
import numpy.typing as npt

# File system types
FilePath = str | Path
ConfigPath = Path

# Error context
ErrorMessage = str
OriginalError = Exception | None

# Numeric types
Seed = int
FloatArray: TypeAlias = npt.NDArray[np.float64]
BoolArray: TypeAlias = npt.NDArray[np.bool_]
RealOrArray: TypeAlias = float | FloatArray

# JSON payloads as read from disk
JsonObject = dict[str, Any]
NumericMap = dict[str, float]


class RuntimeSettings(TypedDict):
    unstable_horizon_cap: int
    overflow_limit: float
    default_trials: int
    default_master_seed: int
    verification_slack_se: float
    oracle_tolerance: float
    inverse_tolerance: float
    kl_clamp_tolerance: float
