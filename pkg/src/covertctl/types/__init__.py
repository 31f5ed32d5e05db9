"""Centralized type definitions for covertctl.

This package contains the type aliases shared by the configuration,
core and ui layers.
"""

from covertctl.types.base import (  # noqa: F401
    BoolArray,
    ConfigPath,
    ErrorMessage,
    FilePath,
    FloatArray,
    JsonObject,
    NumericMap,
    OriginalError,
    RealOrArray,
    RuntimeSettings,
    Seed,
)
