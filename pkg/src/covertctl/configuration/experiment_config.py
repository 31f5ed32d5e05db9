"""JSON configuration documents.

Handles reading experiment and oracle-grid documents from disk, merging them
onto defaults, and validating them with pydantic models.
"""

import copy
import json
from json import JSONDecodeError
from pathlib import Path
from typing import TypeVar

import pydantic
from pydantic import BaseModel, ConfigDict, Field

from covertctl.configuration.defaults import DEFAULT_ORACLE_GRID
from covertctl.exceptions import ConfigurationError, FileOperationError
from covertctl.types import FilePath, JsonObject

ModelT = TypeVar("ModelT", bound=BaseModel)

DEFAULT_GRID_NAME = "default"


def _merge_config_value(default_value: object, override_value: object) -> object:
    """Recursively merge a document onto defaults."""
    if isinstance(default_value, dict) and isinstance(override_value, dict):
        merged_value = copy.deepcopy(default_value)
        for key, value in override_value.items():
            if key in merged_value:
                merged_value[key] = _merge_config_value(merged_value[key], value)
            else:
                merged_value[key] = copy.deepcopy(value)
        return merged_value
    return copy.deepcopy(override_value)


def read_config_document(path: FilePath, defaults: JsonObject | None = None) -> JsonObject:
    """Read a JSON object from disk and merge it onto ``defaults``.

    Raises FileOperationError when the file cannot be read and
    ConfigurationError when it is not a JSON object.
    """
    config_path = Path(path)
    try:
        raw_text = config_path.read_text(encoding="utf-8")
    except OSError as err:
        raise FileOperationError("read", config_path, str(err), err) from err

    try:
        raw_document = json.loads(raw_text)
    except JSONDecodeError as err:
        raise ConfigurationError(
            f"Invalid JSON in config file at {config_path}: {err.msg} (line {err.lineno})"
        ) from err

    if not isinstance(raw_document, dict):
        raise ConfigurationError(
            f"Config file at {config_path} must contain a JSON object, "
            f"got {type(raw_document).__name__}"
        )

    if defaults is None:
        return raw_document
    merged = _merge_config_value(defaults, raw_document)
    assert isinstance(merged, dict)
    return merged


def _format_pydantic_error(err: pydantic.ValidationError) -> str:
    lines: list[str] = []
    for detail in err.errors():
        location = ".".join(str(part) for part in detail["loc"]) or "<root>"
        lines.append(f"{location}: {detail['msg']}")
    return "; ".join(lines)


def validate_document(model: type[ModelT], document: JsonObject, source: str) -> ModelT:
    """Validate ``document`` against ``model``, translating pydantic errors.

    Domain errors raised inside validators pass through unchanged.
    """
    try:
        return model.model_validate(document)
    except pydantic.ValidationError as err:
        raise ConfigurationError(
            f"Invalid configuration in {source}: {_format_pydantic_error(err)}",
            suggested_fix="Check field names and types against the documented config schema",
        ) from err


class OracleGrid(BaseModel):
    """Parameter grid for the closed-form versus dense-oracle checks."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    gains: list[float] = Field(min_length=1)
    unstable_gains: list[float] = Field(default_factory=list)
    dimensions: list[int] = Field(min_length=1)
    init_variances: list[float] = Field(default_factory=lambda: [0.0])
    sigma_z: float = Field(default=1.0, gt=0.0)


def load_oracle_grid(grid: str) -> OracleGrid:
    """Load an oracle grid; the literal name ``default`` selects the built-in grid."""
    if grid == DEFAULT_GRID_NAME:
        return validate_document(OracleGrid, DEFAULT_ORACLE_GRID, DEFAULT_GRID_NAME)
    document = read_config_document(grid)
    return validate_document(OracleGrid, document, grid)
