"""BoundReport: a named closed-form value with the inputs that produced it."""

from __future__ import annotations

import csv
import io
import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, model_validator

from covertctl.exceptions import DomainError
from covertctl.types import NumericMap
from covertctl.utils.output import format_number


class BoundDirection(StrEnum):
    """Whether the value bounds alpha + beta from above or from below."""

    UPPER = "upper"
    LOWER = "lower"


class BoundReport(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    value: float
    inputs: NumericMap
    direction: BoundDirection

    @model_validator(mode="after")
    def _check_invariants(self) -> BoundReport:
        if not math.isfinite(self.value):
            raise DomainError(
                f"Bound {self.name} evaluated to {self.value!r}",
                precondition="bound value finite",
            )
        return self

    def to_csv_record(self) -> str:
        """One line: name,direction,value,key=value;key=value."""
        buffer = io.StringIO()
        inputs = ";".join(f"{key}={format_number(val)}" for key, val in sorted(self.inputs.items()))
        csv.writer(buffer, lineterminator="").writerow(
            [self.name, self.direction.value, format_number(self.value), inputs]
        )
        return buffer.getvalue()
