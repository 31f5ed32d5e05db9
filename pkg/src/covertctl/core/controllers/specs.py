"""Controller specifications.

A ControllerSpec is a tagged union selected by its ``kind`` field. Field-local
constraints are enforced here; constraints that couple a spec to the plant gain
live in covertctl.core.controllers.admissibility.
"""

from __future__ import annotations

from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, model_validator

from covertctl.exceptions import DomainError


class _Spec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class NoControl(_Spec):
    """Uncontrolled plant, U_n = 0."""

    kind: Literal["none"] = "none"


class OneBit(_Spec):
    """Sign feedback U_n = (a/2) C_{n-1} sgn(X_{n-1}) with the decaying gain C_n."""

    kind: Literal["one_bit"] = "one_bit"
    c1: float = Field(gt=0.0)
    bound_b: float = Field(gt=0.0)


class Threshold(_Spec):
    """Reset to zero state whenever |X_{n-1}| >= d."""

    kind: Literal["threshold"] = "threshold"
    d: float = Field(gt=0.0)


class GainChange(_Spec):
    """U_n = (a - b) X_{n-1}; the closed loop is an AR(1) with gain b."""

    kind: Literal["gain_change"] = "gain_change"
    b: float

    @model_validator(mode="after")
    def _check_invariants(self) -> GainChange:
        if not 0.0 < abs(self.b) < 1.0:
            raise DomainError(
                f"Gain-change target b={self.b!r} is not a stable nonzero gain",
                precondition="0 < |b| < 1",
            )
        return self


class ResetOnce(_Spec):
    """Single stationary reset at a known step tau."""

    kind: Literal["reset_once"] = "reset_once"
    tau: int = Field(ge=1)


class Stabilizer(_Spec):
    """U_n = (a - b) X_{n-1} stabilizing an unstable plant; b defaults to 1/a."""

    kind: Literal["stabilizer"] = "stabilizer"
    b: float | None = None

    @model_validator(mode="after")
    def _check_invariants(self) -> Stabilizer:
        if self.b is not None and abs(self.b) >= 1.0:
            raise DomainError(
                f"Stabilized gain b={self.b!r} is not stable",
                precondition="|b| < 1",
            )
        return self


ControllerSpec = Annotated[
    NoControl | OneBit | Threshold | GainChange | ResetOnce | Stabilizer,
    Field(discriminator="kind"),
]

_CONTROLLER_ADAPTER: TypeAdapter[ControllerSpec] = TypeAdapter(ControllerSpec)


def parse_controller(document: object) -> ControllerSpec:
    """Build a ControllerSpec from a JSON-like mapping (raises pydantic.ValidationError)."""
    return _CONTROLLER_ADAPTER.validate_python(document)
