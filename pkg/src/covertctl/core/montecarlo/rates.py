"""Empirical error rates, Wilson intervals and bound verdicts."""

from __future__ import annotations

import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from covertctl.configuration.defaults import DEFAULT_SETTINGS
from covertctl.constants import WILSON_Z_95
from covertctl.exceptions import ValidationError

from covertctl.core.analysis import BoundDirection, BoundReport


class Verdict(StrEnum):
    CONSISTENT = "consistent"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


def wilson_half_width(successes: int, trials: int) -> float:
    """Half-width of the 95% Wilson score interval for successes / trials."""
    if trials < 1:
        raise ValidationError(f"trials={trials} must be positive")
    if not 0 <= successes <= trials:
        raise ValidationError(f"successes={successes} is not in [0, {trials}]")
    z = WILSON_Z_95
    p = successes / trials
    denominator = 1.0 + z * z / trials
    spread = math.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials))
    return z * spread / denominator


class ErrorRates(BaseModel):
    """alpha: false alarms under H0. beta: misses under H1."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    alpha_hat: float = Field(ge=0.0, le=1.0)
    beta_hat: float = Field(ge=0.0, le=1.0)
    alpha_ci: float = Field(ge=0.0)
    beta_ci: float = Field(ge=0.0)
    trials: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_invariants(self) -> ErrorRates:
        if not (math.isfinite(self.alpha_ci) and math.isfinite(self.beta_ci)):
            raise ValidationError("confidence half-widths must be finite")
        return self

    @classmethod
    def from_counts(cls, false_alarms: int, misses: int, trials: int) -> ErrorRates:
        return cls(
            alpha_hat=false_alarms / trials,
            beta_hat=misses / trials,
            alpha_ci=wilson_half_width(false_alarms, trials),
            beta_ci=wilson_half_width(misses, trials),
            trials=trials,
        )

    @property
    def error_sum(self) -> float:
        return self.alpha_hat + self.beta_hat

    @property
    def error_sum_se(self) -> float:
        """Standard error of alpha + beta; the two estimates are independent."""
        alpha_se = self.alpha_ci / WILSON_Z_95
        beta_se = self.beta_ci / WILSON_Z_95
        return math.hypot(alpha_se, beta_se)


def verify_bound(rates: ErrorRates, bound: BoundReport) -> Verdict:
    """Compare alpha + beta with ``bound`` in its own direction only.

    Consistent when the sum respects the bound, inconclusive when it misses
    by at most the slack, violated beyond it.
    """
    slack = DEFAULT_SETTINGS["verification_slack_se"] * rates.error_sum_se
    if bound.direction is BoundDirection.LOWER:
        shortfall = bound.value - rates.error_sum
    else:
        shortfall = rates.error_sum - bound.value
    if shortfall <= 0.0:
        return Verdict.CONSISTENT
    if shortfall <= slack:
        return Verdict.INCONCLUSIVE
    return Verdict.VIOLATED
