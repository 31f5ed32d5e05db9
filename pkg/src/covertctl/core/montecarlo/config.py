"""ExperimentConfig: one (system, controller, detector) triple and its trial budget."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator

from covertctl.configuration.defaults import DEFAULT_EXPERIMENT_DOCUMENT, DEFAULT_SETTINGS
from covertctl.configuration.experiment_config import read_config_document, validate_document
from covertctl.constants import MIN_TRIALS
from covertctl.exceptions import DomainError, ValidationError
from covertctl.types import FilePath

from covertctl.core.analysis import BoundReport
from covertctl.core.ar1 import SystemParams, check_simulation
from covertctl.core.controllers import ControllerSpec, NoControl
from covertctl.core.detectors import DetectorSpec, required_horizon


class ExperimentConfig(BaseModel):
    """Everything a Monte Carlo run needs; the file alone reproduces the run.

    moment_bound_c and gamma describe the uniform moment bound E|X_n|^gamma <= c
    used to design magnitude detectors.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    system: SystemParams
    controller: ControllerSpec = Field(default_factory=NoControl)
    detector: DetectorSpec
    trials: int = Field(default=DEFAULT_SETTINGS["default_trials"], ge=MIN_TRIALS)
    horizon_n: int = Field(ge=1)
    master_seed: int = Field(default=DEFAULT_SETTINGS["default_master_seed"], ge=0, lt=2**64)
    moment_bound_c: float | None = Field(default=None, gt=0.0)
    gamma: float | None = Field(default=None, gt=0.0)
    expected_bound: BoundReport | None = None

    @model_validator(mode="after")
    def _check_invariants(self) -> ExperimentConfig:
        needed = required_horizon(self.detector)
        if self.horizon_n < needed:
            raise ValidationError(
                f"horizon_n={self.horizon_n} is shorter than the {self.detector.kind} "
                f"detector needs ({needed})",
                suggested_fix=f"Set horizon_n >= {needed}",
            )
        if (self.moment_bound_c is None) != (self.gamma is None):
            raise DomainError(
                "moment_bound_c and gamma describe one moment bound and come together",
                precondition="both set or both absent",
            )
        check_simulation(self.system, self.controller, self.horizon_n)
        return self


def load_experiment_config(path: FilePath) -> ExperimentConfig:
    """Read, merge onto defaults and validate an experiment JSON file."""
    document = read_config_document(path, DEFAULT_EXPERIMENT_DOCUMENT)
    return validate_document(ExperimentConfig, document, str(path))
