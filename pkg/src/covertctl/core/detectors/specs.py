"""Detector specifications and decisions.

A DetectorSpec is a tagged union selected by its ``kind`` field. GaussianLRT
accepts its covariances either as dense row lists or as a covariance model:

    {"model": "stationary", "a": 0.5, "sigma_z": 1.0, "n": 5}
    {"model": "reset", "a": 0.5, "sigma_z": 1.0, "n": 6, "tau": 3}
    {"model": "state", "system": {...SystemParams...}, "n": 4}
"""

from __future__ import annotations

from typing import Annotated, Any, Literal

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    TypeAdapter,
    ValidationInfo,
    field_serializer,
    field_validator,
    model_validator,
)

from covertctl.exceptions import ValidationError

from covertctl.core.ar1 import (
    CovMatrix,
    SystemParams,
    reset_covariance,
    state_covariance,
    stationary_covariance,
)


class Decision(BaseModel):
    """Outcome of one test. reject_null means "controlled"."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    reject_null: bool
    statistic: float
    threshold: float


class _Spec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class Magnitude(_Spec):
    """Declare "controlled" when |X_{n0}| <= m."""

    kind: Literal["magnitude"] = "magnitude"
    m: float = Field(gt=0.0)
    n0: int = Field(ge=1)


class InnovationEnergy(_Spec):
    """Declare "controlled" when the mean squared innovation reaches sigma_Z^2 + t."""

    kind: Literal["innovation_energy"] = "innovation_energy"
    k: int = Field(ge=1)
    t: float = Field(gt=0.0)


class ResetChiSquare(_Spec):
    """Declare "reset at tau" when (x_{tau+1} - a x_tau)^2 / sigma_Z^2 > t^2."""

    kind: Literal["reset_chi_square"] = "reset_chi_square"
    t: float = Field(gt=0.0)
    tau: int = Field(ge=1)


class ResetQuadratic(_Spec):
    """Optimal quadratic reset statistic T compared with t_prime."""

    kind: Literal["reset_quadratic"] = "reset_quadratic"
    t_prime: float
    tau: int = Field(ge=1)


def covariance_from_document(value: Any, label: str) -> CovMatrix:
    """Build a CovMatrix from dense rows or a covariance-model mapping."""
    if isinstance(value, CovMatrix):
        return value
    if isinstance(value, list):
        return CovMatrix.from_rows(value, label=label)
    if not isinstance(value, dict) or "model" not in value:
        raise ValidationError(
            f"{label} must be a list of rows or a covariance model",
            valid_examples=[
                '[[1.0, 0.5], [0.5, 1.0]]',
                '{"model": "stationary", "a": 0.5, "sigma_z": 1.0, "n": 5}',
            ],
        )
    model = value["model"]
    try:
        if model == "stationary":
            return stationary_covariance(
                float(value["a"]), float(value["sigma_z"]), int(value["n"])
            )
        if model == "reset":
            return reset_covariance(
                float(value["a"]), float(value["sigma_z"]), int(value["n"]), int(value["tau"])
            )
        if model == "state":
            system = SystemParams.model_validate(value["system"])
            return state_covariance(system, int(value["n"]))
    except KeyError as err:
        raise ValidationError(f"{label} model {model!r} is missing field {err}") from err
    raise ValidationError(
        f"unknown covariance model {model!r} for {label}",
        valid_examples=["stationary", "reset", "state"],
    )


class GaussianLRT(_Spec):
    """Full Gaussian log-likelihood-ratio test between N(0, cov0) and N(0, cov1).

    Both Cholesky factors are computed at construction; the test is immutable
    and shareable across threads afterwards.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    kind: Literal["gaussian_lrt"] = "gaussian_lrt"
    cov0: CovMatrix
    cov1: CovMatrix
    log_threshold: float = 0.0

    @field_validator("cov0", "cov1", mode="before")
    @classmethod
    def _build_covariance(cls, value: Any, info: ValidationInfo) -> CovMatrix:
        return covariance_from_document(value, info.field_name or "covariance")

    @model_validator(mode="after")
    def _check_invariants(self) -> GaussianLRT:
        if self.cov0.dim != self.cov1.dim:
            raise ValidationError(
                f"cov0 (dim {self.cov0.dim}) and cov1 (dim {self.cov1.dim}) differ in dimension"
            )
        _ = self.cov0.cholesky_factor
        _ = self.cov1.cholesky_factor
        return self

    @field_serializer("cov0", "cov1")
    def _serialize_covariance(self, value: CovMatrix) -> list[list[float]]:
        return value.to_rows()

    @property
    def dim(self) -> int:
        return self.cov0.dim

    @property
    def logdet_ratio(self) -> float:
        """log(|cov0| / |cov1|)."""
        return self.cov0.logdet() - self.cov1.logdet()

    @classmethod
    def for_gain_change(
        cls, a: float, b: float, sigma_z: float, n: int, log_threshold: float = 0.0
    ) -> GaussianLRT:
        """Stationary gain a under H0 against stationary gain b under H1."""
        return cls(
            cov0=stationary_covariance(a, sigma_z, n),
            cov1=stationary_covariance(b, sigma_z, n),
            log_threshold=log_threshold,
        )

    @classmethod
    def for_reset(
        cls, a: float, sigma_z: float, n: int, tau: int, log_threshold: float = 0.0
    ) -> GaussianLRT:
        """Stationary plant under H0 against a stationary reset at a known tau under H1."""
        return cls(
            cov0=stationary_covariance(a, sigma_z, n),
            cov1=reset_covariance(a, sigma_z, n, tau),
            log_threshold=log_threshold,
        )


DetectorSpec = Annotated[
    Magnitude | InnovationEnergy | ResetChiSquare | ResetQuadratic | GaussianLRT,
    Field(discriminator="kind"),
]

_DETECTOR_ADAPTER: TypeAdapter[DetectorSpec] = TypeAdapter(DetectorSpec)


def parse_detector(document: object) -> DetectorSpec:
    """Build a DetectorSpec from a JSON-like mapping (raises pydantic.ValidationError)."""
    return _DETECTOR_ADAPTER.validate_python(document)


def required_horizon(spec: DetectorSpec) -> int:
    """Smallest trajectory length the detector can read."""
    if isinstance(spec, Magnitude):
        return spec.n0
    if isinstance(spec, InnovationEnergy):
        return spec.k + 1
    if isinstance(spec, ResetChiSquare | ResetQuadratic):
        return spec.tau + 1
    return spec.dim
