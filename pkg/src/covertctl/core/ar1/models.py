"""Plant and noise models for the AR(1) system X_n = a X_{n-1} + Z_n - U_n."""

from __future__ import annotations

import math
from enum import StrEnum
from functools import lru_cache

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import integrate, special

from covertctl.exceptions import DomainError, UnitGainError
from covertctl.types import FloatArray

_SMALLEST_UNIFORM = np.finfo(np.float64).tiny


@lru_cache(maxsize=64)
def _truncated_moment(sigma: float, bound: float, power: int) -> float:
    """E[Z^power] of N(0, sigma^2) truncated to [-bound, bound], by quadrature."""
    mass = special.ndtr(bound / sigma) - special.ndtr(-bound / sigma)

    def integrand(z: float) -> float:
        return z**power * math.exp(-0.5 * (z / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))

    value, _ = integrate.quad(integrand, -bound, bound, epsabs=1e-14, epsrel=1e-12)
    return float(value / mass)


class NoiseKind(StrEnum):
    GAUSSIAN = "gaussian"
    UNIFORM = "uniform"
    TRUNCATED_GAUSSIAN = "truncated_gaussian"


class NoiseModel(BaseModel):
    """I.i.d. plant noise Z_n.

    Gaussian takes ``sigma_z``. Uniform takes the support bound ``bound_b``.
    TruncatedGaussian takes both: the parent normal's scale and the bound.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: NoiseKind = NoiseKind.GAUSSIAN
    sigma_z: float | None = Field(default=None, gt=0.0)
    bound_b: float | None = Field(default=None, gt=0.0)

    @model_validator(mode="after")
    def _check_invariants(self) -> NoiseModel:
        if self.kind is NoiseKind.GAUSSIAN:
            if self.sigma_z is None or self.bound_b is not None:
                raise DomainError(
                    "Gaussian noise takes sigma_z and no bound_b",
                    precondition="sigma_z > 0, bound_b absent",
                )
        elif self.kind is NoiseKind.UNIFORM:
            if self.bound_b is None or self.sigma_z is not None:
                raise DomainError(
                    "Uniform noise takes bound_b and no sigma_z (its variance is B^2/3)",
                    precondition="bound_b > 0, sigma_z absent",
                )
        elif self.sigma_z is None or self.bound_b is None:
            raise DomainError(
                "Truncated Gaussian noise takes both sigma_z and bound_b",
                precondition="sigma_z > 0 and bound_b > 0",
            )
        return self

    @classmethod
    def gaussian(cls, sigma_z: float) -> NoiseModel:
        return cls(kind=NoiseKind.GAUSSIAN, sigma_z=sigma_z)

    @classmethod
    def uniform(cls, bound_b: float) -> NoiseModel:
        return cls(kind=NoiseKind.UNIFORM, bound_b=bound_b)

    @classmethod
    def truncated_gaussian(cls, sigma_z: float, bound_b: float) -> NoiseModel:
        return cls(kind=NoiseKind.TRUNCATED_GAUSSIAN, sigma_z=sigma_z, bound_b=bound_b)

    @property
    def support_bound(self) -> float | None:
        """B for bounded kinds, None for Gaussian noise."""
        if self.kind is NoiseKind.GAUSSIAN:
            return None
        return self.bound_b

    @property
    def variance(self) -> float:
        """sigma_Z^2 = E[Z^2]."""
        if self.kind is NoiseKind.GAUSSIAN:
            assert self.sigma_z is not None
            return self.sigma_z**2
        if self.kind is NoiseKind.UNIFORM:
            assert self.bound_b is not None
            return self.bound_b**2 / 3.0
        assert self.sigma_z is not None and self.bound_b is not None
        return _truncated_moment(self.sigma_z, self.bound_b, 2)

    @property
    def fourth_moment(self) -> float:
        """m_Z(4) = E[Z^4]."""
        if self.kind is NoiseKind.GAUSSIAN:
            assert self.sigma_z is not None
            return 3.0 * self.sigma_z**4
        if self.kind is NoiseKind.UNIFORM:
            assert self.bound_b is not None
            return self.bound_b**4 / 5.0
        assert self.sigma_z is not None and self.bound_b is not None
        return _truncated_moment(self.sigma_z, self.bound_b, 4)

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)

    def sample_from_uniform(self, u: FloatArray) -> FloatArray:
        """Map uniforms in [0, 1) to noise draws through the inverse CDF."""
        u = np.clip(np.asarray(u, dtype=np.float64), _SMALLEST_UNIFORM, None)
        if self.kind is NoiseKind.GAUSSIAN:
            assert self.sigma_z is not None
            return self.sigma_z * special.ndtri(u)
        if self.kind is NoiseKind.UNIFORM:
            assert self.bound_b is not None
            return self.bound_b * (2.0 * u - 1.0)
        assert self.sigma_z is not None and self.bound_b is not None
        low = special.ndtr(-self.bound_b / self.sigma_z)
        high = special.ndtr(self.bound_b / self.sigma_z)
        draws = self.sigma_z * special.ndtri(low + u * (high - low))
        return np.clip(draws, -self.bound_b, self.bound_b)


class SystemParams(BaseModel):
    """Gain, noise and initialization of the AR(1) plant."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    gain_a: float
    noise: NoiseModel
    init_variance: float = Field(default=0.0, ge=0.0)
    stationary_init: bool = False

    @model_validator(mode="after")
    def _check_invariants(self) -> SystemParams:
        if not math.isfinite(self.gain_a):
            raise DomainError(f"Gain a={self.gain_a!r} is not finite", precondition="a finite")
        if self.stationary_init and abs(self.gain_a) >= 1.0:
            raise UnitGainError(self.gain_a, "|a| < 1 for a stationary initial state")
        return self

    @property
    def sigma_z(self) -> float:
        return self.noise.std

    @property
    def x0_variance(self) -> float:
        """sigma_0^2 of the uncontrolled plant."""
        if self.stationary_init:
            return self.noise.variance / (1.0 - self.gain_a**2)
        return self.init_variance
