"""Detector design: thresholds and sample counts that guarantee alpha + beta <= delta."""

from __future__ import annotations

import math
from dataclasses import dataclass

from covertctl.exceptions import DomainError, UnitGainError

from covertctl.core.ar1 import NoiseModel
from covertctl.core.detectors.qfunc import q_function, q_inverse


@dataclass(frozen=True, slots=True)
class MagnitudeDesign:
    m: float
    n0: int


@dataclass(frozen=True, slots=True)
class InnovationEnergyDesign:
    k0: int
    t: float


@dataclass(frozen=True, slots=True)
class ChiSquareDesign:
    """Threshold interval for the reset chi-square test.

    When infeasible the interval is empty and ``t`` is its lower end, which
    still keeps alpha <= delta/2.
    """

    t: float
    feasible: bool
    lower: float
    upper: float


def _require_probability(value: float, name: str) -> None:
    if not 0.0 < value < 1.0:
        raise DomainError(f"{name}={value!r} is not in (0, 1)", precondition=f"0 < {name} < 1")


def magnitude_design(
    c: float, gamma: float, delta: float, a: float, sigma_z: float
) -> MagnitudeDesign:
    """M = (2c/delta)^{1/gamma} and the smallest n0 with P{|X_n0| <= M | H0} <= delta/2."""
    if abs(a) <= 1.0:
        raise UnitGainError(a, "|a| > 1 for the magnitude test")
    _require_probability(delta, "delta")
    if c <= 0.0 or gamma <= 0.0:
        raise DomainError(
            f"moment bound c={c!r} and order gamma={gamma!r} must be positive",
            precondition="c > 0, gamma > 0",
        )
    m = (2.0 * c / delta) ** (1.0 / gamma)
    quantile = q_inverse((1.0 - delta / 2.0) / 2.0)
    ratio = m * math.sqrt(a * a - 1.0) / (sigma_z * quantile)
    n0 = max(1, math.ceil(math.log(ratio) / math.log(abs(a))))
    return MagnitudeDesign(m=m, n0=n0)


def magnitude_false_alarm(m: float, n0: int, a: float, sigma_z: float) -> float:
    """Exact alpha = 1 - 2Q(M sqrt(a^2-1) / (sigma_Z sqrt(a^{2 n0} - 1))) for X_0 = 0."""
    if abs(a) <= 1.0:
        raise UnitGainError(a, "|a| > 1 for the magnitude test")
    spread = sigma_z * math.sqrt(a ** (2 * n0) - 1.0) / math.sqrt(a * a - 1.0)
    return 1.0 - 2.0 * q_function(m / spread)


def _innovation_moments(noise: NoiseModel) -> tuple[float, float]:
    variance = noise.variance
    excess = noise.fourth_moment - variance**2
    if variance <= 0.0 or excess <= 0.0:
        raise DomainError(
            "Innovation-energy design needs non-degenerate noise",
            precondition="sigma_Z > 0 and m_Z(4) > sigma_Z^4",
        )
    return variance, excess


def innovation_energy_design(
    delta: float, noise: NoiseModel, e_u: float
) -> InnovationEnergyDesign:
    """K0 = (1/E_U^2)(sqrt((m4 - s^4 + 4 E_U s^2)/(delta/2)) + sqrt((m4 - s^4)/(delta/2)))^2."""
    _require_probability(delta, "delta")
    if e_u <= 0.0:
        raise DomainError(f"control energy E_U={e_u!r} must be positive", precondition="E_U > 0")
    variance, excess = _innovation_moments(noise)
    half_delta = delta / 2.0
    k0_real = (
        math.sqrt((excess + 4.0 * e_u * variance) / half_delta) + math.sqrt(excess / half_delta)
    ) ** 2 / e_u**2
    k0 = max(1, math.ceil(k0_real))
    t = math.sqrt(excess / (k0 * half_delta))
    return InnovationEnergyDesign(k0=k0, t=t)


def innovation_energy_chebyshev(
    k: int, t: float, noise: NoiseModel, e_u: float
) -> tuple[float, float]:
    """Chebyshev bounds (alpha, beta) of the innovation-energy test with k innovations."""
    variance, excess = _innovation_moments(noise)
    alpha_bound = min(1.0, excess / (k * t * t))
    if t >= e_u:
        return alpha_bound, 1.0
    beta_bound = min(1.0, (excess + 4.0 * e_u * variance) / (k * (e_u - t) ** 2))
    return alpha_bound, beta_bound


def reset_chi_square_rates(t: float, a: float) -> tuple[float, float]:
    """alpha = 2Q(t), beta = 1 - 2Q(t / sqrt((1+a^2)/(1-a^2)))."""
    if abs(a) >= 1.0:
        raise UnitGainError(a, "|a| < 1 for the reset chi-square test")
    spread = math.sqrt((1.0 + a * a) / (1.0 - a * a))
    return 2.0 * q_function(t), 1.0 - 2.0 * q_function(t / spread)


def reset_chi_square_design(delta: float, a: float) -> ChiSquareDesign:
    """Q^{-1}(delta/4) <= t <= sqrt((1+a^2)/(1-a^2)) Q^{-1}((2-delta)/4); t is the midpoint."""
    _require_probability(delta, "delta")
    if abs(a) >= 1.0:
        raise UnitGainError(a, "|a| < 1 for the reset chi-square test")
    lower = q_inverse(delta / 4.0)
    upper = math.sqrt((1.0 + a * a) / (1.0 - a * a)) * q_inverse((2.0 - delta) / 4.0)
    if lower <= upper:
        return ChiSquareDesign(t=0.5 * (lower + upper), feasible=True, lower=lower, upper=upper)
    return ChiSquareDesign(t=lower, feasible=False, lower=lower, upper=upper)
