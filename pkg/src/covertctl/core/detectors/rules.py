"""Decision rules.

Each rule maps observed states to a Decision; reject_null means Willie
declares the plant controlled. Boundary conventions follow each test's
rejection event: magnitude rejects on |x| <= m, innovation energy on
E_W >= sigma_Z^2 + t, the reset tests and the LRT on strict excess.

detector_statistics and decide_batch evaluate a DetectorSpec on a whole
batch of trials (one row per trial); apply_detector is the batch of one.
"""

from __future__ import annotations

import numpy as np

from covertctl.exceptions import ValidationError
from covertctl.types import BoolArray, FloatArray, RealOrArray

from covertctl.core.ar1 import Trajectory
from covertctl.core.detectors.specs import (
    Decision,
    DetectorSpec,
    GaussianLRT,
    InnovationEnergy,
    Magnitude,
    ResetChiSquare,
    ResetQuadratic,
    required_horizon,
)


def _innovation_energies(windows: FloatArray, a: float) -> FloatArray:
    innovations = windows[:, 1:] - a * windows[:, :-1]
    return np.mean(innovations * innovations, axis=1)


def _chi_square(x_tau: RealOrArray, x_tau1: RealOrArray, a: float, sigma_z: float) -> RealOrArray:
    return (x_tau1 - a * x_tau) ** 2 / sigma_z**2


def _reset_quadratic(
    x_tau: RealOrArray, x_tau1: RealOrArray, a: float, sigma_z: float
) -> RealOrArray:
    return ((x_tau1 - a * x_tau) ** 2 - (1.0 - a * a) * x_tau1**2) / sigma_z**2


def magnitude_decide(x_n0: float, m: float) -> Decision:
    statistic = abs(x_n0)
    return Decision(reject_null=statistic <= m, statistic=statistic, threshold=m)


def innovation_energy(states: FloatArray, a: float) -> float:
    """Mean of (x_n - a x_{n-1})^2 over consecutive pairs."""
    values = np.asarray(states, dtype=np.float64)
    if values.ndim != 1 or values.size < 2:
        raise ValidationError(f"innovation energy needs at least 2 states, got {values.size}")
    return float(_innovation_energies(values[None, :], a)[0])


def innovation_energy_decide(states: FloatArray, a: float, sigma_z: float, t: float) -> Decision:
    statistic = innovation_energy(states, a)
    threshold = sigma_z**2 + t
    return Decision(reject_null=statistic >= threshold, statistic=statistic, threshold=threshold)


def reset_chi_square_decide(
    x_tau: float, x_tau1: float, a: float, sigma_z: float, t: float
) -> Decision:
    statistic = float(_chi_square(x_tau, x_tau1, a, sigma_z))
    threshold = t * t
    return Decision(reject_null=statistic > threshold, statistic=statistic, threshold=threshold)


def _reset_pair(states: FloatArray, tau: int) -> tuple[float, float]:
    values = np.asarray(states, dtype=np.float64)
    if not 1 <= tau < values.size:
        raise ValidationError(f"reset step tau={tau} needs 1 <= tau < {values.size}")
    return float(values[tau - 1]), float(values[tau])


def reset_quadratic_statistic(states: FloatArray, a: float, sigma_z: float, tau: int) -> float:
    """T = [(x_{tau+1} - a x_tau)^2 - (1 - a^2) x_{tau+1}^2] / sigma_Z^2, tau 1-based."""
    x_tau, x_tau1 = _reset_pair(states, tau)
    return float(_reset_quadratic(x_tau, x_tau1, a, sigma_z))


def reset_quadratic_decide(
    states: FloatArray, a: float, sigma_z: float, tau: int, t_prime: float
) -> Decision:
    statistic = reset_quadratic_statistic(states, a, sigma_z, tau)
    return Decision(reject_null=statistic > t_prime, statistic=statistic, threshold=t_prime)


def gaussian_lrt_statistic(states: FloatArray, spec: GaussianLRT) -> float:
    """x^T cov0^{-1} x - x^T cov1^{-1} x + log(|cov0| / |cov1|)."""
    x = np.asarray(states, dtype=np.float64)
    return spec.cov0.quadratic_form(x) - spec.cov1.quadratic_form(x) + spec.logdet_ratio


def gaussian_lrt_decide(states: FloatArray, spec: GaussianLRT) -> Decision:
    statistic = gaussian_lrt_statistic(states, spec)
    return Decision(
        reject_null=statistic > spec.log_threshold,
        statistic=statistic,
        threshold=spec.log_threshold,
    )


def detector_threshold(spec: DetectorSpec, sigma_z: float) -> float:
    if isinstance(spec, Magnitude):
        return spec.m
    if isinstance(spec, InnovationEnergy):
        return sigma_z**2 + spec.t
    if isinstance(spec, ResetChiSquare):
        return spec.t * spec.t
    if isinstance(spec, ResetQuadratic):
        return spec.t_prime
    return spec.log_threshold


def _rejects(spec: DetectorSpec, statistic: RealOrArray, threshold: float) -> BoolArray:
    if isinstance(spec, Magnitude):
        return np.less_equal(statistic, threshold)
    if isinstance(spec, InnovationEnergy):
        return np.greater_equal(statistic, threshold)
    return np.greater(statistic, threshold)


def detector_statistics(
    spec: DetectorSpec, states: FloatArray, sigma_z: float, gain_a: float
) -> FloatArray:
    """The statistic of ``spec`` on every row of ``states`` (trials x n)."""
    matrix = np.asarray(states, dtype=np.float64)
    needed = required_horizon(spec)
    if matrix.ndim != 2 or matrix.shape[1] < needed:
        raise ValidationError(
            f"{spec.kind} detector needs {needed} states per trial, got shape {matrix.shape}"
        )

    if isinstance(spec, Magnitude):
        return np.abs(matrix[:, spec.n0 - 1])
    if isinstance(spec, InnovationEnergy):
        return _innovation_energies(matrix[:, matrix.shape[1] - (spec.k + 1) :], gain_a)
    if isinstance(spec, ResetChiSquare):
        return _chi_square(matrix[:, spec.tau - 1], matrix[:, spec.tau], gain_a, sigma_z)
    if isinstance(spec, ResetQuadratic):
        return _reset_quadratic(matrix[:, spec.tau - 1], matrix[:, spec.tau], gain_a, sigma_z)
    window = matrix[:, : spec.dim]
    return spec.cov0.quadratic_forms(window) - spec.cov1.quadratic_forms(window) + spec.logdet_ratio


def decide_batch(
    spec: DetectorSpec, states: FloatArray, sigma_z: float, gain_a: float
) -> BoolArray:
    """reject_null for every row of ``states``."""
    statistics = detector_statistics(spec, states, sigma_z, gain_a)
    return _rejects(spec, statistics, detector_threshold(spec, sigma_z))


def apply_detector(
    spec: DetectorSpec, trajectory: Trajectory, sigma_z: float, gain_a: float
) -> Decision:
    """Run ``spec`` on the states X_1..X_n of ``trajectory``."""
    states = trajectory.states
    needed = required_horizon(spec)
    if states.size < needed:
        raise ValidationError(
            f"{spec.kind} detector needs {needed} states, trajectory has {states.size}"
        )
    statistic = float(detector_statistics(spec, states[None, :], sigma_z, gain_a)[0])
    threshold = detector_threshold(spec, sigma_z)
    return Decision(
        reject_null=bool(_rejects(spec, statistic, threshold)),
        statistic=statistic,
        threshold=threshold,
    )
