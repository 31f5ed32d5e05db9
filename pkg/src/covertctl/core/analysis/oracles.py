"""Dense linear-algebra oracles and the closed-form-versus-oracle suites.

The oracles build matrices explicitly and factor them with Cholesky; the
suites compare them with the closed forms over a parameter grid.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from covertctl.configuration.defaults import DEFAULT_SETTINGS
from covertctl.configuration.experiment_config import OracleGrid
from covertctl.types import FloatArray

from covertctl.core.analysis.divergence import gaussian_kl
from covertctl.core.analysis.matrices import (
    gain_change_kl,
    reset_kl,
    stationary_inverse,
    stationary_logdet,
    trace_ratio_ss,
)
from covertctl.core.ar1 import (
    CovMatrix,
    NoiseModel,
    SystemParams,
    reset_covariance,
    state_covariance,
    stationary_covariance,
)
from covertctl.core.logging import get_logger

LOG_SOURCE = "oracles"
RESET_ORACLE_MAX_DIM = 50
KL_ORACLE_MAX_DIM = 30


class OracleName(StrEnum):
    COVARIANCE = "covariance"
    TRACE = "trace"
    LOGDET = "logdet"
    INVERSE = "inverse"
    KL = "kl"


@dataclass(frozen=True, slots=True)
class OracleOutcome:
    """Result of one oracle run.

    max_error is the absolute difference, divided by the largest dense entry when that
    exceeds 1.
    """

    oracle: OracleName
    max_error: float
    tolerance: float
    cases: int

    @property
    def passed(self) -> bool:
        return self.max_error < self.tolerance


def ar1_factor_matrices(a: float, n: int) -> tuple[FloatArray, FloatArray]:
    """A with A_ij = a^{i-j} for i >= j (zero above), and a~ with a~_i = a^i, 1-based.

    X^(n) = A Z^(n) + a~ X_0 for the uncontrolled plant.
    """
    index = np.arange(1, n + 1)
    lag = index[:, None] - index[None, :]
    factor = np.where(lag >= 0, np.power(a, np.maximum(lag, 0)), 0.0)
    return factor, np.power(a, index)


def dense_state_covariance(params: SystemParams, n: int) -> CovMatrix:
    """sigma_Z^2 A A^T + sigma_0^2 a~ a~^T."""
    factor, initial = ar1_factor_matrices(params.gain_a, n)
    entries = params.noise.variance * factor @ factor.T
    entries = entries + params.x0_variance * np.outer(initial, initial)
    return CovMatrix(0.5 * (entries + entries.T), label="dense state covariance")


def dense_inverse(cov: CovMatrix) -> FloatArray:
    return cov.solve(np.eye(cov.dim))


def dense_inverse_trace(cov1: CovMatrix, cov0: CovMatrix) -> float:
    """tr(cov1^{-1} cov0) with an explicit inverse."""
    return float(np.trace(dense_inverse(cov1) @ cov0.entries))


def cholesky_logdet(cov: CovMatrix) -> float:
    return cov.logdet()


def _scaled_error(closed: FloatArray | float, dense: FloatArray | float) -> float:
    """Max absolute difference, relative once entries exceed 1 in magnitude."""
    closed_arr = np.asarray(closed, dtype=np.float64)
    dense_arr = np.asarray(dense, dtype=np.float64)
    scale = max(1.0, float(np.max(np.abs(dense_arr))))
    return float(np.max(np.abs(closed_arr - dense_arr))) / scale


def _stable(grid: OracleGrid) -> list[float]:
    return [a for a in grid.gains if abs(a) < 1.0]


def _covariance_cases(grid: OracleGrid) -> Iterator[float]:
    noise = NoiseModel.gaussian(grid.sigma_z)
    for a in [*grid.gains, *grid.unstable_gains]:
        if abs(a) == 1.0:
            continue
        systems = [
            SystemParams(gain_a=a, noise=noise, init_variance=v) for v in grid.init_variances
        ]
        if abs(a) < 1.0:
            systems.append(SystemParams(gain_a=a, noise=noise, stationary_init=True))
        dims = grid.dimensions if abs(a) < 1.0 else [n for n in grid.dimensions if n <= 50]
        for system in systems:
            for n in dims:
                closed = state_covariance(system, n).entries
                yield _scaled_error(closed, dense_state_covariance(system, n).entries)


def _trace_cases(grid: OracleGrid) -> Iterator[float]:
    gains = _stable(grid)
    for a in gains:
        for b in gains:
            for n in grid.dimensions:
                cov0 = stationary_covariance(a, grid.sigma_z, n)
                cov1 = stationary_covariance(b, grid.sigma_z, n)
                yield _scaled_error(trace_ratio_ss(a, b, n), dense_inverse_trace(cov1, cov0))


def _logdet_cases(grid: OracleGrid) -> Iterator[float]:
    for a in _stable(grid):
        target_ratio = math.log(1.0 / (1.0 - a * a))
        for n in grid.dimensions:
            stationary = stationary_covariance(a, grid.sigma_z, n)
            closed = stationary_logdet(a, grid.sigma_z, n)
            yield _scaled_error(closed, cholesky_logdet(stationary))
            if n > RESET_ORACLE_MAX_DIM:
                continue
            for tau in range(1, n):
                reset = reset_covariance(a, grid.sigma_z, n, tau)
                ratio = cholesky_logdet(reset) - cholesky_logdet(stationary)
                yield _scaled_error(target_ratio, ratio)


def _inverse_cases(grid: OracleGrid) -> Iterator[float]:
    for a in _stable(grid):
        for n in grid.dimensions:
            inverse = stationary_inverse(a, grid.sigma_z, n).entries
            product = inverse @ stationary_covariance(a, grid.sigma_z, n).entries
            yield _scaled_error(product, np.eye(n))


def _kl_cases(grid: OracleGrid) -> Iterator[float]:
    gains = _stable(grid)
    for a in gains:
        for n in grid.dimensions:
            if n > KL_ORACLE_MAX_DIM:
                continue
            stationary = stationary_covariance(a, grid.sigma_z, n)
            zero = np.zeros(n)
            for tau in range(1, n):
                reset = reset_covariance(a, grid.sigma_z, n, tau)
                yield _scaled_error(reset_kl(a), gaussian_kl(zero, stationary, zero, reset))
            for b in gains:
                other = stationary_covariance(b, grid.sigma_z, n)
                dense = gaussian_kl(zero, stationary, zero, other)
                yield _scaled_error(gain_change_kl(a, b, n), dense)


_SUITES: dict[OracleName, Callable[[OracleGrid], Iterator[float]]] = {
    OracleName.COVARIANCE: _covariance_cases,
    OracleName.TRACE: _trace_cases,
    OracleName.LOGDET: _logdet_cases,
    OracleName.INVERSE: _inverse_cases,
    OracleName.KL: _kl_cases,
}


def run_oracle(oracle: OracleName, grid: OracleGrid) -> OracleOutcome:
    """Largest closed-form-versus-dense discrepancy over ``grid``."""
    max_error = 0.0
    cases = 0
    for error in _SUITES[oracle](grid):
        max_error = max(max_error, error)
        cases += 1
    tolerance = (
        DEFAULT_SETTINGS["inverse_tolerance"]
        if oracle is OracleName.INVERSE
        else DEFAULT_SETTINGS["oracle_tolerance"]
    )
    outcome = OracleOutcome(oracle=oracle, max_error=max_error, tolerance=tolerance, cases=cases)
    get_logger().info(
        f"Oracle {oracle.value}: {cases} cases, max scaled error {max_error:.3e}",
        source=LOG_SOURCE,
        passed=outcome.passed,
    )
    return outcome
