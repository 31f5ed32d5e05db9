"""Gaussian covariance matrices of the AR(1) plant in closed form."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import linalg

from covertctl.constants import SYMMETRY_RTOL
from covertctl.exceptions import (
    DomainError,
    NotPositiveDefiniteError,
    UnitGainError,
    ValidationError,
)
from covertctl.types import FloatArray

from covertctl.core.ar1.models import SystemParams


@dataclass(frozen=True, eq=False)
class CovMatrix:
    """Dense symmetric positive definite covariance, stored row-major."""

    entries: FloatArray
    label: str = field(default="covariance", compare=False)

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=np.float64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise ValidationError(
                f"{self.label} must be a non-empty square matrix, got shape {entries.shape}"
            )
        scale = max(float(np.max(np.abs(entries))), 1.0)
        if not np.allclose(entries, entries.T, rtol=0.0, atol=SYMMETRY_RTOL * scale):
            raise ValidationError(f"{self.label} is not symmetric")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: list[list[float]], label: str = "covariance") -> CovMatrix:
        return cls(np.asarray(rows, dtype=np.float64), label=label)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @cached_property
    def cholesky_factor(self) -> FloatArray:
        """Lower-triangular L with L L^T = entries."""
        try:
            return linalg.cholesky(self.entries, lower=True)
        except linalg.LinAlgError as err:
            raise NotPositiveDefiniteError(self.label, err) from err

    def is_positive_definite(self) -> bool:
        try:
            _ = self.cholesky_factor
        except NotPositiveDefiniteError:
            return False
        return True

    def logdet(self) -> float:
        return float(2.0 * np.sum(np.log(np.diag(self.cholesky_factor))))

    def solve(self, rhs: FloatArray) -> FloatArray:
        """Sigma^{-1} rhs through the Cholesky factor."""
        return linalg.cho_solve((self.cholesky_factor, True), rhs)

    def quadratic_form(self, x: FloatArray) -> float:
        """x^T Sigma^{-1} x."""
        vector = np.asarray(x, dtype=np.float64)
        if vector.shape != (self.dim,):
            raise ValidationError(
                f"vector of length {vector.shape} does not match {self.label} of dim {self.dim}"
            )
        whitened = linalg.solve_triangular(self.cholesky_factor, vector, lower=True)
        return float(whitened @ whitened)

    def quadratic_forms(self, rows: FloatArray) -> FloatArray:
        """x^T Sigma^{-1} x for every row x of ``rows``."""
        matrix = np.asarray(rows, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[1] != self.dim:
            raise ValidationError(
                f"rows of shape {matrix.shape} do not match {self.label} of dim {self.dim}"
            )
        whitened = linalg.solve_triangular(self.cholesky_factor, matrix.T, lower=True)
        return np.einsum("ij,ij->j", whitened, whitened)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        for row in self.entries:
            writer.writerow(repr(float(value)) for value in row)
        return buffer.getvalue()

    def to_rows(self) -> list[list[float]]:
        return [[float(value) for value in row] for row in self.entries]


def _require_not_unit(a: float) -> None:
    if abs(a) == 1.0:
        raise UnitGainError(a, "|a| != 1")


def _require_stable(a: float) -> None:
    if abs(a) >= 1.0:
        raise UnitGainError(a, "|a| < 1")


def _require_dim(n: int) -> None:
    if n < 1:
        raise ValidationError(f"dimension n={n} must be positive")


def state_covariance(params: SystemParams, n: int) -> CovMatrix:
    """[Sigma]_ij = s^2/(1-a^2) (a^|i-j| - a^(i+j)) + s0^2 a^(i+j), 1-based i, j."""
    a = params.gain_a
    _require_not_unit(a)
    _require_dim(n)
    index = np.arange(1, n + 1)
    lag = np.abs(index[:, None] - index[None, :])
    total = index[:, None] + index[None, :]
    power_total = np.power(a, total)
    stationary_scale = params.noise.variance / (1.0 - a * a)
    entries = stationary_scale * (np.power(a, lag) - power_total)
    entries = entries + params.x0_variance * power_total
    return CovMatrix(entries, label="state covariance")


def stationary_covariance(a: float, sigma_z: float, n: int) -> CovMatrix:
    """Toeplitz matrix with first row sigma_z^2/(1-a^2) a^k."""
    _require_stable(a)
    _require_dim(n)
    first_row = sigma_z**2 / (1.0 - a * a) * np.power(a, np.arange(n))
    return CovMatrix(linalg.toeplitz(first_row), label="stationary covariance")


def reset_covariance(a: float, sigma_z: float, n: int, tau: int) -> CovMatrix:
    """Block diagonal of stationary blocks of sizes tau and n - tau."""
    _require_stable(a)
    if not 1 <= tau < n:
        raise DomainError(
            f"Reset step tau={tau} is outside the horizon n={n}",
            precondition="1 <= tau < n",
        )
    before = stationary_covariance(a, sigma_z, tau).entries
    after = stationary_covariance(a, sigma_z, n - tau).entries
    return CovMatrix(linalg.block_diag(before, after), label="reset covariance")
