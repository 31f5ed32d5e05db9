"""Closed forms for stationary AR(1) covariances.

None of these form a dense inverse; covertctl.core.analysis.oracles holds the
dense counterparts they are checked against.
"""

from __future__ import annotations

import math

import numpy as np

from covertctl.exceptions import UnitGainError, ValidationError

from covertctl.core.analysis.divergence import clamp_kl
from covertctl.core.ar1 import CovMatrix


def _require_stable(a: float, name: str = "a") -> None:
    if abs(a) >= 1.0:
        raise UnitGainError(a, f"|{name}| < 1")


def _require_dim(n: int) -> None:
    if n < 1:
        raise ValidationError(f"dimension n={n} must be positive")


def trace_ratio_ss(a: float, b: float, n: int) -> float:
    """tr(S_b^{-1} S_a) = ((n-2) b^2 - 2(n-1) a b + n) / (1 - a^2).

    S_a is the stationary covariance with gain a, S_b the one with gain b.
    """
    _require_stable(a)
    _require_stable(b, "b")
    _require_dim(n)
    return ((n - 2) * b * b - 2 * (n - 1) * a * b + n) / (1.0 - a * a)


def gain_change_window(a: float, b: float) -> float:
    """2b / (b - a): trace_ratio_ss(a, b, n) < n exactly when n is below it."""
    return 2.0 * b / (b - a)


def stationary_inverse(a: float, sigma_z: float, n: int) -> CovMatrix:
    """Tridiagonal inverse of the stationary covariance.

    Diagonal 1 at both ends and 1 + a^2 inside, off-diagonal -a, all over
    sigma_z^2. A single sample has inverse variance (1 - a^2) / sigma_z^2.
    """
    _require_stable(a)
    _require_dim(n)
    if n == 1:
        return CovMatrix(np.array([[(1.0 - a * a) / sigma_z**2]]), label="stationary inverse")
    diagonal = np.full(n, 1.0 + a * a)
    diagonal[0] = diagonal[-1] = 1.0
    entries = np.diag(diagonal) - a * (np.eye(n, k=1) + np.eye(n, k=-1))
    return CovMatrix(entries / sigma_z**2, label="stationary inverse")


def stationary_logdet(a: float, sigma_z: float, n: int) -> float:
    """n log(sigma_z^2 / (1 - a^2)) + (n - 1) log(1 - a^2)."""
    _require_stable(a)
    _require_dim(n)
    one_minus = 1.0 - a * a
    return n * math.log(sigma_z**2 / one_minus) + (n - 1) * math.log(one_minus)


def reset_kl(a: float) -> float:
    """0.5 log(1 / (1 - a^2)), independent of the reset step and the horizon."""
    _require_stable(a)
    return 0.5 * math.log(1.0 / (1.0 - a * a))


def gain_change_kl(a: float, b: float, n: int) -> float:
    """KL between the stationary laws with gains a and b over n samples."""
    trace = trace_ratio_ss(a, b, n)
    value = 0.5 * (trace - n + math.log((1.0 - a * a) / (1.0 - b * b)))
    return clamp_kl(value, "gain-change KL")
