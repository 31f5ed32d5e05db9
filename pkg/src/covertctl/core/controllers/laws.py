"""Control laws.

Every law is a pure function of the previous state and fixed parameters.
Randomness (the reset draw) is passed in by the caller. States may be floats
or arrays of trials; the laws apply elementwise.
"""

from __future__ import annotations

import math

import numpy as np

from covertctl.exceptions import DomainError, UnitGainError
from covertctl.types import RealOrArray

from covertctl.core.controllers.specs import (
    ControllerSpec,
    GainChange,
    OneBit,
    Stabilizer,
)

ONE_BIT_GAIN_RTOL = 1e-12


def one_bit_fixed_point(bound_b: float, a: float) -> float:
    """B / (1 - a/2), the limit of C_n and the smallest admissible C_1."""
    if a == 2.0:
        raise DomainError("One-bit gain recursion is undefined at a = 2", precondition="a != 2")
    return bound_b / (1.0 - a / 2.0)


def one_bit_gain(n: int, c1: float, bound_b: float, a: float) -> float:
    """C_n = B/(1-a/2) + (a/2)^{n-1} (C_1 - B/(1-a/2))."""
    if n < 1:
        raise DomainError(f"One-bit gain index n={n} is not positive", precondition="n >= 1")
    fixed_point = one_bit_fixed_point(bound_b, a)
    if c1 < fixed_point - ONE_BIT_GAIN_RTOL * abs(fixed_point):
        raise DomainError(
            f"C1={c1!r} is below the one-bit lower limit {fixed_point!r}",
            precondition="C1 >= B / (1 - a/2)",
            suggested_fix=f"Use c1 >= {fixed_point!r}",
        )
    if n == 1:
        return c1
    return fixed_point + (a / 2.0) ** (n - 1) * (c1 - fixed_point)


def one_bit_control(x_prev: RealOrArray, n: int, spec: OneBit, a: float) -> RealOrArray:
    """(a/2) C_{n-1} sgn(x_prev), with sgn(0) = +1."""
    if n < 2:
        raise DomainError(
            f"One-bit control index n={n} has no previous gain C_(n-1)",
            precondition="n >= 2",
        )
    sign = np.where(np.asarray(x_prev) >= 0.0, 1.0, -1.0)
    return (a / 2.0) * one_bit_gain(n - 1, spec.c1, spec.bound_b, a) * sign


def threshold_control(x_prev: RealOrArray, d: float, a: float) -> RealOrArray:
    """a x_prev when |x_prev| >= d (boundary included), otherwise 0."""
    return np.where(np.abs(x_prev) >= d, a * np.asarray(x_prev), 0.0)[()]


def gain_change_control(x_prev: RealOrArray, a: float, b: float) -> RealOrArray:
    return (a - b) * x_prev


def reset_once_control(
    x_tau: RealOrArray, a: float, sigma_z: float, rng_draw: RealOrArray
) -> RealOrArray:
    """a x_tau - a x~ where x~ = rng_draw * sigma_z / sqrt(1 - a^2).

    The next state becomes a x~ + Z, a fresh stationary sample.
    """
    if abs(a) >= 1.0:
        raise UnitGainError(a, "|a| < 1 for a stationary reset")
    stationary_draw = rng_draw * sigma_z / math.sqrt(1.0 - a * a)
    return a * x_tau - a * stationary_draw


def stabilizer_gain(spec: Stabilizer, a: float) -> float:
    if spec.b is not None:
        return spec.b
    return 1.0 / a


def closed_loop_gain(spec: ControllerSpec, a: float) -> float:
    """Gain of the controlled loop when it is linear; the plant gain otherwise."""
    if isinstance(spec, GainChange):
        return spec.b
    if isinstance(spec, Stabilizer):
        return stabilizer_gain(spec, a)
    return a
