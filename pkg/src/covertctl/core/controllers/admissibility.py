"""Admissibility of a controller for a given plant.

Checks that couple a ControllerSpec to the plant gain and noise. Violations
raise DomainError subclasses; questionable but legal setups log a warning.
"""

from __future__ import annotations

from covertctl.exceptions import DomainError, UnitGainError

from covertctl.core.controllers.laws import one_bit_fixed_point, stabilizer_gain
from covertctl.core.controllers.specs import (
    ControllerSpec,
    GainChange,
    OneBit,
    ResetOnce,
    Stabilizer,
)
from covertctl.core.logging import get_logger

LOG_SOURCE = "controllers"


def _check_one_bit(spec: OneBit, a: float, noise_bound: float | None) -> None:
    if not 0.0 < a < 2.0:
        raise DomainError(
            f"One-bit controller needs 0 < a < 2, got a={a!r}",
            precondition="0 < a < 2",
            suggested_fix="C_n diverges for a >= 2 and oscillates for a <= 0",
        )
    fixed_point = one_bit_fixed_point(spec.bound_b, a)
    if spec.c1 < fixed_point * (1.0 - 1e-12):
        raise DomainError(
            f"One-bit C1={spec.c1!r} is below B/(1-a/2)={fixed_point!r}",
            precondition="C1 >= B / (1 - a/2)",
        )
    if noise_bound is None:
        get_logger().warning(
            "One-bit controller with unbounded Gaussian noise; |X_n| <= C_1 is not guaranteed",
            source=LOG_SOURCE,
        )
    elif noise_bound > spec.bound_b:
        raise DomainError(
            f"Noise support bound {noise_bound!r} exceeds the controller's B={spec.bound_b!r}",
            precondition="|Z_n| <= B",
        )


def _check_gain_change(spec: GainChange, a: float) -> None:
    b = spec.b
    if abs(a) >= 1.0:
        raise UnitGainError(a, "0 < |a| < 1 for a covert gain change")
    if not 0.0 < abs(a) < abs(b) < 1.0:
        raise DomainError(
            f"Gain change from a={a!r} to b={b!r} is not admissible",
            precondition="0 < |a| < |b| < 1",
        )
    if (a > 0.0) != (b > 0.0):
        raise DomainError(
            f"Gain change from a={a!r} to b={b!r} flips sign",
            precondition="sgn(a) = sgn(b)",
        )
    if a < 0.0:
        get_logger().warning(
            "Negative gains: the window n < 2b/(b-a) is vacuous for this configuration",
            source=LOG_SOURCE,
            a=a,
            b=b,
        )


def _check_reset_once(a: float, stationary_init: bool) -> None:
    if abs(a) >= 1.0:
        raise UnitGainError(a, "|a| < 1 for a stationary reset")
    if not stationary_init:
        raise DomainError(
            "Reset-once controller requires a stationary initial state",
            precondition="stationary_init = true",
        )


def _check_stabilizer(spec: Stabilizer, a: float) -> None:
    if abs(a) <= 1.0:
        raise UnitGainError(a, "|a| > 1 for a stabilizing controller")
    b = stabilizer_gain(spec, a)
    if abs(b) >= 1.0:
        raise DomainError(f"Stabilized gain b={b!r} is not stable", precondition="|b| < 1")


def check_admissible(
    spec: ControllerSpec,
    *,
    gain_a: float,
    noise_bound: float | None,
    stationary_init: bool,
) -> None:
    """Raise if ``spec`` cannot drive a plant with gain ``gain_a``.

    ``noise_bound`` is the support bound of the noise, None for Gaussian noise.
    """
    if isinstance(spec, OneBit):
        _check_one_bit(spec, gain_a, noise_bound)
    elif isinstance(spec, GainChange):
        _check_gain_change(spec, gain_a)
    elif isinstance(spec, ResetOnce):
        _check_reset_once(gain_a, stationary_init)
    elif isinstance(spec, Stabilizer):
        _check_stabilizer(spec, gain_a)
