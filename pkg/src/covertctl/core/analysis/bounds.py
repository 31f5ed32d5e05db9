"""Covertness and detectability limits on gains, windows and sample counts."""

from __future__ import annotations

import math

from scipy import special

from covertctl.exceptions import DomainError, UnitGainError

from covertctl.core.analysis.divergence import error_sum_lower_bound
from covertctl.core.analysis.matrices import gain_change_kl, gain_change_window
from covertctl.core.analysis.reports import BoundDirection, BoundReport
from covertctl.core.ar1 import NoiseModel
from covertctl.core.controllers import OneBit, one_bit_energy_bounds, one_bit_fixed_point
from covertctl.core.detectors import (
    InnovationEnergyDesign,
    innovation_energy_design,
    magnitude_design,
    q_inverse,
)
from covertctl.core.logging import get_logger

LOG_SOURCE = "analysis"


def _require_positive(value: float, name: str) -> None:
    if value <= 0.0:
        raise DomainError(f"{name}={value!r} must be positive", precondition=f"{name} > 0")


def covert_gain_bound(a: float, epsilon: float) -> float:
    """|b| < sqrt(1 - (1 - a^2) e^{-4 eps^2}) keeps a gain change eps-covert."""
    if not 0.0 < abs(a) < 1.0:
        raise UnitGainError(a, "0 < |a| < 1")
    _require_positive(epsilon, "epsilon")
    return math.sqrt(1.0 - (1.0 - a * a) * math.exp(-4.0 * epsilon**2))


def reset_covert_bound(epsilon: float) -> float:
    """|a| <= sqrt(1 - e^{-4 eps^2}) keeps a single stationary reset eps-covert."""
    _require_positive(epsilon, "epsilon")
    return math.sqrt(1.0 - math.exp(-4.0 * epsilon**2))


def reset_detect_gain_bound(delta: float) -> float:
    """Smallest |a| at which the chi-square reset test reaches alpha + beta <= delta."""
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta={delta!r} is not in (0, 1)", precondition="0 < delta < 1")
    p = q_inverse(delta / 4.0) ** 2
    q = q_inverse((2.0 - delta) / 4.0) ** 2
    return math.sqrt(max(0.0, (p - q) / (p + q)))


def gain_change_error_bounds(a: float, b: float, n: int) -> tuple[BoundReport, BoundReport]:
    """Lower bounds on alpha + beta for a gain change, tight and relaxed.

    tight: 1 - sqrt(KL / 2) with the full KL.
    relaxed: 1 - 0.5 sqrt(log((1-a^2)/(1-b^2))), which drops the trace term
    and is only claimed inside the window n < 2b/(b-a).
    """
    kl = gain_change_kl(a, b, n)
    inputs = {"a": a, "b": b, "n": float(n)}
    window = gain_change_window(a, b)
    if a < 0.0 or b < 0.0:
        get_logger().warning(
            "Negative gains: the window n < 2b/(b-a) is vacuous", source=LOG_SOURCE, **inputs
        )
    elif n >= window:
        get_logger().warning(
            f"n={n} is outside the window n < 2b/(b-a) = {window:.6g}; "
            "the relaxed bound is reported but not claimed",
            source=LOG_SOURCE,
            **inputs,
        )
    tight = BoundReport(
        name="gain_change_tight",
        value=error_sum_lower_bound(kl),
        inputs=inputs,
        direction=BoundDirection.LOWER,
    )
    relaxed = BoundReport(
        name="gain_change_relaxed",
        value=1.0 - 0.5 * math.sqrt(math.log((1.0 - a * a) / (1.0 - b * b))),
        inputs=inputs,
        direction=BoundDirection.LOWER,
    )
    return tight, relaxed


def stabilized_moment_bound(b: float, sigma_z: float, gamma: float) -> float:
    """sup_n E|X_n|^gamma for the Gaussian loop with gain b started at X_0 = 0.

    (sigma_z^2/(1-b^2))^{gamma/2} 2^{gamma/2} Gamma((gamma+1)/2) / sqrt(pi).
    """
    if abs(b) >= 1.0:
        raise UnitGainError(b, "|b| < 1 for a stabilized loop")
    _require_positive(gamma, "gamma")
    variance = sigma_z**2 / (1.0 - b * b)
    absolute_moment = 2.0 ** (gamma / 2.0) * special.gamma((gamma + 1.0) / 2.0) / math.sqrt(math.pi)
    return float(variance ** (gamma / 2.0) * absolute_moment)


def one_bit_steady_energy(a: float, bound_b: float) -> float:
    """Steady-state control energy of the one-bit controller, (aB/(2-a))^2."""
    if not 0.0 < a < 2.0:
        raise DomainError(f"one-bit energy needs 0 < a < 2, got a={a!r}", precondition="0 < a < 2")
    spec = OneBit(c1=one_bit_fixed_point(bound_b, a), bound_b=bound_b)
    return one_bit_energy_bounds(spec, a).steady_state


def one_bit_k0(delta: float, a: float, bound_b: float, noise: NoiseModel) -> InnovationEnergyDesign:
    """Innovation-energy design against the one-bit controller at steady-state energy."""
    return innovation_energy_design(delta, noise, one_bit_steady_energy(a, bound_b))


def covertness_target(epsilon: float) -> BoundReport:
    """alpha + beta >= 1 - eps."""
    return BoundReport(
        name="covertness",
        value=1.0 - epsilon,
        inputs={"epsilon": epsilon},
        direction=BoundDirection.LOWER,
    )


def detection_target(delta: float) -> BoundReport:
    """alpha + beta <= delta."""
    return BoundReport(
        name="detection",
        value=delta,
        inputs={"delta": delta},
        direction=BoundDirection.UPPER,
    )


def covert_gain_report(a: float, epsilon: float) -> BoundReport:
    return BoundReport(
        name="covert_gain",
        value=covert_gain_bound(a, epsilon),
        inputs={"a": a, "epsilon": epsilon},
        direction=BoundDirection.UPPER,
    )


def reset_covert_report(epsilon: float) -> BoundReport:
    return BoundReport(
        name="reset_covert",
        value=reset_covert_bound(epsilon),
        inputs={"epsilon": epsilon},
        direction=BoundDirection.UPPER,
    )


def reset_detect_report(delta: float) -> BoundReport:
    return BoundReport(
        name="reset_detect",
        value=reset_detect_gain_bound(delta),
        inputs={"delta": delta},
        direction=BoundDirection.LOWER,
    )


def k0_reports(delta: float, noise: NoiseModel, e_u: float) -> list[BoundReport]:
    design = innovation_energy_design(delta, noise, e_u)
    inputs = {"delta": delta, "e_u": e_u, "sigma_z2": noise.variance, "m4": noise.fourth_moment}
    return [
        BoundReport(
            name="k0", value=float(design.k0), inputs=inputs, direction=BoundDirection.LOWER
        ),
        BoundReport(name="t", value=design.t, inputs=inputs, direction=BoundDirection.UPPER),
    ]


def n0_reports(c: float, gamma: float, delta: float, a: float, sigma_z: float) -> list[BoundReport]:
    design = magnitude_design(c, gamma, delta, a, sigma_z)
    inputs = {"c": c, "gamma": gamma, "delta": delta, "a": a, "sigma_z": sigma_z}
    return [
        BoundReport(name="m", value=design.m, inputs=inputs, direction=BoundDirection.LOWER),
        BoundReport(
            name="n0", value=float(design.n0), inputs=inputs, direction=BoundDirection.LOWER
        ),
    ]
