"""Closed-form energy analysis of the one-bit controller."""

from __future__ import annotations

from dataclasses import dataclass

from covertctl.exceptions import DomainError

from covertctl.core.controllers.specs import OneBit


@dataclass(frozen=True, slots=True)
class EnergyBounds:
    """Limits on the time-averaged control energy (1/n) sum U_k^2."""

    lower: float
    upper: float
    steady_state: float


def one_bit_energy_bounds(spec: OneBit, a: float) -> EnergyBounds:
    """(aB/(2-a))^2 <= E_U <= ((a/2) C_1)^2; steady state sits at the lower limit."""
    if a == 2.0:
        raise DomainError("One-bit energy is undefined at a = 2", precondition="a != 2")
    lower = (a * spec.bound_b / (2.0 - a)) ** 2
    upper = (a / 2.0 * spec.c1) ** 2
    return EnergyBounds(lower=lower, upper=upper, steady_state=lower)
