"""Gaussian tail function Q and its inverse."""

from __future__ import annotations

import math

from scipy import special

from covertctl.exceptions import DomainError


def q_function(x: float) -> float:
    """Q(x) = P{N(0,1) > x} = erfc(x / sqrt 2) / 2."""
    return float(0.5 * special.erfc(x / math.sqrt(2.0)))


def q_inverse(p: float) -> float:
    """Q^{-1}(p) = -Phi^{-1}(p) for p in (0, 1)."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"Q^-1 is undefined at p={p!r}", precondition="0 < p < 1")
    return float(-special.ndtri(p))
