"""Gaussian KL divergence, total variation and error-sum bounds."""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate, linalg, stats

from covertctl.configuration.defaults import DEFAULT_SETTINGS
from covertctl.constants import PROBABILITY_SUM_TOL
from covertctl.exceptions import DomainError, ValidationError
from covertctl.types import FloatArray

from covertctl.core.ar1 import CovMatrix


def clamp_kl(value: float, what: str) -> float:
    tolerance = DEFAULT_SETTINGS["kl_clamp_tolerance"]
    if value < -tolerance:
        raise DomainError(
            f"{what} evaluated to a negative value {value!r}",
            precondition="KL divergence >= 0",
        )
    return max(value, 0.0)


def gaussian_kl(mu0: FloatArray, cov0: CovMatrix, mu1: FloatArray, cov1: CovMatrix) -> float:
    """D(N(mu0, cov0) || N(mu1, cov1)) in nats, through Cholesky factors only.

    0.5 (tr(S1^{-1} S0) + (mu1-mu0)^T S1^{-1} (mu1-mu0) - n + log(|S1| / |S0|))
    """
    n = cov0.dim
    mean0 = np.asarray(mu0, dtype=np.float64).reshape(-1)
    mean1 = np.asarray(mu1, dtype=np.float64).reshape(-1)
    if cov1.dim != n or mean0.shape != (n,) or mean1.shape != (n,):
        raise ValidationError(
            f"dimension mismatch: cov0 {n}, cov1 {cov1.dim}, mu0 {mean0.size}, mu1 {mean1.size}"
        )
    # tr(S1^{-1} S0) = ||L1^{-1} L0||_F^2
    whitened = linalg.solve_triangular(cov1.cholesky_factor, cov0.cholesky_factor, lower=True)
    trace_term = float(np.sum(whitened * whitened))
    mahalanobis = cov1.quadratic_form(mean1 - mean0)
    value = 0.5 * (trace_term + mahalanobis - n + cov1.logdet() - cov0.logdet())
    return clamp_kl(value, "Gaussian KL")


def error_sum_lower_bound(kl: float) -> float:
    """alpha + beta >= 1 - V_T >= 1 - sqrt(kl / 2), clamped at 0."""
    if kl < 0.0:
        raise DomainError(f"KL divergence {kl!r} is negative", precondition="kl >= 0")
    return max(0.0, 1.0 - math.sqrt(kl / 2.0))


def gaussian_total_variation_1d(var0: float, var1: float) -> float:
    """V_T(N(0, var0), N(0, var1)) = 0.5 * integral |f0 - f1| by quadrature."""
    if var0 <= 0.0 or var1 <= 0.0:
        raise DomainError("variances must be positive", precondition="var0 > 0, var1 > 0")
    if var0 == var1:
        return 0.0
    s0, s1 = math.sqrt(var0), math.sqrt(var1)
    # The densities cross at +-x_c; splitting there keeps quad on smooth pieces.
    crossing = math.sqrt(math.log(var1 / var0) * var0 * var1 / (var1 - var0))

    def gap(x: float) -> float:
        return abs(stats.norm.pdf(x, scale=s0) - stats.norm.pdf(x, scale=s1))

    inner, _ = integrate.quad(gap, 0.0, crossing, epsabs=1e-13)
    outer, _ = integrate.quad(gap, crossing, np.inf, epsabs=1e-13)
    return float(inner + outer)


def mixture_kl_upper_bound(kl_per_tau: FloatArray, p_tau: FloatArray) -> float:
    """E_{p_tau}[KL given tau], which bounds the KL against the tau-mixture."""
    kls = np.asarray(kl_per_tau, dtype=np.float64)
    weights = np.asarray(p_tau, dtype=np.float64)
    if kls.ndim != 1 or kls.shape != weights.shape or kls.size == 0:
        raise ValidationError(
            f"kl_per_tau ({kls.size}) and p_tau ({weights.size}) must be equal-length vectors"
        )
    if np.any(kls < 0.0) or np.any(weights < 0.0):
        raise ValidationError("KL values and probabilities must be nonnegative")
    if abs(float(np.sum(weights)) - 1.0) > PROBABILITY_SUM_TOL:
        raise ValidationError(
            f"p_tau sums to {float(np.sum(weights))!r}, not 1",
            suggested_fix="Normalize the probability vector",
        )
    return float(weights @ kls)


def mixture_kl_1d(var0: float, component_vars: FloatArray, weights: FloatArray) -> float:
    """D(N(0, var0) || sum_i w_i N(0, var_i)) by quadrature."""
    variances = np.asarray(component_vars, dtype=np.float64)
    probabilities = np.asarray(weights, dtype=np.float64)
    if variances.shape != probabilities.shape or variances.size == 0:
        raise ValidationError("component_vars and weights must be equal-length vectors")
    scales = np.sqrt(variances)
    s0 = math.sqrt(var0)

    def integrand(x: float) -> float:
        p = stats.norm.pdf(x, scale=s0)
        if p == 0.0:
            return 0.0
        q = float(probabilities @ stats.norm.pdf(x, scale=scales))
        return p * math.log(p / q)

    half, _ = integrate.quad(integrand, 0.0, np.inf, epsabs=1e-13, limit=200)
    return clamp_kl(2.0 * half, "mixture KL")
