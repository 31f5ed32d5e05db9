"""Monte Carlo runs at acceptance scale against the closed-form results.

Slow: run with ``pytest -m slow``.
"""

from __future__ import annotations

import math
from typing import Any

import pytest

from covertctl.core.analysis import (
    covert_gain_bound,
    covertness_target,
    detection_target,
    error_sum_lower_bound,
    gain_change_kl,
    gain_change_window,
    gaussian_total_variation_1d,
    one_bit_k0,
    reset_covert_bound,
    stabilized_moment_bound,
)
from covertctl.core.ar1 import NoiseModel
from covertctl.core.detectors import (
    GaussianLRT,
    magnitude_design,
    reset_chi_square_design,
    reset_chi_square_rates,
)
from covertctl.core.montecarlo import (
    ErrorRates,
    ExperimentConfig,
    Verdict,
    estimate_error_rates,
    verify_bound,
)

pytestmark = pytest.mark.slow

TRIALS = 100_000
# Closed-form rate checks and the gain-change covertness check run at full scale
FULL_TRIALS = 1_000_000
GAUSSIAN: dict[str, Any] = {"kind": "gaussian", "sigma_z": 1.0}


def _stationary_system(a: float) -> dict[str, Any]:
    return {"gain_a": a, "noise": GAUSSIAN, "stationary_init": True}


def _run(document: dict[str, Any], trials: int = TRIALS) -> ErrorRates:
    cfg = ExperimentConfig.model_validate({"trials": trials, "master_seed": 2024, **document})
    return estimate_error_rates(cfg)


def _se(p: float, trials: int = TRIALS) -> float:
    return math.sqrt(p * (1.0 - p) / trials)


def test_chi_square_false_alarm_rate():
    rates = _run(
        {
            "system": _stationary_system(0.9),
            "controller": {"kind": "reset_once", "tau": 3},
            "detector": {"kind": "reset_chi_square", "t": 2.0, "tau": 3},
            "horizon_n": 6,
        }
    )
    alpha, _ = reset_chi_square_rates(2.0, 0.9)
    assert alpha == pytest.approx(0.0455, abs=1e-4)
    assert abs(rates.alpha_hat - alpha) <= 3.0 * _se(alpha)


@pytest.mark.parametrize("a", [0.3, 0.6, 0.9])
@pytest.mark.parametrize("t", [1.0, 2.0, 3.0])
def test_chi_square_rates_match_closed_forms(a: float, t: float):
    rates = _run(
        {
            "system": _stationary_system(a),
            "controller": {"kind": "reset_once", "tau": 2},
            "detector": {"kind": "reset_chi_square", "t": t, "tau": 2},
            "horizon_n": 4,
        },
        trials=FULL_TRIALS,
    )
    alpha, beta = reset_chi_square_rates(t, a)
    assert abs(rates.alpha_hat - alpha) <= 3.0 * _se(alpha, FULL_TRIALS)
    assert abs(rates.beta_hat - beta) <= 3.0 * _se(beta, FULL_TRIALS)


def test_designed_chi_square_detector_meets_delta():
    design = reset_chi_square_design(0.99, 0.5)
    assert design.feasible
    rates = _run(
        {
            "system": _stationary_system(0.5),
            "controller": {"kind": "reset_once", "tau": 3},
            "detector": {"kind": "reset_chi_square", "t": design.t, "tau": 3},
            "horizon_n": 5,
        }
    )
    assert verify_bound(rates, detection_target(0.99)) is not Verdict.VIOLATED


def test_gain_change_lrt_respects_error_sum_bound():
    a, b, n = 0.5, 0.6, 5
    detector = GaussianLRT.for_gain_change(a, b, 1.0, n)
    rates = _run(
        {
            "system": _stationary_system(a),
            "controller": {"kind": "gain_change", "b": b},
            "detector": detector.model_dump(mode="json"),
            "horizon_n": n,
        }
    )
    bound = error_sum_lower_bound(gain_change_kl(a, b, n))
    assert rates.error_sum >= bound - 3.0 * rates.error_sum_se


def test_gain_change_below_covert_gain_stays_covert():
    a, epsilon, n = 0.5, 0.2, 3
    b = 0.9 * covert_gain_bound(a, epsilon)
    assert n < gain_change_window(a, b)
    rates = _run(
        {
            "system": _stationary_system(a),
            "controller": {"kind": "gain_change", "b": b},
            "detector": GaussianLRT.for_gain_change(a, b, 1.0, n).model_dump(mode="json"),
            "horizon_n": n,
        },
        trials=FULL_TRIALS,
    )
    assert rates.error_sum >= 1.0 - epsilon - 3.0 * rates.error_sum_se


def test_scalar_lrt_error_sum_is_one_minus_total_variation():
    a, b = 0.5, 0.9
    rates = _run(
        {
            "system": _stationary_system(a),
            "controller": {"kind": "gain_change", "b": b},
            "detector": GaussianLRT.for_gain_change(a, b, 1.0, 1).model_dump(mode="json"),
            "horizon_n": 1,
        }
    )
    expected = 1.0 - gaussian_total_variation_1d(1.0 / (1.0 - a * a), 1.0 / (1.0 - b * b))
    assert abs(rates.error_sum - expected) <= 3.0 * rates.error_sum_se


def test_reset_at_covert_gain_stays_covert():
    epsilon = 0.3
    a = reset_covert_bound(epsilon)
    detector = GaussianLRT.for_reset(a, 1.0, 6, 3)
    rates = _run(
        {
            "system": _stationary_system(a),
            "controller": {"kind": "reset_once", "tau": 3},
            "detector": detector.model_dump(mode="json"),
            "horizon_n": 6,
        }
    )
    assert verify_bound(rates, covertness_target(epsilon)) is Verdict.CONSISTENT


def test_magnitude_detector_against_stabilizer():
    a, delta, gamma = 1.5, 0.1, 2.0
    c = stabilized_moment_bound(1.0 / a, 1.0, gamma)
    design = magnitude_design(c, gamma, delta, a, 1.0)
    rates = _run(
        {
            "system": {"gain_a": a, "noise": GAUSSIAN},
            "controller": {"kind": "stabilizer"},
            "detector": {"kind": "magnitude", "m": design.m, "n0": design.n0},
            "horizon_n": design.n0,
            "moment_bound_c": c,
            "gamma": gamma,
        }
    )
    assert rates.alpha_hat <= delta / 2.0 + 3.0 * _se(delta / 2.0)
    assert rates.beta_hat <= delta / 2.0 + 3.0 * _se(delta / 2.0)


def test_innovation_energy_detector_against_one_bit():
    a, bound_b, delta = 0.9, 1.0, 0.2
    noise = NoiseModel.uniform(bound_b)
    design = one_bit_k0(delta, a, bound_b, noise)
    rates = _run(
        {
            "system": {"gain_a": a, "noise": noise.model_dump(mode="json")},
            "controller": {
                "kind": "one_bit",
                "c1": bound_b / (1.0 - a / 2.0),
                "bound_b": bound_b,
            },
            "detector": {"kind": "innovation_energy", "k": design.k0, "t": design.t},
            "horizon_n": design.k0 + 1,
        }
    )
    assert rates.alpha_hat <= delta / 2.0 + 3.0 * _se(delta / 2.0)
    assert rates.beta_hat <= delta / 2.0 + 3.0 * _se(delta / 2.0)
