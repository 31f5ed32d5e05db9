"""Tests for Q, detector designs and the closed-form error rates."""

from __future__ import annotations

import math

import pytest

from covertctl.exceptions import DomainError, UnitGainError

from covertctl.core.ar1 import NoiseModel
from covertctl.core.analysis import one_bit_steady_energy, reset_detect_gain_bound
from covertctl.core.detectors import (
    innovation_energy_chebyshev,
    innovation_energy_design,
    magnitude_design,
    magnitude_false_alarm,
    q_function,
    q_inverse,
    reset_chi_square_design,
    reset_chi_square_rates,
)


class TestQFunction:
    @pytest.mark.parametrize(
        ("x", "expected"),
        [(0.0, 0.5), (1.959963984540054, 0.025), (-1.0, 0.8413447460685429)],
    )
    def test_values(self, x, expected):
        assert q_function(x) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("p", [1e-9, 0.025, 0.3, 0.5, 0.975])
    def test_inverse_round_trip(self, p):
        assert q_function(q_inverse(p)) == pytest.approx(p, rel=1e-12)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1])
    def test_inverse_domain(self, p):
        with pytest.raises(DomainError):
            q_inverse(p)


class TestMagnitudeDesign:
    def test_threshold_from_markov_bound(self):
        assert magnitude_design(1.0, 2.0, 0.5, 1.5, 1.0).m == pytest.approx(2.0)

    def test_reference_design(self):
        design = magnitude_design(1.0, 2.0, 0.1, 1.5, 1.0)
        assert design.m == pytest.approx(math.sqrt(20.0))
        assert design.n0 == 11

    def test_false_alarm_at_design_is_within_half_delta(self):
        design = magnitude_design(1.0, 2.0, 0.1, 1.5, 1.0)
        assert magnitude_false_alarm(design.m, design.n0, 1.5, 1.0) <= 0.05
        assert magnitude_false_alarm(design.m, design.n0 - 1, 1.5, 1.0) > 0.05

    def test_monotone_in_delta(self):
        loose = magnitude_design(1.0, 2.0, 0.99, 1.5, 1.0)
        tight = magnitude_design(1.0, 2.0, 0.01, 1.5, 1.0)
        assert loose.m < tight.m
        assert loose.n0 <= tight.n0

    def test_requires_unstable_plant(self):
        with pytest.raises(UnitGainError):
            magnitude_design(1.0, 2.0, 0.1, 0.9, 1.0)

    @pytest.mark.parametrize(("c", "gamma"), [(0.0, 2.0), (1.0, -1.0)])
    def test_requires_positive_moment(self, c, gamma):
        with pytest.raises(DomainError):
            magnitude_design(c, gamma, 0.1, 1.5, 1.0)


class TestInnovationEnergyDesign:
    def test_uniform_noise_unit_energy(self):
        design = innovation_energy_design(0.5, NoiseModel.uniform(1.0), 1.0)
        assert design.k0 == 9
        excess = 1.0 / 5.0 - 1.0 / 9.0
        assert design.t == pytest.approx(math.sqrt(excess / (9 * 0.25)))

    def test_one_bit_steady_state_energy(self):
        e_u = one_bit_steady_energy(0.9, 1.0)
        assert e_u == pytest.approx((0.9 / 1.1) ** 2)
        design = innovation_energy_design(0.2, NoiseModel.uniform(1.0), e_u)
        assert design.k0 == 38

    def test_large_energy_needs_one_sample(self):
        assert innovation_energy_design(0.5, NoiseModel.uniform(1.0), 1e9).k0 == 1

    def test_chebyshev_bounds_sum_below_delta_at_design(self):
        noise = NoiseModel.uniform(1.0)
        design = innovation_energy_design(0.2, noise, 0.5)
        alpha, beta = innovation_energy_chebyshev(design.k0, design.t, noise, 0.5)
        assert alpha + beta <= 0.2 + 1e-12

    def test_chebyshev_without_gap(self):
        alpha, beta = innovation_energy_chebyshev(10, 2.0, NoiseModel.gaussian(1.0), 1.0)
        assert beta == 1.0
        assert alpha == pytest.approx(2.0 / 40.0)

    def test_energy_must_be_positive(self):
        with pytest.raises(DomainError):
            innovation_energy_design(0.5, NoiseModel.uniform(1.0), 0.0)


class TestResetChiSquare:
    def test_rates(self):
        alpha, beta = reset_chi_square_rates(2.0, 0.5)
        assert alpha == pytest.approx(2.0 * q_function(2.0))
        assert alpha == pytest.approx(0.0455002638963584, rel=1e-9)
        spread = math.sqrt(1.25 / 0.75)
        assert beta == pytest.approx(1.0 - 2.0 * q_function(2.0 / spread))

    def test_small_gain_is_infeasible(self):
        design = reset_chi_square_design(0.1, 0.5)
        assert not design.feasible
        assert design.t == design.lower
        assert design.lower > design.upper

    def test_loose_delta_is_feasible(self):
        design = reset_chi_square_design(0.99, 0.5)
        assert design.feasible
        assert design.lower <= design.t <= design.upper
        alpha, beta = reset_chi_square_rates(design.t, 0.5)
        assert alpha + beta <= 0.99 + 1e-12

    @pytest.mark.parametrize("delta", [0.05, 0.1, 0.3, 0.6])
    def test_feasibility_switches_at_gain_bound(self, delta):
        bound = reset_detect_gain_bound(delta)
        assert reset_chi_square_design(delta, bound * (1.0 + 1e-6)).feasible
        assert not reset_chi_square_design(delta, bound * (1.0 - 1e-6)).feasible

    def test_unit_gain_rejected(self):
        with pytest.raises(UnitGainError):
            reset_chi_square_design(0.1, 1.0)
