"""Tests for NoiseModel and SystemParams."""

from __future__ import annotations

import math

import numpy as np
import pytest
from pydantic import ValidationError as PydanticValidationError

from covertctl.exceptions import DomainError, UnitGainError

from covertctl.core.ar1 import NoiseKind, NoiseModel, SystemParams


class TestNoiseModel:
    def test_gaussian_moments(self):
        noise = NoiseModel.gaussian(2.0)
        assert noise.variance == 4.0
        assert noise.fourth_moment == 48.0
        assert noise.support_bound is None

    def test_uniform_moments(self):
        noise = NoiseModel.uniform(1.5)
        assert noise.variance == pytest.approx(1.5**2 / 3.0)
        assert noise.fourth_moment == pytest.approx(1.5**4 / 5.0)
        assert noise.support_bound == 1.5

    def test_truncated_gaussian_moments_approach_gaussian_when_wide(self):
        wide = NoiseModel.truncated_gaussian(1.0, 8.0)
        assert wide.variance == pytest.approx(1.0, rel=1e-8)
        assert wide.fourth_moment == pytest.approx(3.0, rel=1e-8)
        narrow = NoiseModel.truncated_gaussian(1.0, 1.0)
        assert narrow.variance < 1.0 / 3.0 + 1e-3
        assert narrow.variance < 1.0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"kind": "gaussian"},
            {"kind": "gaussian", "sigma_z": 1.0, "bound_b": 1.0},
            {"kind": "uniform", "sigma_z": 1.0, "bound_b": 1.0},
            {"kind": "uniform"},
            {"kind": "truncated_gaussian", "sigma_z": 1.0},
        ],
    )
    def test_field_combinations_are_checked(self, kwargs):
        with pytest.raises(DomainError):
            NoiseModel(**kwargs)

    def test_negative_scale_rejected_by_schema(self):
        with pytest.raises(PydanticValidationError):
            NoiseModel(kind=NoiseKind.GAUSSIAN, sigma_z=-1.0)

    def test_uniform_draws_stay_in_support(self):
        u = np.linspace(0.0, 1.0, 1001)[:-1]
        draws = NoiseModel.uniform(2.0).sample_from_uniform(u)
        assert np.all(np.abs(draws) <= 2.0)
        assert draws[0] == pytest.approx(-2.0)

    def test_truncated_draws_stay_in_support(self):
        u = np.linspace(0.0, 1.0, 1001)[:-1]
        draws = NoiseModel.truncated_gaussian(1.0, 0.5).sample_from_uniform(u)
        assert np.all(np.abs(draws) <= 0.5)

    def test_gaussian_median_is_zero(self):
        assert NoiseModel.gaussian(3.0).sample_from_uniform(np.array([0.5]))[0] == 0.0

    def test_model_is_frozen(self):
        noise = NoiseModel.gaussian(1.0)
        with pytest.raises(PydanticValidationError):
            noise.sigma_z = 2.0  # type: ignore[misc]


class TestSystemParams:
    def test_stationary_init_variance(self):
        params = SystemParams(gain_a=0.5, noise=NoiseModel.gaussian(1.0), stationary_init=True)
        assert params.x0_variance == pytest.approx(4.0 / 3.0, rel=1e-15)

    def test_explicit_init_variance(self):
        params = SystemParams(gain_a=1.5, noise=NoiseModel.gaussian(1.0), init_variance=0.2)
        assert params.x0_variance == 0.2
        assert params.sigma_z == 1.0

    @pytest.mark.parametrize("gain", [1.0, -1.0, 1.5])
    def test_stationary_init_needs_stable_gain(self, gain):
        with pytest.raises(UnitGainError):
            SystemParams(gain_a=gain, noise=NoiseModel.gaussian(1.0), stationary_init=True)

    def test_gain_must_be_finite(self):
        with pytest.raises(DomainError):
            SystemParams(gain_a=math.inf, noise=NoiseModel.gaussian(1.0))

    def test_negative_init_variance_rejected(self):
        with pytest.raises(PydanticValidationError):
            SystemParams(gain_a=0.5, noise=NoiseModel.gaussian(1.0), init_variance=-1.0)

    def test_parses_from_json_document(self):
        params = SystemParams.model_validate(
            {"gain_a": 0.9, "noise": {"kind": "uniform", "bound_b": 1.0}}
        )
        assert params.noise.kind is NoiseKind.UNIFORM
        assert params.sigma_z == pytest.approx(math.sqrt(1.0 / 3.0))
