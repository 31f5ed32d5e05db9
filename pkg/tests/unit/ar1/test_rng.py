"""Tests for keyed seeding and trial draws."""

from __future__ import annotations

import numpy as np
import pytest

from covertctl.exceptions import ValidationError

from covertctl.core.ar1 import (
    NoiseModel,
    batch_draws,
    batch_uniforms,
    stream_key,
    stream_seed,
    trial_draws,
)


def test_stream_seed_is_deterministic():
    assert stream_seed(42, 1, 7) == stream_seed(42, 1, 7)


def test_stream_keys_do_not_collide():
    seeds = {stream_seed(0, hypothesis, trial) for hypothesis in (0, 1) for trial in range(2000)}
    assert len(seeds) == 4000


def test_master_seed_changes_stream():
    assert stream_seed(0, 0, 0) != stream_seed(1, 0, 0)


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_seed_range_checked(seed):
    with pytest.raises(ValidationError):
        stream_seed(seed, 0)
    with pytest.raises(ValidationError):
        trial_draws(seed, 3, NoiseModel.gaussian(1.0))


def test_trial_draws_layout():
    draws = trial_draws(5, 4, NoiseModel.gaussian(1.0))
    assert draws.noise.shape == (4,)
    longer = trial_draws(5, 6, NoiseModel.gaussian(1.0))
    # The stream is shared: X_0 and the first noise values agree across horizons.
    assert draws.x0_std_normal == longer.x0_std_normal
    np.testing.assert_array_equal(draws.noise, longer.noise[:4])


def test_trial_draws_reproduce_bit_for_bit():
    first = trial_draws(123, 50, NoiseModel.uniform(1.0))
    second = trial_draws(123, 50, NoiseModel.uniform(1.0))
    np.testing.assert_array_equal(first.noise, second.noise)
    assert first.reset_normal == second.reset_normal


def test_gaussian_draws_have_unit_variance_in_bulk():
    draws = trial_draws(9, 200_000, NoiseModel.gaussian(1.0))
    assert abs(float(np.mean(draws.noise))) < 0.02
    assert abs(float(np.var(draws.noise)) - 1.0) < 0.02


class TestBatchDraws:
    def test_rows_do_not_depend_on_batch_boundaries(self):
        key = stream_key(7, 0)
        whole = batch_uniforms(key, 0, 10, 5)
        tail = batch_uniforms(key, 3, 7, 5)
        np.testing.assert_array_equal(whole[3:], tail)
        np.testing.assert_array_equal(whole[:1], batch_uniforms(key, 0, 1, 5))

    def test_shape_and_range(self):
        uniforms = batch_uniforms(stream_key(1, 1), 0, 64, 7)
        assert uniforms.shape == (64, 9)
        assert np.all(uniforms > 0.0)
        assert np.all(uniforms < 1.0)

    def test_hypothesis_streams_differ(self):
        null = batch_uniforms(stream_key(0, 0), 0, 4, 3)
        controlled = batch_uniforms(stream_key(0, 1), 0, 4, 3)
        assert not np.array_equal(null, controlled)

    def test_trials_get_distinct_rows(self):
        uniforms = batch_uniforms(stream_key(3, 0), 0, 1000, 2)
        assert len({tuple(row) for row in uniforms}) == 1000

    def test_layout_matches_trial_draws(self):
        noise = NoiseModel.uniform(2.0)
        draws = batch_draws(5, 1, 10, 4, 6, noise)
        uniforms = batch_uniforms(stream_key(5, 1), 10, 4, 6)
        assert draws.trials == 4
        assert draws.noise.shape == (4, 6)
        np.testing.assert_array_equal(draws.noise, 2.0 * (2.0 * uniforms[:, 1:7] - 1.0))

    def test_negative_range_rejected(self):
        with pytest.raises(ValidationError):
            batch_uniforms(stream_key(0, 0), -1, 3, 2)

    def test_master_seed_range_checked(self):
        with pytest.raises(ValidationError):
            stream_key(-1, 0)
