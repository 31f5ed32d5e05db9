"""Tests for Trajectory and its file forms."""

from __future__ import annotations

import json

import numpy as np
import pytest

from covertctl.exceptions import ValidationError

from covertctl.core.ar1 import NoiseModel, SystemParams, Trajectory, simulate
from covertctl.core.controllers import Threshold


@pytest.fixture
def trajectory() -> Trajectory:
    params = SystemParams(gain_a=0.9, noise=NoiseModel.gaussian(1.0), init_variance=1.0)
    return simulate(params, Threshold(d=1.0), 25, 17)


def test_csv_round_trip_preserves_every_digit(trajectory: Trajectory) -> None:
    text = trajectory.to_csv()
    assert text.splitlines()[0] == "n,x,u"
    assert text.splitlines()[1].endswith(",0.0")
    parsed = Trajectory.from_csv(text)
    np.testing.assert_array_equal(parsed.states, trajectory.states)
    np.testing.assert_array_equal(parsed.controls, trajectory.controls)
    assert parsed.initial_state == trajectory.initial_state


def test_json_form_keeps_seed_and_crossings(trajectory: Trajectory) -> None:
    document = json.loads(json.dumps(trajectory.to_json()))
    restored = Trajectory.from_json(document)
    assert restored.identical_to(trajectory)
    assert restored.seed == 17


def test_path_prepends_initial_state(trajectory: Trajectory) -> None:
    path = trajectory.path()
    assert path.size == trajectory.length + 1
    assert path[0] == trajectory.initial_state


def test_arrays_are_read_only(trajectory: Trajectory) -> None:
    with pytest.raises(ValueError):
        trajectory.states[0] = 1.0


def test_mismatched_lengths_rejected() -> None:
    with pytest.raises(ValidationError, match="differ in length"):
        Trajectory(states=[1.0, 2.0], controls=[0.0], initial_state=0.0, seed=0)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "a,b,c\n0,0,0\n1,1,0\n",
        "n,x,u\n0,0.0,0.0\n",
        "n,x,u\n0,0.0,0.0\n2,1.0,0.0\n",
        "n,x,u\n0,0.0,0.0\n1,oops,0.0\n",
    ],
)
def test_malformed_csv_rejected(text: str) -> None:
    with pytest.raises(ValidationError):
        Trajectory.from_csv(text)


def test_malformed_json_rejected() -> None:
    with pytest.raises(ValidationError, match="malformed trajectory JSON"):
        Trajectory.from_json({"states": [1.0]})
