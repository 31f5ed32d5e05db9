"""Realized state paths and their CSV/JSON forms."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from covertctl.constants import TRAJECTORY_CSV_HEADER
from covertctl.exceptions import ValidationError
from covertctl.types import FloatArray, JsonObject


def _frozen_array(values: Any) -> FloatArray:
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States X_1..X_n with controls U_1..U_n and the seed that produced them.

    crossing_times holds the indices tau of the states that triggered a reset
    (threshold and reset-once controllers only).
    """

    states: FloatArray
    controls: FloatArray
    initial_state: float
    seed: int
    crossing_times: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        states = _frozen_array(self.states)
        controls = _frozen_array(self.controls)
        if states.ndim != 1 or controls.ndim != 1:
            raise ValidationError("trajectory states and controls must be vectors")
        if states.shape != controls.shape:
            raise ValidationError(
                f"states ({states.size}) and controls ({controls.size}) differ in length"
            )
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "controls", controls)
        object.__setattr__(self, "initial_state", float(self.initial_state))
        object.__setattr__(self, "crossing_times", tuple(int(t) for t in self.crossing_times))

    @property
    def length(self) -> int:
        return int(self.states.size)

    def path(self) -> FloatArray:
        """X_0, X_1, ..., X_n."""
        return np.concatenate(([self.initial_state], self.states))

    def identical_to(self, other: Trajectory) -> bool:
        return (
            self.seed == other.seed
            and self.crossing_times == other.crossing_times
            and self.initial_state == other.initial_state
            and np.array_equal(self.states, other.states)
            and np.array_equal(self.controls, other.controls)
        )

    def to_csv(self) -> str:
        """Rows n = 0..N; row 0 carries X_0 with a zero control."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(TRAJECTORY_CSV_HEADER)
        writer.writerow([0, repr(self.initial_state), repr(0.0)])
        for index, (x, u) in enumerate(zip(self.states, self.controls, strict=True), start=1):
            writer.writerow([index, repr(float(x)), repr(float(u))])
        return buffer.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> Trajectory:
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header is None or tuple(cell.strip() for cell in header) != TRAJECTORY_CSV_HEADER:
            raise ValidationError(
                f"trajectory CSV must start with header {','.join(TRAJECTORY_CSV_HEADER)}"
            )
        rows = [row for row in reader if row]
        if len(rows) < 2:
            raise ValidationError("trajectory CSV needs X_0 and at least one state")
        try:
            indices = [int(row[0]) for row in rows]
            xs = [float(row[1]) for row in rows]
            us = [float(row[2]) for row in rows]
        except (IndexError, ValueError) as err:
            raise ValidationError(f"malformed trajectory CSV row: {err}") from err
        if indices != list(range(len(rows))):
            raise ValidationError("trajectory CSV rows must be numbered 0, 1, 2, ...")
        return cls(states=xs[1:], controls=us[1:], initial_state=xs[0], seed=0)

    def to_json(self) -> JsonObject:
        return {
            "states": [float(x) for x in self.states],
            "controls": [float(u) for u in self.controls],
            "initial_state": self.initial_state,
            "seed": self.seed,
            "crossing_times": list(self.crossing_times),
        }

    @classmethod
    def from_json(cls, document: JsonObject) -> Trajectory:
        try:
            return cls(
                states=document["states"],
                controls=document["controls"],
                initial_state=document["initial_state"],
                seed=int(document.get("seed", 0)),
                crossing_times=tuple(document.get("crossing_times", ())),
            )
        except (KeyError, TypeError, ValueError) as err:
            raise ValidationError(f"malformed trajectory JSON: {err}") from err
