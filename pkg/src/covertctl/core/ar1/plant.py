"""Plant dynamics and trajectory simulation.

simulate_batch advances a whole batch of trials one step at a time with
numpy; simulate is the batch of one. Both are pure given their draws, so
they are safe to call from many threads at once.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from covertctl.configuration.limits import get_overflow_limit, get_unstable_horizon_cap
from covertctl.exceptions import DomainError, TrajectoryOverflowError, ValidationError
from covertctl.types import BoolArray, FloatArray, RealOrArray, Seed

from covertctl.core.ar1.models import SystemParams
from covertctl.core.ar1.rng import BatchDraws, trial_draws
from covertctl.core.ar1.trajectory import Trajectory
from covertctl.core.controllers import (
    ControllerSpec,
    GainChange,
    NoControl,
    OneBit,
    ResetOnce,
    Stabilizer,
    Threshold,
    check_admissible,
    closed_loop_gain,
    gain_change_control,
    one_bit_control,
    reset_once_control,
    threshold_control,
)

# (step k, X_{k-1}, reset normal draw) -> U_k, elementwise over trials
ControlLaw = Callable[[int, RealOrArray, RealOrArray], RealOrArray]


@dataclass(frozen=True, slots=True)
class PathBatch:
    """Simulated paths, one row per trial.

    crossed[i, k] is set when X_k of trial i triggered a reset (threshold and
    reset-once controllers only).
    """

    initial_states: FloatArray
    states: FloatArray
    controls: FloatArray
    crossed: BoolArray

    @property
    def trials(self) -> int:
        return int(self.states.shape[0])


def step(x: RealOrArray, params: SystemParams, z: RealOrArray, u: RealOrArray) -> RealOrArray:
    """a x + z - u."""
    return params.gain_a * x + z - u


def initial_variance(params: SystemParams, controller: ControllerSpec) -> float:
    """Variance of X_0.

    With stationary_init the plant starts in the steady state of the loop it
    runs in, which for a gain change is the loop with gain b.
    """
    if not params.stationary_init:
        return params.init_variance
    gain = closed_loop_gain(controller, params.gain_a)
    return params.noise.variance / (1.0 - gain * gain)


def validate_controller(controller: ControllerSpec, params: SystemParams) -> None:
    check_admissible(
        controller,
        gain_a=params.gain_a,
        noise_bound=params.noise.support_bound,
        stationary_init=params.stationary_init,
    )


def control_law(controller: ControllerSpec, params: SystemParams) -> ControlLaw:
    """Bind ``controller`` to the plant, returning U_k = f(k, X_{k-1}, reset_draw)."""
    a = params.gain_a

    if isinstance(controller, NoControl):
        return lambda _k, x, _r: np.zeros_like(x)
    if isinstance(controller, OneBit):
        # The control acting at step k uses C_k, so |X_0| <= C_1 keeps |X_k| <= C_1.
        return lambda k, x, _r: one_bit_control(x, k + 1, controller, a)
    if isinstance(controller, Threshold):
        return lambda _k, x, _r: threshold_control(x, controller.d, a)
    if isinstance(controller, GainChange | Stabilizer):
        b = closed_loop_gain(controller, a)
        return lambda _k, x, _r: gain_change_control(x, a, b)
    if isinstance(controller, ResetOnce):
        sigma_z = params.noise.std
        reset_step = controller.tau + 1

        def reset_law(k: int, x: RealOrArray, reset_normal: RealOrArray) -> RealOrArray:
            if k != reset_step:
                return np.zeros_like(x)
            return reset_once_control(x, a, sigma_z, reset_normal)

        return reset_law
    raise ValidationError(f"unknown controller kind {controller!r}")


def _crossed(controller: ControllerSpec, k: int, x_prev: FloatArray) -> BoolArray | bool:
    if isinstance(controller, Threshold):
        return np.abs(x_prev) >= controller.d
    if isinstance(controller, ResetOnce):
        return k == controller.tau + 1
    return False


def _check_horizon(params: SystemParams, controller: ControllerSpec, n: int) -> None:
    if n < 1:
        raise ValidationError(f"horizon n={n} must be at least 1")
    if abs(params.gain_a) > 1.0:
        cap = get_unstable_horizon_cap()
        if n > cap:
            raise DomainError(
                f"Horizon n={n} exceeds the unstable-plant cap {cap}",
                precondition=f"n <= {cap} when |a| > 1",
                suggested_fix="Raise COVERTCTL_HORIZON_CAP or shorten the horizon",
            )
    if isinstance(controller, ResetOnce) and controller.tau >= n:
        raise DomainError(
            f"Reset step tau={controller.tau} does not fit in horizon n={n}",
            precondition="tau < n",
        )


def check_simulation(params: SystemParams, controller: ControllerSpec, n: int) -> None:
    """All preconditions of simulate: horizon limits and controller admissibility."""
    _check_horizon(params, controller, n)
    validate_controller(controller, params)


def simulate_batch(
    params: SystemParams,
    controller: ControllerSpec,
    n: int,
    draws: BatchDraws,
    *,
    validated: bool = False,
) -> PathBatch:
    """Run X_k = a X_{k-1} + Z_k - U_k for k = 1..n on every trial of ``draws``.

    ``validated=True`` skips the admissibility checks; the Monte Carlo harness
    runs them once per experiment instead of once per batch.
    """
    if not validated:
        check_simulation(params, controller, n)
    if draws.noise.ndim != 2 or draws.noise.shape[1] < n:
        raise ValidationError(f"draws of shape {draws.noise.shape} do not cover {n} steps")

    law = control_law(controller, params)
    limit = get_overflow_limit()
    trials = draws.trials

    x_prev = math.sqrt(initial_variance(params, controller)) * draws.x0_std_normal
    initial_states = x_prev
    states = np.empty((trials, n), dtype=np.float64)
    controls = np.empty((trials, n), dtype=np.float64)
    crossed = np.zeros((trials, n), dtype=np.bool_)

    for k in range(1, n + 1):
        u = law(k, x_prev, draws.reset_normal)
        crossed[:, k - 1] = _crossed(controller, k, x_prev)
        x = step(x_prev, params, draws.noise[:, k - 1], u)
        escaped = ~np.isfinite(x) | (np.abs(x) > limit)
        if np.any(escaped):
            first = int(np.argmax(escaped))
            raise TrajectoryOverflowError(k, float(x[first]), limit)
        states[:, k - 1] = x
        controls[:, k - 1] = u
        x_prev = x

    return PathBatch(
        initial_states=initial_states, states=states, controls=controls, crossed=crossed
    )


def simulate(
    params: SystemParams,
    controller: ControllerSpec,
    n: int,
    seed: Seed,
    *,
    validated: bool = False,
) -> Trajectory:
    """One trajectory of ``n`` steps drawn from the Philox stream of ``seed``.

    crossing_times lists the indices tau with X_tau triggering a reset.
    """
    if not validated:
        check_simulation(params, controller, n)
    draws = BatchDraws.single(trial_draws(seed, n, params.noise))
    paths = simulate_batch(params, controller, n, draws, validated=True)
    return Trajectory(
        states=paths.states[0],
        controls=paths.controls[0],
        initial_state=float(paths.initial_states[0]),
        seed=seed,
        crossing_times=tuple(int(t) for t in np.flatnonzero(paths.crossed[0])),
    )
