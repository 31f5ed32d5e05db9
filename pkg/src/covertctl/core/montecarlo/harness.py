"""Seeded Monte Carlo harness.

Trial i under hypothesis h owns counter block i of the keyed stream
(master_seed, h), so a trial's outcome depends only on the config and its
index. Each chunk of trials is drawn, simulated and decided as one numpy
batch; chunks run on a thread pool and their counts are summed, which makes
the totals independent of scheduling, chunk size and thread count.
"""

from __future__ import annotations

import math
import time
import uuid
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Any

import numpy as np

from covertctl.configuration.experiment_config import validate_document
from covertctl.configuration.limits import get_thread_limit
from covertctl.constants import HYPOTHESIS_STREAM_KEY, SWEEP_STREAM_KEY, Hypothesis
from covertctl.exceptions import DomainError, ValidationError

from covertctl.core.ar1 import (
    PathBatch,
    batch_draws,
    check_simulation,
    simulate_batch,
    stream_seed,
)
from covertctl.core.controllers import ControllerSpec, NoControl
from covertctl.core.detectors import decide_batch
from covertctl.core.logging import get_logger
from covertctl.core.montecarlo.config import ExperimentConfig
from covertctl.core.montecarlo.rates import ErrorRates

LOG_SOURCE = "montecarlo"
CHUNKS_PER_THREAD = 4
# Upper bound on the float64 cells (trials x (n + 2)) held by one batch
BATCH_CELLS = 1 << 20


def _controller_for(cfg: ExperimentConfig, hypothesis: Hypothesis) -> ControllerSpec:
    if hypothesis is Hypothesis.NULL:
        return NoControl()
    return cfg.controller


def _chunks(trials: int, threads: int, n: int) -> list[range]:
    per_thread = math.ceil(trials / (threads * CHUNKS_PER_THREAD))
    size = max(1, min(per_thread, BATCH_CELLS // (n + 2)))
    return [range(start, min(start + size, trials)) for start in range(0, trials, size)]


def simulate_trials(cfg: ExperimentConfig, hypothesis: Hypothesis, indices: range) -> PathBatch:
    """Paths of trials ``indices`` under ``hypothesis``.

    The caller runs check_simulation first.
    """
    draws = batch_draws(
        cfg.master_seed,
        HYPOTHESIS_STREAM_KEY[hypothesis],
        indices.start,
        len(indices),
        cfg.horizon_n,
        cfg.system.noise,
    )
    controller = _controller_for(cfg, hypothesis)
    return simulate_batch(cfg.system, controller, cfg.horizon_n, draws, validated=True)


def _count_errors(cfg: ExperimentConfig, hypothesis: Hypothesis, indices: range) -> int:
    """Wrong decisions among ``indices``: rejections under H0, acceptances under H1."""
    paths = simulate_trials(cfg, hypothesis, indices)
    rejected = decide_batch(cfg.detector, paths.states, cfg.system.sigma_z, cfg.system.gain_a)
    rejections = int(np.count_nonzero(rejected))
    if hypothesis is Hypothesis.NULL:
        return rejections
    return len(indices) - rejections


def _run_hypothesis(
    cfg: ExperimentConfig, hypothesis: Hypothesis, threads: int, run_id: str
) -> int:
    logger = get_logger()
    check_simulation(cfg.system, _controller_for(cfg, hypothesis), cfg.horizon_n)
    with logger.run_scope(run_id, hypothesis.value):
        logger.experiment(f"Starting {cfg.trials} trials", source=LOG_SOURCE)
        errors, duration_ms = _run_chunks(cfg, hypothesis, threads)
        logger.experiment(
            f"Finished {cfg.trials} trials with {errors} errors",
            source=LOG_SOURCE,
            duration_ms=duration_ms,
        )
    return errors


def _run_chunks(cfg: ExperimentConfig, hypothesis: Hypothesis, threads: int) -> tuple[int, float]:
    started = time.perf_counter()
    chunks = _chunks(cfg.trials, threads, cfg.horizon_n)
    if threads == 1:
        errors = sum(_count_errors(cfg, hypothesis, chunk) for chunk in chunks)
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            counts = executor.map(lambda chunk: _count_errors(cfg, hypothesis, chunk), chunks)
            errors = sum(counts)
    return errors, (time.perf_counter() - started) * 1000.0


def estimate_error_rates(
    cfg: ExperimentConfig, threads: int | None = None, run_id: str | None = None
) -> ErrorRates:
    """alpha_hat from ``trials`` uncontrolled runs, beta_hat from ``trials`` controlled runs."""
    workers = threads if threads is not None else get_thread_limit()
    if workers < 1:
        raise ValidationError(f"threads={workers} must be positive")
    run = run_id or uuid.uuid4().hex[:12]
    false_alarms = _run_hypothesis(cfg, Hypothesis.NULL, workers, run)
    misses = _run_hypothesis(cfg, Hypothesis.ALTERNATIVE, workers, run)
    return ErrorRates.from_counts(false_alarms, misses, cfg.trials)


def _set_dotted(document: dict[str, Any], parameter: str, value: float) -> None:
    parts = parameter.split(".")
    node: Any = document
    for part in parts[:-1]:
        if not isinstance(node, dict) or part not in node or not isinstance(node[part], dict):
            raise ValidationError(
                f"unknown sweep parameter {parameter!r}",
                valid_examples=["controller.b", "system.gain_a", "detector.t", "trials"],
            )
        node = node[part]
    leaf = parts[-1]
    current = node.get(leaf) if isinstance(node, dict) else None
    if leaf not in node or isinstance(current, bool) or not isinstance(current, int | float):
        raise ValidationError(
            f"sweep parameter {parameter!r} does not name a numeric field",
            valid_examples=["controller.b", "system.gain_a", "detector.t", "trials"],
        )
    if isinstance(current, int):
        if not float(value).is_integer():
            raise ValidationError(f"sweep parameter {parameter!r} needs integer values")
        node[leaf] = int(value)
    else:
        node[leaf] = float(value)


def sweep_configs(
    template: ExperimentConfig, parameter: str, values: Sequence[float]
) -> list[ExperimentConfig]:
    """One validated config per value; value i gets its own master seed."""
    configs: list[ExperimentConfig] = []
    for index, value in enumerate(values):
        document = template.model_dump(mode="python")
        document["master_seed"] = stream_seed(template.master_seed, SWEEP_STREAM_KEY, index)
        _set_dotted(document, parameter, value)
        configs.append(
            validate_document(ExperimentConfig, document, f"sweep {parameter}={value!r}")
        )
    return configs


def sweep(
    template: ExperimentConfig,
    parameter: str,
    values: Sequence[float],
    threads: int | None = None,
) -> list[tuple[float, ErrorRates]]:
    run_id = uuid.uuid4().hex[:12]
    configs = sweep_configs(template, parameter, values)
    get_logger().experiment(
        f"Sweeping {parameter} over {len(configs)} values", source=LOG_SOURCE, run_id=run_id
    )
    return [
        (float(value), estimate_error_rates(cfg, threads, run_id))
        for value, cfg in zip(values, configs, strict=True)
    ]


def estimate_moment(cfg: ExperimentConfig, gamma: float) -> float:
    """max_n of the sample mean of |X_n|^gamma under the configured controller."""
    if gamma <= 0.0:
        raise DomainError(f"gamma={gamma!r} must be positive", precondition="gamma > 0")
    check_simulation(cfg.system, cfg.controller, cfg.horizon_n)
    totals = np.zeros(cfg.horizon_n, dtype=np.float64)
    for chunk in _chunks(cfg.trials, 1, cfg.horizon_n):
        paths = simulate_trials(cfg, Hypothesis.ALTERNATIVE, chunk)
        totals += np.sum(np.abs(paths.states) ** gamma, axis=0)
    return float(np.max(totals / cfg.trials))
