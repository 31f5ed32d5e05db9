"""CLI entry point for covertctl."""

from __future__ import annotations

import json
from collections.abc import Callable, Sequence
from enum import StrEnum
from pathlib import Path
from typing import TypeVar

import typer
from rich.console import Console
from rich.table import Table

from covertctl.configuration.experiment_config import load_oracle_grid
from covertctl.configuration.settings import ApplicationSettings
from covertctl.constants import HYPOTHESIS_STREAM_KEY, Hypothesis
from covertctl.exceptions import (
    ConfigurationError,
    DomainError,
    FileOperationError,
    ValidationError,
)
from covertctl.utils.output import (
    format_number,
    read_text,
    utc_timestamp,
    write_json_atomic,
    write_text_atomic,
)

from covertctl.core.analysis import (
    BoundReport,
    OracleName,
    covert_gain_report,
    k0_reports,
    n0_reports,
    one_bit_steady_energy,
    reset_covert_report,
    reset_detect_report,
    run_oracle,
)
from covertctl.core.ar1 import NoiseKind, NoiseModel, Trajectory, simulate, stream_seed
from covertctl.core.detectors import apply_detector
from covertctl.core.logging import get_logger
from covertctl.core.montecarlo import (
    ErrorRates,
    ExperimentConfig,
    ExperimentResult,
    estimate_error_rates,
    load_experiment_config,
    sweep,
    verify_bound,
    write_results,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2

DEFAULT_SIGMA_Z = 1.0

T = TypeVar("T")

app_settings = ApplicationSettings()
app = typer.Typer(
    help="covertctl - covert control and detection lab for AR(1) systems",
    no_args_is_help=True,
)
console = Console()
error_console = Console(stderr=True)


class BoundKind(StrEnum):
    COVERT_GAIN = "covert_gain"
    RESET_COVERT = "reset_covert"
    RESET_DETECT = "reset_detect"
    K0 = "k0"
    N0 = "n0"


def _print_version() -> None:
    print(f"{app_settings.name} {app_settings.version}")


def _guarded(action: Callable[[], T]) -> T:
    """Run ``action`` and map covertctl errors to exit codes."""
    try:
        return action()
    except FileOperationError as exc:
        error_console.print(f"Error: {exc}", markup=False, highlight=False)
        get_logger().error(str(exc), source="cli")
        raise typer.Exit(code=EXIT_IO) from exc
    except (DomainError, ValidationError, ConfigurationError) as exc:
        error_console.print(f"Error: {exc}", markup=False, highlight=False)
        get_logger().error(str(exc), source="cli")
        raise typer.Exit(code=EXIT_DOMAIN) from exc


def _require(value: float | None, flag: str, which: BoundKind) -> float:
    if value is None:
        raise ValidationError(f"--which {which.value} requires {flag}")
    return value


def _noise_from_flags(kind: NoiseKind, sigma_z: float | None, bound_b: float | None) -> NoiseModel:
    if kind is NoiseKind.GAUSSIAN:
        return NoiseModel.gaussian(sigma_z if sigma_z is not None else DEFAULT_SIGMA_Z)
    return NoiseModel(kind=kind, sigma_z=sigma_z, bound_b=bound_b)


def _bounds_table(reports: Sequence[BoundReport]) -> Table:
    table = Table(title="Bounds")
    table.add_column("name")
    table.add_column("direction")
    table.add_column("value", justify="right")
    table.add_column("inputs")
    for report in reports:
        inputs = ", ".join(
            f"{key}={format_number(val)}" for key, val in sorted(report.inputs.items())
        )
        table.add_row(report.name, report.direction.value, format_number(report.value), inputs)
    return table


def _rates_table(rows: Sequence[ExperimentResult]) -> Table:
    table = Table(title="Error rates")
    for column in ("param", "value", "alpha", "beta", "alpha_ci", "beta_ci", "trials", "verdict"):
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(*row.csv_row())
    return table


def _result(
    cfg: ExperimentConfig, rates: ErrorRates, param: str | None = None, value: float | None = None
) -> ExperimentResult:
    verdict = verify_bound(rates, cfg.expected_bound) if cfg.expected_bound else None
    return ExperimentResult(param=param, value=value, rates=rates, verdict=verdict)


def _metadata(command: str, cfg: ExperimentConfig) -> dict[str, object]:
    return {"command": command, "config": cfg.model_dump(mode="json")}


def _parse_values(raw: str) -> list[float]:
    cleaned = [item.strip() for item in raw.split(",") if item.strip()]
    try:
        return [float(item) for item in cleaned]
    except ValueError as err:
        raise ValidationError(
            f"--values must be comma-separated numbers, got {raw!r}",
            valid_examples=["0.6,0.7,0.8", "1000,10000"],
        ) from err


def _load_trajectory(path: Path) -> Trajectory:
    text = read_text(path)
    if path.suffix == ".json":
        try:
            return Trajectory.from_json(json.loads(text))
        except json.JSONDecodeError as err:
            raise ValidationError(f"{path} is not valid JSON: {err.msg}") from err
    return Trajectory.from_csv(text)


@app.callback(invoke_without_command=True)
def _default_command(
    version: bool = typer.Option(False, "--version", "-v", help="Show version and exit."),
    verbose: bool = typer.Option(False, "--verbose", help="Echo log records to stderr."),
) -> None:
    if version:
        _print_version()
        raise typer.Exit(code=EXIT_OK)
    get_logger().set_verbose(verbose)


@app.command("simulate")
def simulate_command(
    config: Path = typer.Argument(..., help="Experiment JSON; its system and controller are run."),
    out: Path = typer.Option(..., "--out", help="Trajectory CSV (n,x,u); metadata JSON beside it."),
) -> None:
    """Simulate one controlled trajectory and write it as CSV."""

    def run() -> None:
        cfg = load_experiment_config(config)
        seed = stream_seed(cfg.master_seed, HYPOTHESIS_STREAM_KEY[Hypothesis.ALTERNATIVE], 0)
        trajectory = simulate(cfg.system, cfg.controller, cfg.horizon_n, seed)
        write_text_atomic(out, trajectory.to_csv())
        metadata = {
            "created_at": utc_timestamp(),
            **_metadata("simulate", cfg),
            "seed": seed,
            "crossing_times": list(trajectory.crossing_times),
        }
        write_json_atomic(out.with_suffix(".json"), metadata)
        console.print(
            f"Wrote {trajectory.length} states to {out} "
            f"(final x = {format_number(float(trajectory.states[-1]))})",
            highlight=False,
        )

    _guarded(run)


@app.command("bounds")
def bounds_command(
    which: BoundKind = typer.Option(..., "--which", help="Which closed-form limit to evaluate."),
    a: float | None = typer.Option(
        None, "--a", help="Plant gain a (gain-change covertness, magnitude detector)."
    ),
    b: float | None = typer.Option(None, "--b", help="Gain-change target b (reported only)."),
    epsilon: float | None = typer.Option(
        None, "--epsilon", help="Covertness level eps (gain-change and reset covertness)."
    ),
    delta: float | None = typer.Option(
        None, "--delta", help="Detection level delta (reset, innovation-energy, magnitude tests)."
    ),
    sigma_z: float | None = typer.Option(
        None, "--sigma-z", help="Noise standard deviation (magnitude test, Gaussian noise)."
    ),
    c: float | None = typer.Option(
        None, "--c", help="Uniform moment bound c with E|X_n|^gamma <= c (magnitude test)."
    ),
    gamma: float | None = typer.Option(
        None, "--gamma", help="Moment order gamma of the bound c (magnitude test)."
    ),
    bound_b: float | None = typer.Option(
        None, "--bound-b", help="Noise support bound B (one-bit controller, bounded noise)."
    ),
    noise: NoiseKind = typer.Option(
        NoiseKind.GAUSSIAN, "--noise", help="Noise law for the innovation-energy design."
    ),
    e_u: float | None = typer.Option(
        None,
        "--e-u",
        help="Control energy E_U for the innovation-energy design; "
        "defaults to the one-bit steady state from --a and --bound-b.",
    ),
) -> None:
    """Evaluate covertness and detectability limits."""

    def run() -> list[BoundReport]:
        if which is BoundKind.COVERT_GAIN:
            report = covert_gain_report(
                _require(a, "--a", which), _require(epsilon, "--epsilon", which)
            )
            if b is not None and abs(b) >= report.value:
                get_logger().warning(
                    f"|b|={abs(b)} is not below the covert limit", source="cli", b=b
                )
            return [report]
        if which is BoundKind.RESET_COVERT:
            return [reset_covert_report(_require(epsilon, "--epsilon", which))]
        if which is BoundKind.RESET_DETECT:
            return [reset_detect_report(_require(delta, "--delta", which))]
        if which is BoundKind.K0:
            noise_model = _noise_from_flags(noise, sigma_z, bound_b)
            energy = e_u
            if energy is None:
                energy = one_bit_steady_energy(
                    _require(a, "--a", which), _require(bound_b, "--bound-b", which)
                )
            return k0_reports(_require(delta, "--delta", which), noise_model, energy)
        return n0_reports(
            _require(c, "--c", which),
            _require(gamma, "--gamma", which),
            _require(delta, "--delta", which),
            _require(a, "--a", which),
            sigma_z if sigma_z is not None else DEFAULT_SIGMA_Z,
        )

    reports = _guarded(run)
    console.print(_bounds_table(reports))


@app.command("detect")
def detect_command(
    config: Path = typer.Argument(..., help="Experiment JSON naming the detector and the plant."),
    trajectory: Path = typer.Argument(..., help="Trajectory CSV (n,x,u) or JSON."),
) -> None:
    """Apply the configured detector to a recorded trajectory."""

    def run() -> None:
        cfg = load_experiment_config(config)
        path = _load_trajectory(trajectory)
        decision = apply_detector(cfg.detector, path, cfg.system.sigma_z, cfg.system.gain_a)
        verdict = "controlled (reject H0)" if decision.reject_null else "uncontrolled (accept H0)"
        console.print(
            f"{cfg.detector.kind}: statistic={format_number(decision.statistic)} "
            f"threshold={format_number(decision.threshold)} -> {verdict}",
            highlight=False,
        )

    _guarded(run)


@app.command("experiment")
def experiment_command(
    config: Path = typer.Argument(..., help="Experiment JSON."),
    out: Path = typer.Option(..., "--out", help="Results CSV (appended); JSON mirror beside it."),
) -> None:
    """Estimate alpha and beta by Monte Carlo and check the attached bound."""

    def run() -> list[ExperimentResult]:
        cfg = load_experiment_config(config)
        results = [_result(cfg, estimate_error_rates(cfg))]
        write_results(results, out, _metadata("experiment", cfg))
        return results

    console.print(_rates_table(_guarded(run)))


@app.command("sweep")
def sweep_command(
    config: Path = typer.Argument(..., help="Experiment JSON used as the template."),
    param: str = typer.Option(
        ..., "--param", help="Dotted config path, e.g. controller.b or system.gain_a."
    ),
    values: str = typer.Option(..., "--values", help="Comma-separated values, e.g. 0.6,0.7,0.8."),
    out: Path = typer.Option(..., "--out", help="Results CSV (appended); JSON mirror beside it."),
) -> None:
    """Repeat the experiment for each value of one config field."""

    def run() -> list[ExperimentResult]:
        template = load_experiment_config(config)
        points = sweep(template, param, _parse_values(values))
        results = [_result(template, rates, param, value) for value, rates in points]
        write_results(results, out, _metadata("sweep", template))
        return results

    console.print(_rates_table(_guarded(run)))


@app.command("verify")
def verify_command(
    oracle: OracleName = typer.Option(
        ..., "--oracle", help="Closed form checked against dense linear algebra."
    ),
    grid: str = typer.Option("default", "--grid", help="'default' or a JSON grid file."),
) -> None:
    """Compare a closed form with its dense oracle over a parameter grid."""

    outcome = _guarded(lambda: run_oracle(oracle, load_oracle_grid(grid)))
    status = "PASS" if outcome.passed else "FAIL"
    console.print(
        f"{outcome.oracle.value}: {outcome.cases} cases, "
        f"max scaled error {format_number(outcome.max_error)} "
        "(absolute; relative where the dense value exceeds 1), "
        f"tolerance {format_number(outcome.tolerance)}: {status}",
        highlight=False,
    )
    if not outcome.passed:
        raise typer.Exit(code=EXIT_DOMAIN)


if __name__ == "__main__":
    app()
