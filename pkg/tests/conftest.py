"""Shared test fixtures."""

import json
import shutil
from collections.abc import Iterator
from datetime import datetime
from pathlib import Path
from typing import Any

import pytest

from covertctl.core.logging import LogManager

# =============================================================================
# Test Performance Tracking
# =============================================================================

REPORTS_DIR = Path(__file__).parent.parent / ".test_reports"


def pytest_sessionfinish(session: pytest.Session, exitstatus: int) -> None:
    """Archive test report with timestamp after each run."""
    latest_report = REPORTS_DIR / "latest.json"
    if not latest_report.exists():
        return

    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    archived = REPORTS_DIR / f"report_{timestamp}.json"
    shutil.copy(latest_report, archived)

    # Keep only the last 30 reports
    reports = sorted(REPORTS_DIR.glob("report_*.json"))
    for old_report in reports[:-30]:
        old_report.unlink()


@pytest.fixture(autouse=True)
def isolate_environment(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> Iterator[None]:
    """Isolate tests from environment pollution.

    Removes covertctl env overrides, points HOME and XDG_DATA_HOME at a temp
    directory so log files never land in the real home, and resets the
    logger singleton so each test sees fresh handlers.
    """
    for var in ("COVERTCTL_THREADS", "COVERTCTL_HORIZON_CAP", "XDG_DATA_HOME"):
        monkeypatch.delenv(var, raising=False)

    home_dir = tmp_path / "home"
    home_dir.mkdir(parents=True, exist_ok=True)
    monkeypatch.setenv("HOME", str(home_dir))
    monkeypatch.setenv("XDG_DATA_HOME", str(home_dir / ".local" / "share"))

    LogManager.reset_instance()
    yield
    LogManager.reset_instance()


@pytest.fixture
def write_json(tmp_path: Path):
    """Write a JSON document under tmp_path and return its path."""

    def _write(name: str, document: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def chi_square_experiment() -> dict[str, Any]:
    """Stationary plant, single reset at tau = 3, chi-square detector at t = 2."""
    return {
        "system": {
            "gain_a": 0.9,
            "noise": {"kind": "gaussian", "sigma_z": 1.0},
            "stationary_init": True,
        },
        "controller": {"kind": "reset_once", "tau": 3},
        "detector": {"kind": "reset_chi_square", "t": 2.0, "tau": 3},
        "trials": 400,
        "horizon_n": 6,
        "master_seed": 11,
    }
