"""Tests for result rows and their CSV/JSON files."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import pytest

from covertctl.exceptions import FileOperationError

from covertctl.core.montecarlo import (
    ErrorRates,
    ExperimentResult,
    Verdict,
    json_mirror_path,
    write_results,
)

HEADER = ["param", "value", "alpha", "beta", "alpha_ci", "beta_ci", "trials", "verdict"]


def _result(value: float | None = None, verdict: Verdict | None = None) -> ExperimentResult:
    return ExperimentResult(
        param=None if value is None else "controller.b",
        value=value,
        rates=ErrorRates.from_counts(25, 50, 100),
        verdict=verdict,
    )


def test_csv_row_without_sweep_fields():
    row = _result().csv_row()
    assert row[0] == row[1] == row[-1] == "n/a"
    assert row[2:4] == ["0.25", "0.5"]
    assert row[6] == "100"


def test_json_record_keeps_numbers():
    record = _result(0.6, Verdict.CONSISTENT).json_record()
    assert record["param"] == "controller.b"
    assert record["value"] == 0.6
    assert record["alpha"] == 0.25
    assert record["trials"] == 100
    assert record["verdict"] == "consistent"


def test_mirror_path():
    assert json_mirror_path("out/results.csv") == Path("out/results.json")


def test_write_creates_header_once_and_appends(tmp_path: Path):
    out = tmp_path / "runs" / "results.csv"
    write_results([_result(0.6)], out, {"command": "sweep"})
    csv_path, json_path = write_results(
        [_result(0.7), _result(0.8)], out, {"command": "sweep"}
    )
    with csv_path.open(encoding="utf-8", newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == HEADER
    assert [row[1] for row in rows[1:]] == ["0.6", "0.7", "0.8"]

    document = json.loads(json_path.read_text(encoding="utf-8"))
    assert document["command"] == "sweep"
    assert document["created_at"].endswith("+00:00")
    assert [record["value"] for record in document["results"]] == [0.6, 0.7, 0.8]


def test_corrupt_mirror_is_reported(tmp_path: Path):
    out = tmp_path / "results.csv"
    json_mirror_path(out).write_text("{not json", encoding="utf-8")
    with pytest.raises(FileOperationError, match="not valid JSON"):
        write_results([_result()], out, {})
