"""Experiment result rows and their CSV/JSON files."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict

from covertctl.constants import NOT_APPLICABLE, RESULTS_CSV_HEADER
from covertctl.exceptions import FileOperationError
from covertctl.types import FilePath, JsonObject
from covertctl.utils.output import (
    format_number,
    read_text,
    utc_timestamp,
    write_json_atomic,
    write_text_atomic,
)

from covertctl.core.montecarlo.rates import ErrorRates, Verdict


class ExperimentResult(BaseModel):
    """One row of output; ``param`` and ``value`` are None outside a sweep."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    param: str | None = None
    value: float | None = None
    rates: ErrorRates
    verdict: Verdict | None = None

    def csv_row(self) -> list[str]:
        return [
            self.param or NOT_APPLICABLE,
            NOT_APPLICABLE if self.value is None else format_number(self.value),
            format_number(self.rates.alpha_hat),
            format_number(self.rates.beta_hat),
            format_number(self.rates.alpha_ci),
            format_number(self.rates.beta_ci),
            str(self.rates.trials),
            self.verdict.value if self.verdict is not None else NOT_APPLICABLE,
        ]

    def json_record(self) -> JsonObject:
        record: JsonObject = dict(zip(RESULTS_CSV_HEADER, self.csv_row(), strict=True))
        record.update(
            value=self.value,
            alpha=self.rates.alpha_hat,
            beta=self.rates.beta_hat,
            alpha_ci=self.rates.alpha_ci,
            beta_ci=self.rates.beta_ci,
            trials=self.rates.trials,
        )
        return record


def json_mirror_path(out_path: FilePath) -> Path:
    return Path(out_path).with_suffix(".json")


def _existing_records(path: Path) -> list[Any]:
    if not path.exists():
        return []
    try:
        document = json.loads(read_text(path))
    except json.JSONDecodeError as err:
        raise FileOperationError("read", path, f"not valid JSON: {err.msg}", err) from err
    records = document.get("results") if isinstance(document, dict) else None
    return list(records) if isinstance(records, list) else []


def write_results(
    results: Sequence[ExperimentResult], out_path: FilePath, metadata: JsonObject
) -> tuple[Path, Path]:
    """Append rows to the CSV at ``out_path`` and rewrite its JSON mirror.

    The header is written only when the CSV is new. The mirror keeps every
    record written so far plus the metadata of the latest call.
    """
    csv_path = Path(out_path)
    existing = read_text(csv_path) if csv_path.exists() else ""
    buffer = io.StringIO()
    buffer.write(existing)
    if existing and not existing.endswith("\n"):
        buffer.write("\n")
    writer = csv.writer(buffer, lineterminator="\n")
    if not existing:
        writer.writerow(RESULTS_CSV_HEADER)
    for result in results:
        writer.writerow(result.csv_row())
    write_text_atomic(csv_path, buffer.getvalue())

    json_path = json_mirror_path(csv_path)
    records = _existing_records(json_path)
    records.extend(result.json_record() for result in results)
    document = {"created_at": utc_timestamp(), **metadata, "results": records}
    write_json_atomic(json_path, document)
    return csv_path, json_path
