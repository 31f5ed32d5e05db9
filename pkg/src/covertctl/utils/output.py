"""Atomic file output and numeric formatting."""

from __future__ import annotations

import json
import math
import os
import tempfile
from datetime import UTC, datetime
from pathlib import Path
from typing import Any

from covertctl.constants import SIGNIFICANT_DIGITS
from covertctl.exceptions import FileOperationError
from covertctl.types import FilePath


def format_number(value: float) -> str:
    """Render a float with 12 significant digits (``inf``/``nan`` spelled out)."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


def utc_timestamp() -> str:
    return datetime.now(UTC).isoformat()


def write_text_atomic(path: FilePath, content: str) -> Path:
    """Write ``content`` to ``path`` through a temp file in the same directory.

    The destination is either the old file or the complete new one, never a
    partial write.
    """
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    except OSError as err:
        raise FileOperationError("write", target, str(err), err) from err

    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(content)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, target)
    except OSError as err:
        Path(tmp_name).unlink(missing_ok=True)
        raise FileOperationError("write", target, str(err), err) from err
    return target


def write_json_atomic(path: FilePath, payload: Any) -> Path:
    return write_text_atomic(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_text(path: FilePath) -> str:
    source = Path(path)
    try:
        return source.read_text(encoding="utf-8")
    except OSError as err:
        raise FileOperationError("read", source, str(err), err) from err
