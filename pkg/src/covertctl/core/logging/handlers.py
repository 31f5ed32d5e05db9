"""Output destinations for covertctl log records."""

from __future__ import annotations

from abc import ABC, abstractmethod
from pathlib import Path

from rich.console import Console
from rich.text import Text

from covertctl.configuration.settings import PathConfig
from covertctl.constants import LOG_FILE_NAME

from covertctl.core.logging.levels import LogLevel
from covertctl.core.logging.records import LogRecord

LEVEL_STYLES: dict[LogLevel, str] = {
    LogLevel.WARNING: "yellow",
    LogLevel.ERROR: "red bold",
    LogLevel.EXPERIMENT: "cyan",
}


def context_fields(record: LogRecord) -> list[str]:
    """Source, run, hypothesis, trial and duration tags that are set on ``record``."""
    tags = {
        f"[{record.source}]": bool(record.source),
        f"run={record.run_id}": bool(record.run_id),
        f"hyp={record.hypothesis}": bool(record.hypothesis),
        f"trial={record.trial}": record.trial >= 0,
        f"dur={record.duration_ms:.1f}ms": record.duration_ms > 0.0,
    }
    return [tag for tag, present in tags.items() if present]


class Handler(ABC):
    def __init__(self, min_level: LogLevel = LogLevel.DEBUG):
        self.min_level = min_level
        self.enabled = True

    def set_enabled(self, enabled: bool) -> None:
        self.enabled = enabled

    def disable(self) -> None:
        self.enabled = False

    def emit(self, record: LogRecord) -> None:
        if self.enabled and record.level >= self.min_level:
            self.write(record)

    @abstractmethod
    def write(self, record: LogRecord) -> None:
        """Deliver a record that passed the level filter."""


class FileHandler(Handler):
    """One line per record in $XDG_DATA_HOME/covertctl/logs/covertctl.log.

    Line layout: ``<iso ts> [LEVEL     ] [source] run=.. hyp=.. message key=value``.
    The file rolls over to covertctl.log.1 .. .5 once it reaches MAX_SIZE_BYTES.
    """

    MAX_SIZE_BYTES = 10 * 1024 * 1024
    BACKUP_COUNT = 5

    def __init__(self, log_path: Path | None = None, min_level: LogLevel = LogLevel.DEBUG):
        super().__init__(min_level)
        self.log_path = log_path or PathConfig().log_dir / LOG_FILE_NAME
        self.log_path.parent.mkdir(mode=0o700, parents=True, exist_ok=True)

    def _backup(self, index: int) -> Path:
        return self.log_path.with_name(f"{self.log_path.name}.{index}")

    def _roll_over(self) -> None:
        if not self.log_path.exists() or self.log_path.stat().st_size < self.MAX_SIZE_BYTES:
            return
        self._backup(self.BACKUP_COUNT).unlink(missing_ok=True)
        for index in reversed(range(1, self.BACKUP_COUNT)):
            if self._backup(index).exists():
                self._backup(index).replace(self._backup(index + 1))
        self.log_path.replace(self._backup(1))

    def write(self, record: LogRecord) -> None:
        self._roll_over()
        with self.log_path.open("a", encoding="utf-8") as stream:
            stream.write(format_line(record) + "\n")


def format_line(record: LogRecord) -> str:
    head = f"{record.timestamp.isoformat()} [{record.level.name.ljust(10)}]"
    extra = [f"{key}={value}" for key, value in sorted(record.extra.items())]
    return " ".join([head, *context_fields(record), record.message, *extra])


class ConsoleHandler(Handler):
    """Rich rendering on stderr, switched on by --verbose."""

    def __init__(self, console: Console | None = None, min_level: LogLevel = LogLevel.DEBUG):
        super().__init__(min_level)
        self._console = console or Console(stderr=True)

    def write(self, record: LogRecord) -> None:
        style = LEVEL_STYLES.get(record.level, "")
        text = Text(f"[{record.level.name}]", style=f"bold {style}".strip())
        text.append(f" {record.message}", style=style)
        tags = context_fields(record)
        if tags:
            text.append(" " + " ".join(tags), style="dim")
        self._console.print(text)
