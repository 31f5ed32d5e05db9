"""Process-wide log manager shared by the CLI and the Monte Carlo workers."""

from __future__ import annotations

import threading
from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from functools import partialmethod
from pathlib import Path
from typing import Any

from rich.console import Console

from covertctl.core.logging.handlers import ConsoleHandler, FileHandler
from covertctl.core.logging.levels import LogLevel
from covertctl.core.logging.records import LogRecord

_run_context: ContextVar[dict[str, str] | None] = ContextVar("covertctl_run_context", default=None)


class LogManager:
    """Singleton routing records to the log file and, with --verbose, to stderr."""

    _instance: LogManager | None = None
    _instance_lock = threading.RLock()

    def __init__(self) -> None:
        self._lock = threading.RLock()
        self._file_handler = FileHandler()
        self._console_handler = ConsoleHandler()
        self._console_handler.disable()

    @property
    def _handlers(self) -> tuple[FileHandler, ConsoleHandler]:
        return self._file_handler, self._console_handler

    @classmethod
    def get_instance(cls) -> LogManager:
        with cls._instance_lock:
            if cls._instance is None:
                cls._instance = cls()
            return cls._instance

    @classmethod
    def reset_instance(cls) -> None:
        """Reset singleton (for testing)."""
        with cls._instance_lock:
            cls._instance = None

    @property
    def verbose(self) -> bool:
        return self._console_handler.enabled

    @property
    def log_path(self) -> Path:
        return self._file_handler.log_path

    def set_verbose(self, enabled: bool) -> None:
        self._console_handler.set_enabled(enabled)

    def set_console(self, console: Console) -> None:
        """Render verbose output to ``console`` instead of stderr."""
        with self._lock:
            replacement = ConsoleHandler(console)
            replacement.set_enabled(self.verbose)
            self._console_handler = replacement

    @contextmanager
    def run_scope(self, run_id: str, hypothesis: str = "") -> Iterator[None]:
        """Tag records logged in this context with ``run_id`` and ``hypothesis``."""
        scope = {"run_id": run_id}
        if hypothesis:
            scope["hypothesis"] = hypothesis
        token = _run_context.set({**(_run_context.get() or {}), **scope})
        try:
            yield
        finally:
            _run_context.reset(token)

    def log(self, record: LogRecord) -> None:
        with self._lock:
            for handler in self._handlers:
                handler.emit(record)

    def _log_at(self, level: LogLevel, message: str, **kwargs: Any) -> None:
        self.log(LogRecord.build(level, message, _run_context.get() or {}, **kwargs))

    info = partialmethod(_log_at, LogLevel.INFO)
    warning = partialmethod(_log_at, LogLevel.WARNING)
    error = partialmethod(_log_at, LogLevel.ERROR)
    experiment = partialmethod(_log_at, LogLevel.EXPERIMENT)


def get_logger() -> LogManager:
    """Get the global LogManager instance."""
    return LogManager.get_instance()
