"""Log record container for covertctl logging."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from datetime import UTC, datetime
from typing import Any

from covertctl.core.logging.levels import LogLevel


@dataclass(frozen=True)
class LogRecord:
    """Immutable log record containing all event metadata."""

    level: LogLevel
    message: str
    timestamp: datetime = field(default_factory=lambda: datetime.now(UTC))
    source: str = ""  # Module/component name
    run_id: str = ""  # One experiment or sweep invocation
    trial: int = -1  # Trial index, -1 when not trial-scoped
    hypothesis: str = ""  # "h0" / "h1"
    duration_ms: float = 0.0
    extra: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def build(
        cls, level: LogLevel, message: str, context: dict[str, str], **kwargs: Any
    ) -> LogRecord:
        """Sort keyword arguments into record fields and ``extra``.

        ``context`` supplies run_id/hypothesis defaults; explicit kwargs win.
        """
        extra = kwargs.pop("extra", None) or {}
        if not isinstance(extra, dict):
            raise TypeError(f"extra must be a dict, got {type(extra).__name__}")
        extra = dict(extra)
        known = {**context}
        for key, value in kwargs.items():
            if key in _INLINE_FIELDS:
                known[key] = value
            else:
                extra[key] = value
        return cls(level=level, message=message, extra=extra, **known)


_INLINE_FIELDS = frozenset(f.name for f in fields(LogRecord)) - {"level", "message", "extra"}
