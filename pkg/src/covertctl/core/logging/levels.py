"""Log level definitions for covertctl logging."""

from enum import IntEnum


class LogLevel(IntEnum):
    """Standard levels (10-40) plus EXPERIMENT for harness lifecycle events."""

    DEBUG = 10
    INFO = 20
    WARNING = 30
    ERROR = 40
    EXPERIMENT = 50
