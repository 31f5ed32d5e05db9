"""covertctl logging.

Usage:
    from covertctl.core.logging import get_logger

    logger = get_logger()
    logger.warning("window is vacuous", source="analysis", a=-0.5)
    with logger.run_scope("3f2a9c", hypothesis="h1"):
        logger.experiment("batch finished", duration_ms=812.4)
"""

from covertctl.core.logging.handlers import ConsoleHandler, FileHandler  # noqa: F401
from covertctl.core.logging.levels import LogLevel  # noqa: F401
from covertctl.core.logging.manager import LogManager, get_logger  # noqa: F401
from covertctl.core.logging.records import LogRecord  # noqa: F401
