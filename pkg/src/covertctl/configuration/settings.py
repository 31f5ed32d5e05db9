"""
Module: covertctl.configuration.settings

Application metadata and filesystem locations.
"""

import os
from pathlib import Path

from covertctl.constants import APP_NAME, APP_VERSION, LOG_DIR_NAME
from covertctl.types import ConfigPath


class PathConfig:
    def __init__(self) -> None:
        xdg_data = os.environ.get("XDG_DATA_HOME", str(Path.home() / ".local" / "share"))
        self.data_dir: ConfigPath = Path(xdg_data) / APP_NAME
        self.log_dir: ConfigPath = self.data_dir / LOG_DIR_NAME


class ApplicationSettings:
    def __init__(self) -> None:
        self.version = APP_VERSION
        self.name = APP_NAME
        self.paths = PathConfig()
