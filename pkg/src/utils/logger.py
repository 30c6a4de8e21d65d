"""Logging utility for the Salem Entropy Toolkit."""

import logging
import os
from datetime import datetime
from typing import Optional

from platformdirs import user_log_dir

from ..config import APP_NAME

LOG_FORMAT = '[%(asctime)s] %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


class SalemLogger:
    """Singleton logger writing one file per day plus errors to stderr."""

    _instance: Optional['SalemLogger'] = None
    _logger: Optional[logging.Logger] = None

    def __new__(cls) -> 'SalemLogger':
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if self._logger is None:
            self._setup_logger()

    def _setup_logger(self) -> None:
        self._logger = logging.getLogger('salem_entropy')
        self._logger.setLevel(logging.DEBUG)
        self._logger.propagate = False
        self._logger.handlers.clear()
        formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

        # No file log when the log directory is not writable
        try:
            log_dir = user_log_dir(APP_NAME, appauthor=False)
            os.makedirs(log_dir, exist_ok=True)
            log_file = os.path.join(log_dir, f"{datetime.now():%Y-%m-%d}.log")
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(formatter)
            self._logger.addHandler(file_handler)
        except OSError:
            pass

        console_handler = logging.StreamHandler()
        console_handler.setLevel(logging.ERROR)
        console_handler.setFormatter(formatter)
        self._logger.addHandler(console_handler)

    @property
    def logger(self) -> logging.Logger:
        return self._logger

    def debug(self, message: str) -> None:
        self._logger.debug(message)

    def info(self, message: str) -> None:
        self._logger.info(message)

    def warning(self, message: str) -> None:
        self._logger.warning(message)

    def error(self, message: str) -> None:
        self._logger.error(message)


logger = SalemLogger()


def get_logger() -> SalemLogger:
    """Get the global logger instance."""
    return logger
