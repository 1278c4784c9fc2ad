"""Logging utilities"""

import logging
import sys
import threading
from collections import deque
from datetime import datetime
from pathlib import Path
from typing import Optional

from utils.constants import APP_NAME

LOG_BUFFER_MAXLEN = 10_000

# Library modules log through logging.getLogger(__name__) under these roots;
# the run handlers are attached to them so their records reach the run log.
_LIBRARY_ROOTS = ("core", "storage")


class Logger:
    """Run logger with a per-run log file and console output.

    Console-only until :meth:`configure` is called, so importing the
    package (tests, worker processes) never creates files.
    """

    def __init__(self):
        self.logger = logging.getLogger(APP_NAME)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        self._console_handler = logging.StreamHandler(sys.stderr)
        self._console_handler.setLevel(logging.INFO)
        self._console_handler.setFormatter(logging.Formatter('%(message)s'))
        self.logger.addHandler(self._console_handler)

        self._file_handler: Optional[logging.FileHandler] = None
        self.log_file: Optional[Path] = None
        self._log_buffer: deque = deque(maxlen=LOG_BUFFER_MAXLEN)
        self._buffer_lock = threading.Lock()

    def configure(self, log_dir: Optional[Path], console_level: int = logging.INFO) -> Optional[Path]:
        """Open ``run-<timestamp>.log`` under *log_dir* and set console verbosity.

        Returns the log file path, or None when file logging is unavailable.
        """
        self._console_handler.setLevel(console_level)
        if self._file_handler is not None:
            self.logger.removeHandler(self._file_handler)
            self._file_handler.close()
            self._file_handler = None
            self.log_file = None

        if log_dir is not None:
            try:
                log_dir.mkdir(parents=True, exist_ok=True)
                timestamp = datetime.now().strftime("%Y%m%d-%H%M%S")
                log_file = log_dir / f"run-{timestamp}.log"
                file_handler = logging.FileHandler(log_file, encoding='utf-8')
                file_handler.setLevel(logging.DEBUG)
                file_handler.setFormatter(logging.Formatter(
                    '[%(asctime)s] [%(levelname)s] %(message)s',
                    datefmt='%Y-%m-%d %H:%M:%S'
                ))
                self.logger.addHandler(file_handler)
                self._file_handler = file_handler
                self.log_file = log_file
            except OSError as e:
                print(f"Warning: Failed to initialize file logging: {e}", file=sys.stderr)
                print(f"Log directory attempted: {log_dir}", file=sys.stderr)

        for name in _LIBRARY_ROOTS:
            lib = logging.getLogger(name)
            lib.setLevel(logging.DEBUG)
            lib.propagate = False
            for h in list(lib.handlers):
                lib.removeHandler(h)
            lib.addHandler(self._console_handler)
            if self._file_handler is not None:
                lib.addHandler(self._file_handler)
        return self.log_file

    def info(self, message: str):
        """Log info message"""
        self.logger.info(message)
        self._remember("INFO", message)

    def warning(self, message: str):
        """Log warning message"""
        self.logger.warning(message)
        self._remember("WARNING", message)

    def error(self, message: str):
        """Log error message"""
        self.logger.error(message)
        self._remember("ERROR", message)

    def success(self, message: str):
        """Log success message"""
        self.logger.info(f"SUCCESS: {message}")
        self._remember("SUCCESS", message)

    def debug(self, message: str):
        """Log debug message"""
        self.logger.debug(message)
        self._remember("DEBUG", message)

    def _remember(self, level: str, message: str) -> None:
        with self._buffer_lock:
            self._log_buffer.append((level, message))

    def get_log_file(self) -> Optional[Path]:
        """Get the log file path"""
        return self.log_file

    def get_recent_logs(self, count: int = 100) -> list:
        """Get recent log entries"""
        with self._buffer_lock:
            buf = list(self._log_buffer)
        return buf[-count:]

    def clear_buffer(self):
        with self._buffer_lock:
            self._log_buffer.clear()


# Global logger instance
logger = Logger()
