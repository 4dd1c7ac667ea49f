import logging
import sys
from typing import Optional, TextIO

LOG_LEVELS = ["debug", "info", "warning", "error", "critical"]
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


class ColoredFormatter(logging.Formatter):
    """Log formatter that colours the timestamp, the delimiters and the level name."""

    COLORS = {
        "DEBUG": "\033[94m",  # Blue
        "INFO": "\033[92m",  # Green
        "WARNING": "\033[93m",  # Yellow
        "ERROR": "\033[91m",  # Red
        "CRITICAL": "\033[41m\033[37m",  # White on Red background
        "DATE": "\033[90m",  # Dark gray
        "DELIMITER": "\033[36m",  # Cyan
        "RESET": "\033[0m",
    }

    def __init__(self, fmt: str = LOG_FORMAT, use_color: bool = True):
        super().__init__(fmt)
        self.use_color = use_color

    def _paint(self, key: str, text: str) -> str:
        return f"{self.COLORS[key]}{text}{self.COLORS['RESET']}"

    def format(self, record):
        formatted_msg = super().format(record)
        if not self.use_color:
            return formatted_msg

        # "<timestamp> - <LEVEL> - <message>"
        parts = formatted_msg.split(" - ", 2)
        level_name = record.levelname
        if len(parts) == 3 and level_name in self.COLORS:
            timestamp, _, message = parts
            delimiter = self._paint("DELIMITER", " - ")
            level = self._paint(level_name, f"{level_name:8}")
            return f"{self._paint('DATE', timestamp)}{delimiter}{level} - {message}"

        if level_name in self.COLORS:
            return self._paint(level_name, formatted_msg)
        return formatted_msg


def setup_logging(level: str, stream: Optional[TextIO] = None) -> None:
    """Configure the root logger with one coloured handler on stderr."""
    numeric_level = getattr(logging, level.upper(), None)
    if not isinstance(numeric_level, int):
        raise ValueError(f"Invalid log level: {level}")

    logger = logging.getLogger()
    logger.setLevel(numeric_level)

    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    stream = stream if stream is not None else sys.stderr
    handler = logging.StreamHandler(stream)
    handler.setLevel(numeric_level)
    handler.setFormatter(ColoredFormatter(use_color=hasattr(stream, "isatty") and stream.isatty()))

    logger.addHandler(handler)
