"""
Structured Logging Utility for linkforge
Consistent logger setup for the library and the CLI. Console output goes to stderr
so that JSON written to stdout stays machine readable.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional, Union


class LinkforgeLogger:
    """Centralized logging configuration for linkforge"""

    _loggers: dict[str, logging.Logger] = {}

    @classmethod
    def get_logger(
        cls,
        name: str,
        log_file: Optional[str] = None,
        level: Optional[Union[int, str]] = None,
        console: bool = True,
    ) -> logging.Logger:
        """
        Get or create a logger with consistent formatting

        Args:
            name: Logger name (usually __name__)
            log_file: Optional log file path (defaults to LINKFORGE_LOG_FILE)
            level: Logging level (defaults to LINKFORGE_LOG_LEVEL)
            console: Whether to log to stderr (default: True)

        Returns:
            Configured logger instance
        """
        if name in cls._loggers:
            return cls._loggers[name]

        if level is None or log_file is None:
            from config.config import get_config

            settings = get_config().logging
            level = level if level is not None else settings.log_level
            log_file = log_file if log_file is not None else settings.log_file

        logger = logging.getLogger(name)
        logger.setLevel(level)
        logger.propagate = False
        logger.handlers.clear()

        formatter = logging.Formatter(
            fmt="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )

        if console:
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setLevel(level)
            console_handler.setFormatter(formatter)
            logger.addHandler(console_handler)

        if log_file:
            log_path = Path(log_file).expanduser().resolve()
            log_path.parent.mkdir(parents=True, exist_ok=True)

            file_handler = RotatingFileHandler(
                log_path, maxBytes=10 * 1024 * 1024, backupCount=5  # 10MB
            )
            file_handler.setLevel(level)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

        cls._loggers[name] = logger
        return logger

    @classmethod
    def set_level(cls, level: Union[int, str]) -> None:
        """Change the level of every logger created so far (CLI --log-level)."""
        for logger in cls._loggers.values():
            logger.setLevel(level)
            for handler in logger.handlers:
                handler.setLevel(level)


def get_logger(name: str, **kwargs) -> logging.Logger:
    """Convenience function to get a logger"""
    return LinkforgeLogger.get_logger(name, **kwargs)
