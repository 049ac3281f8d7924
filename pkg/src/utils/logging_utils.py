#!/usr/bin/env python3
# src/utils/logging_utils.py

import logging
import os
import sys
import time
from logging.handlers import RotatingFileHandler
from typing import Optional

from constants import (
    APP_LOGGER_NAME, DEFAULT_LOG_BACKUP_COUNT, DEFAULT_LOG_DIR, DEFAULT_LOG_FILE,
    DEFAULT_LOG_MAX_SIZE_MB,
)

LOG_FORMAT = '%(emoji)s %(asctime)s - %(name)s - %(message)s'


class EmojiFormatter(logging.Formatter):
    """Custom formatter that adds emojis to log messages"""

    EMOJI_LEVELS = {
        logging.DEBUG: "🐛  | ",
        logging.INFO: "🔵  | ",
        logging.WARNING: "⚠️  | ",
        logging.ERROR: "❌  | ",
        logging.CRITICAL: "🔥  | "
    }

    def format(self, record: logging.LogRecord) -> str:
        """
        Format log record with emoji

        Args:
            record: Log record to format

        Returns:
            Formatted log string
        """
        record.emoji = self.EMOJI_LEVELS.get(record.levelno, "")
        return super().format(record)

    def formatTime(self, record: logging.LogRecord, datefmt: Optional[str] = None) -> str:
        """Timestamp without milliseconds"""
        created = self.converter(record.created)
        if datefmt:
            return time.strftime(datefmt, created)
        return time.strftime("%Y-%m-%d %H:%M:%S", created)


def setup_logging(log_dir: str = DEFAULT_LOG_DIR, log_file: str = DEFAULT_LOG_FILE,
                  debug_mode: bool = False, max_size_mb: int = DEFAULT_LOG_MAX_SIZE_MB,
                  backup_count: int = DEFAULT_LOG_BACKUP_COUNT,
                  log_to_file: bool = False) -> logging.Logger:
    """
    Configure logging with a console handler and an optional rotating file handler

    Console output goes to stderr; stdout carries the command payload only.

    Args:
        log_dir: Directory for log files
        log_file: Log file name
        debug_mode: Whether to enable debug logging
        max_size_mb: Size at which the log file rotates
        backup_count: Rotated files to keep
        log_to_file: Add the rotating file handler

    Returns:
        Configured application logger
    """
    log_level = logging.DEBUG if debug_mode else logging.WARNING

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)

    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(EmojiFormatter(LOG_FORMAT))
    root_logger.addHandler(console_handler)

    if log_to_file:
        os.makedirs(log_dir, exist_ok=True)
        file_handler = RotatingFileHandler(
            os.path.join(log_dir, log_file),
            maxBytes=((1024 * 1024) * max_size_mb),  # Convert MB to bytes
            backupCount=backup_count,
            encoding='utf-8'
        )
        file_handler.setLevel(logging.DEBUG if debug_mode else logging.INFO)
        file_handler.setFormatter(EmojiFormatter(LOG_FORMAT))
        root_logger.addHandler(file_handler)
        # the root level gates the file handler too
        root_logger.setLevel(min(log_level, logging.INFO))

    logger = logging.getLogger(APP_LOGGER_NAME)
    logger.debug("🚀 Logging initialized")
    return logger
