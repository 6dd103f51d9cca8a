"""
Logging configuration for the Extremal Spectra toolkit.
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

from config import (
    LOG_DIR, LOG_LEVEL, LOG_FILE_SIZE, LOG_BACKUP_COUNT, LOG_TO_FILE,
    CONSOLE_LOG_LEVEL, BASE_DIR
)

# Error log file path (in project root)
ERROR_LOG_FILE = os.path.join(BASE_DIR, 'error.log')


def setup_logging(
    console_level: int = CONSOLE_LOG_LEVEL,
    log_to_file: bool = LOG_TO_FILE,
    log_dir: Optional[str] = None
) -> logging.Logger:
    """
    Configure application logging with file and console handlers.
    Also sets up global exception handling to log all errors.

    The console handler writes to standard error so that standard output
    carries only the requested JSON, CSV or human-readable payload.

    Args:
        console_level: Minimum level echoed on standard error.
        log_to_file: Whether to attach the rotating and error-file handlers.
        log_dir: Directory for app.log. Uses config default if None.

    Returns:
        logging.Logger: Configured root logger instance.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(LOG_LEVEL)

    if root_logger.handlers:
        root_logger.handlers.clear()

    log_format = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    if log_to_file:
        log_dir = log_dir or LOG_DIR
        os.makedirs(log_dir, exist_ok=True)

        # Main application log (rotating)
        file_handler = RotatingFileHandler(
            os.path.join(log_dir, 'app.log'),
            maxBytes=LOG_FILE_SIZE,
            backupCount=LOG_BACKUP_COUNT
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(log_format)

        # Error log (all errors go here)
        error_handler = logging.FileHandler(ERROR_LOG_FILE, mode='a')
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(log_format)

        root_logger.addHandler(file_handler)
        root_logger.addHandler(error_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(log_format)
    root_logger.addHandler(console_handler)

    # Set up global exception handler
    sys.excepthook = global_exception_handler

    return root_logger


def global_exception_handler(exc_type, exc_value, exc_traceback):
    """
    Global exception handler that logs all unhandled exceptions to error.log.

    Args:
        exc_type: Exception type
        exc_value: Exception value
        exc_traceback: Exception traceback
    """
    # Don't log KeyboardInterrupt
    if issubclass(exc_type, KeyboardInterrupt):
        sys.__excepthook__(exc_type, exc_value, exc_traceback)
        return

    logger = logging.getLogger('unhandled')
    logger.critical(f"Unhandled exception: {exc_type.__name__}: {exc_value}",
                    exc_info=(exc_type, exc_value, exc_traceback))

    sys.__excepthook__(exc_type, exc_value, exc_traceback)


def log_error(message: str, exception: Optional[Exception] = None) -> None:
    """
    Log an error through the logging system.

    When file logging is enabled the ERROR handler installed by
    setup_logging appends the record to error.log.

    Args:
        message: Error message
        exception: Optional exception object
    """
    logger = logging.getLogger('error')
    if exception:
        logger.error(message, exc_info=exception)
    else:
        logger.error(message)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance with the specified name.

    Args:
        name: Logger name, typically __name__ of the calling module.

    Returns:
        logging.Logger: Logger instance.
    """
    return logging.getLogger(name)


def set_console_level(level: int) -> None:
    """
    Change the level of the standard-error console handler.

    Args:
        level: New minimum level, e.g. logging.INFO for --verbose.
    """
    for handler in logging.getLogger().handlers:
        if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
            handler.setLevel(level)
