"""
File helpers for report and trace output.
"""

import os
from typing import Optional

from utils.logging_config import get_logger

logger = get_logger(__name__)


def ensure_directory(dirpath: Optional[str]) -> bool:
    """
    Create a directory if it doesn't exist.

    Args:
        dirpath: Directory path; empty or None means the working directory.

    Returns:
        bool: True if the directory exists or was created.

    Raises:
        OSError: If the directory cannot be created.
    """
    if not dirpath:
        return True
    try:
        os.makedirs(dirpath, exist_ok=True)
        return True
    except OSError as e:
        logger.error(f"Error creating directory {dirpath}: {e}")
        raise


def is_writable_target(filepath: str) -> bool:
    """
    Check that filepath can be written: not a directory, parent writable or creatable.
    """
    if os.path.isdir(filepath):
        logger.warning(f"Output path is a directory: {filepath}")
        return False

    parent = os.path.dirname(os.path.abspath(filepath))
    while not os.path.exists(parent):
        parent = os.path.dirname(parent)
    if not os.access(parent, os.W_OK):
        logger.warning(f"Output directory is not writable: {parent}")
        return False
    return True


def write_text(filepath: str, text: str) -> int:
    """
    Write text with LF line endings, creating parent directories.

    Returns:
        int: Number of characters written.
    """
    ensure_directory(os.path.dirname(filepath))
    with open(filepath, 'w', encoding='utf-8', newline='\n') as f:
        written = f.write(text)
    logger.debug(f"Wrote {written:,} characters to {filepath}")
    return written
