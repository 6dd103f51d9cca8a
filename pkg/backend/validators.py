"""
Validation of command-line arguments.

The validate_* functions return (is_valid, parsed_value or None); the
*_arg wrappers adapt them to argparse types, so bad arguments are reported
on standard error and the process exits with status 2.
"""

import argparse
import math
from typing import Optional, Tuple

from utils.file_utils import is_writable_target
from utils.logging_config import get_logger

logger = get_logger(__name__)

# float repr round-trips with 17 significant digits
MAX_PRECISION = 17


def validate_positive_int(value: str) -> Tuple[bool, Optional[int]]:
    """
    Validate and parse a positive integer.

    Args:
        value: String to validate.

    Returns:
        Tuple[bool, Optional[int]]: (is_valid, parsed_value or None)
    """
    try:
        parsed = int(value)
    except (TypeError, ValueError):
        return False, None
    if parsed >= 1:
        return True, parsed
    return False, None


def validate_precision(value: str) -> Tuple[bool, Optional[int]]:
    """
    Validate a print precision in significant digits.

    Returns:
        Tuple[bool, Optional[int]]: Valid for 1 to MAX_PRECISION.
    """
    is_valid, parsed = validate_positive_int(value)
    if is_valid and parsed <= MAX_PRECISION:
        return True, parsed
    return False, None


def validate_real(value: str) -> Tuple[bool, Optional[float]]:
    """Validate and parse a finite real number."""
    try:
        parsed = float(value)
    except (TypeError, ValueError):
        return False, None
    if math.isfinite(parsed):
        return True, parsed
    return False, None


def validate_tolerance(value: str) -> Tuple[bool, Optional[float]]:
    """Validate a tolerance: finite and strictly positive."""
    is_valid, parsed = validate_real(value)
    if is_valid and parsed > 0:
        return True, parsed
    return False, None


def validate_output_path(filepath: str) -> Tuple[bool, str]:
    """
    Validate an output file path.

    Returns:
        Tuple[bool, str]: (is_valid, message) with an empty message when valid.
    """
    if not filepath or not filepath.strip():
        return False, "output path is empty"
    if not is_writable_target(filepath):
        return False, f"cannot write to '{filepath}'"
    return True, ''


def _argument_type(validator, description: str):
    def parse(value: str):
        is_valid, parsed = validator(value)
        if not is_valid:
            logger.debug(f"Rejected argument {value!r}: expected {description}")
            raise argparse.ArgumentTypeError(f"expected {description}, got '{value}'")
        return parsed
    parse.__name__ = description
    return parse


positive_int_arg = _argument_type(validate_positive_int, 'a positive integer')
precision_arg = _argument_type(validate_precision, f'an integer between 1 and {MAX_PRECISION}')
real_arg = _argument_type(validate_real, 'a finite number')
tolerance_arg = _argument_type(validate_tolerance, 'a positive number')


def output_path_arg(value: str) -> str:
    """argparse type for an output file path."""
    is_valid, message = validate_output_path(value)
    if not is_valid:
        raise argparse.ArgumentTypeError(message)
    return value
