#!/usr/bin/env python3
"""
Extremal Spectra command-line application

Computes the eigenvalue functionals Lambda_i of the known extremal metrics
on tori and Klein bottles (Otsuki tori, Lawson tau-surfaces, their bipolar
surfaces, the Clifford torus) and checks each against the lower bound for
sup Lambda_i.

Usage:
    python main.py otsuki --p 2 --q 3
    python main.py verify --max-q 30 --max-m 100 --max-r2 10000

Requirements:
    - Python 3.10+
    - numpy, scipy, pandas, tqdm

Setup:
    1. pip install -r requirements.txt
    2. python main.py --help
"""

import os
import sys
from typing import List, Optional

# Ensure the application directory is in the path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from frontend.cli import run
from utils.logging_config import setup_logging, get_logger, log_error
from config import EXIT_INVALID


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for the application.

    Args:
        argv: Command-line arguments without the program name.

    Returns:
        int: Exit code (0 ok, 1 violation, 2 invalid input).
    """
    # Setup logging (this also sets up global exception handler)
    setup_logging()
    logger = get_logger(__name__)

    try:
        return run(sys.argv[1:] if argv is None else argv)
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return EXIT_INVALID
    except Exception as e:
        log_error(f"Fatal error: {e}", e)
        logger.critical(f"Fatal error: {e}", exc_info=True)
        return EXIT_INVALID


if __name__ == '__main__':
    sys.exit(main())
