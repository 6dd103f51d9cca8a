"""
Configuration constants for the Extremal Spectra toolkit.
"""

import logging
import os

# Paths
BASE_DIR = os.path.dirname(os.path.abspath(__file__))
LOG_DIR = os.path.join(BASE_DIR, 'logs')

# Logging configuration
LOG_LEVEL = logging.DEBUG
LOG_FILE_SIZE = 10 * 1024 * 1024  # 10MB
LOG_BACKUP_COUNT = 5
LOG_TO_FILE = True
CONSOLE_LOG_LEVEL = logging.WARNING

# Elliptic kernel
# K and Pi treat k within this gap of 1 as the divergent endpoint
K_DIVERGENCE_GAP = 1e-15

# Otsuki parameter solving
# beta = sqrt(1 - tan^2 a) rounds to 1 below a ~ 3e-8
OMEGA_BRACKET_EPS = 1e-6
OMEGA_XTOL = 1e-13
OMEGA_RESIDUAL_TOL = 1e-10
OMEGA_MAX_ITER = 200

# Adaptive quadrature (QUADPACK through scipy)
QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-13
QUAD_LIMIT = 200

# Geodesic tracing
GEODESIC_STEP_TOL = 1e-9
GEODESIC_CLOSURE_TOL = 1e-6
GEODESIC_MIN_ARC_SAMPLES = 32
GEODESIC_MAX_ARC_SAMPLES = 1 << 16
GEODESIC_MAX_EXPORT_ROWS = 10_000

# Verification
MARGIN_WARNING_THRESHOLD = 1e-9
EQUALITY_TOLERANCE = 1e-12
SWEEP_RESIDUAL_FLOOR = -1e-12

# Default enumeration limits
DEFAULT_MAX_Q = 30
DEFAULT_MAX_M = 100
DEFAULT_MAX_R2 = 10_000
DEFAULT_GRID_SIZE = 1000
MIN_GRID_SIZE = 100

# The only extremal metric allowed to meet its baseline: the bipolar
# Lawson Klein bottle with (m, k) = (3, 1)
EQUALITY_WHITELIST = frozenset({
    ('BipolarLawson', (3, 1)),
})

# Output
DEFAULT_PRECISION = 12
OUTPUT_FORMATS = ['human', 'json', 'csv']
RECORD_COLUMNS = [
    'family', 'params', 'topology', 'index',
    'value', 'value_kind', 'baseline', 'margin'
]
TRACE_COLUMNS = ['s', 'phi', 'theta']

# Exit codes
EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2

# Application settings
APP_NAME = 'Extremal Spectra'
APP_VERSION = '1.0.0'
REPORT_FORMAT_VERSION = '1.0'
