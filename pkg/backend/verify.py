"""
Non-maximality harness.

Evaluates every family of extremal metrics against the lower bounds for
sup Lambda_n, and checks the auxiliary inequalities the estimates rest on
over sample grids. A record passes when its margin (baseline - value) is
strictly positive; the only metric allowed to meet its baseline is the one
listed in EQUALITY_WHITELIST.
"""

import math
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from backend.bipolar import (
    bipolar_lawson_record, bipolar_otsuki_chain, bipolar_otsuki_record, classify,
    enumerate_bipolar_pairs, sufficient_condition_thresholds
)
from backend.bounds import klein_bound, sup_lower_bound
from backend.clifford import (
    LARGE_RADIUS_SQUARED, clifford_records, count_lattice, disk_area_margin,
    large_radius_margin, printed_inequality_diagnostic, representable,
    small_radius_values
)
from backend.elliptic import legendre_gap, legendre_relation_residual
from backend.lawson import enumerate_pairs, index_diagnostic, lawson_lambda, phi_positivity
from backend.otsuki import (
    OMEGA_PHI_THRESHOLD, OMEGA_PRIME_THRESHOLD, PHI_AT_QUARTER, SMALL_ANGLE_SPLIT,
    enumerate_parameters, omega_closed, omega_closed_beta, omega_minus_phi,
    omega_prime, omega_quadrature, otsuki_lambda, phi, phi_prime, sufficient_margin
)
from config import (
    DEFAULT_GRID_SIZE, EQUALITY_TOLERANCE, MARGIN_WARNING_THRESHOLD, MIN_GRID_SIZE,
    SWEEP_RESIDUAL_FLOOR
)
from models.data_models import (
    BipolarLawsonCase, EnumerationLimits, ExtremalRecord, Family, LawsonParameter,
    SweepResult, VerificationReport
)
from utils.logging_config import get_logger

logger = get_logger(__name__)

QUARTER_PI = math.pi / 4

# Agreement required between independent evaluation paths
QUADRATURE_AGREEMENT = 1e-9
CLOSED_FORM_AGREEMENT = 1e-11
LEGENDRE_AGREEMENT = 1e-12
QUADRATURE_GRID_MARGIN = 0.05
SMALL_ANGLE_START = 1e-4
LATTICE_BRUTE_FORCE_LIMIT = 500
LEGENDRE_MODULI = tuple(i / 10 for i in range(1, 10))


class VerificationError(Exception):
    """Exception raised when the harness cannot evaluate a family."""
    pass


def _as_location(value: Any) -> Any:
    """Plain Python value for a grid location (JSON-friendly)."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (tuple, list)):
        return [_as_location(item) for item in value]
    return value


def _sweep_result(
    name: str,
    description: str,
    margins: Sequence[float],
    locations: Sequence[Any],
    strict: bool,
    details: Optional[Dict[str, Any]] = None
) -> SweepResult:
    """
    Summarise a margin grid into a SweepResult.

    Strict sweeps pass when every margin is > 0; the others when every
    margin is >= SWEEP_RESIDUAL_FLOOR.
    """
    margins = np.asarray(margins, dtype=float)
    if margins.size == 0:
        return SweepResult(name, description, True, math.inf, None, 0, details)

    worst = int(np.argmin(margins))
    worst_margin = float(margins[worst])
    passed = worst_margin > 0 if strict else worst_margin >= SWEEP_RESIDUAL_FLOOR

    result = SweepResult(
        name=name,
        description=description,
        passed=bool(passed),
        worst_margin=worst_margin,
        worst_location=_as_location(locations[worst]),
        samples=int(margins.size),
        details=details
    )
    log = logger.debug if passed else logger.warning
    log(f"Sweep {result}")
    return result


def open_angle_grid(size: int, start: float = 0.0, stop: float = QUARTER_PI) -> np.ndarray:
    """size interior points of (start, stop), evenly spaced."""
    return np.linspace(start, stop, size + 2)[1:-1]


class TheoremVerifier:
    """
    Engine for the non-maximality checks.

    Handles:
    - Enumerating each family within the limits
    - Comparing every record with its baseline
    - Sweeping the auxiliary inequalities over grids
    - Assembling an order-stable report
    """

    def __init__(
        self,
        limits: Optional[EnumerationLimits] = None,
        grid_size: int = DEFAULT_GRID_SIZE,
        equality_tolerance: float = EQUALITY_TOLERANCE
    ) -> None:
        """
        Initialize the verifier.

        Args:
            limits: Enumeration limits; defaults to EnumerationLimits().
            grid_size: Points per sweep grid, at least MIN_GRID_SIZE.
            equality_tolerance: Allowed |margin| of the whitelisted equality.

        Raises:
            ValueError: If grid_size is below MIN_GRID_SIZE or the tolerance is not positive.
        """
        if isinstance(grid_size, bool) or not isinstance(grid_size, int) or grid_size < MIN_GRID_SIZE:
            raise ValueError(f"grid_size must be an integer >= {MIN_GRID_SIZE}, got: {grid_size}")
        if not (math.isfinite(equality_tolerance) and equality_tolerance > 0):
            raise ValueError(f"equality_tolerance must be positive and finite, got: {equality_tolerance}")
        self.limits = limits or EnumerationLimits()
        self.grid_size = grid_size
        self.equality_tolerance = equality_tolerance
        self._progress_callback: Optional[Callable[[int, int, str], None]] = None

    def set_progress_callback(
        self,
        callback: Callable[[int, int, str], None]
    ) -> None:
        """
        Set callback for progress updates.

        Args:
            callback: Function taking (current, total, message) parameters.
        """
        self._progress_callback = callback

    def _report_progress(self, current: int, total: int, message: str) -> None:
        """Report progress if callback is set."""
        if self._progress_callback:
            self._progress_callback(current, total, message)

    # ------------------------------------------------------------------
    # Families
    # ------------------------------------------------------------------

    def verify_family(self, family: Family) -> List[ExtremalRecord]:
        """
        Enumerate one family within the limits.

        Args:
            family: Family to enumerate.

        Returns:
            List[ExtremalRecord]: Records in enumeration order.
        """
        limits = self.limits
        if family is Family.OTSUKI:
            records = [otsuki_lambda(param) for param in enumerate_parameters(limits.max_q)]
        elif family is Family.LAWSON:
            records = [lawson_lambda(param) for param in enumerate_pairs(limits.max_m)]
        elif family is Family.BIPOLAR_LAWSON:
            records = [bipolar_lawson_record(param) for param in enumerate_bipolar_pairs(limits.max_m)]
        elif family is Family.BIPOLAR_OTSUKI:
            records = [bipolar_otsuki_record(param) for param in enumerate_parameters(limits.max_q)]
        elif family is Family.CLIFFORD:
            records = clifford_records(limits.max_r2)
        else:
            raise VerificationError(f"No enumeration for family: {family!r}")

        logger.info(f"Enumerated {len(records)} {family.value} records")
        return records

    def verify_all(self) -> List[ExtremalRecord]:
        """Records of every family, in Family declaration order."""
        records = []
        families = list(Family)
        for i, family in enumerate(families):
            self._report_progress(i, len(families), f"Enumerating {family.value}")
            records.extend(self.verify_family(family))
        self._report_progress(len(families), len(families), "Families enumerated")
        return records

    # ------------------------------------------------------------------
    # Sweeps
    # ------------------------------------------------------------------

    def _sweeps(self) -> List[Callable[[], SweepResult]]:
        return [
            self.sweep_legendre_relation,
            self.sweep_elliptic_inequality,
            self.sweep_phi_bounds,
            self.sweep_phi_nondecreasing,
            self.sweep_phi_prime_below_half,
            self.sweep_omega_increasing,
            self.sweep_omega_minus_phi_increasing,
            self.sweep_omega_minus_phi_threshold,
            self.sweep_omega_prime_small_angle,
            self.sweep_omega_quadrature,
            self.sweep_omega_closed_forms,
            self.sweep_otsuki_value_bounds,
            self.sweep_otsuki_sufficient_margin,
            self.sweep_lawson_index_inequality,
            self.sweep_lawson_phi_positivity,
            self.sweep_lawson_index_readings,
            self.sweep_bipolar_equality,
            self.sweep_bipolar_thresholds,
            self.sweep_bipolar_otsuki_chain,
            self.sweep_clifford_disk_area,
            self.sweep_clifford_large_radius,
            self.sweep_clifford_small_radius,
            self.sweep_lattice_brute_force,
        ]

    def sweep_properties(self) -> List[SweepResult]:
        """
        Run every property sweep, in a fixed order.

        Returns:
            List[SweepResult]: One result per sweep.
        """
        sweeps = self._sweeps()
        results = []
        for i, sweep in enumerate(sweeps):
            self._report_progress(i, len(sweeps), f"Sweep {sweep.__name__}")
            results.append(sweep())
        self._report_progress(len(sweeps), len(sweeps), "Sweeps complete")

        failed = [result.name for result in results if not result.passed]
        logger.info(f"Ran {len(results)} sweeps, {len(failed)} failed")
        return results

    def sweep_legendre_relation(self) -> SweepResult:
        residuals = [abs(legendre_relation_residual(k)) for k in LEGENDRE_MODULI]
        return _sweep_result(
            'legendre_relation',
            "E(k)K(k') + E(k')K(k) - K(k)K(k') = pi/2 within 1e-12, k = 0.1 ... 0.9",
            [LEGENDRE_AGREEMENT - r for r in residuals], LEGENDRE_MODULI, strict=False
        )

    def sweep_elliptic_inequality(self) -> SweepResult:
        k = np.linspace(0.0, 0.999, self.grid_size)
        return _sweep_result(
            'elliptic_inequality',
            "K(k) - 2E(k)/(2 - k^2) >= 0 on [0, 0.999]",
            legendre_gap(k), k, strict=False
        )

    def sweep_phi_bounds(self) -> SweepResult:
        a = np.linspace(QUARTER_PI / self.grid_size, QUARTER_PI, self.grid_size)
        values = phi(a)
        return _sweep_result(
            'phi_bounds',
            "1 <= Phi(a) <= pi/(2 sqrt(2)) on (0, pi/4]",
            np.minimum(values - 1.0, PHI_AT_QUARTER - values), a, strict=False
        )

    def sweep_phi_nondecreasing(self) -> SweepResult:
        a = open_angle_grid(self.grid_size)
        return _sweep_result(
            'phi_nondecreasing',
            "Phi'(a) >= 0 on (0, pi/4)",
            phi_prime(a), a, strict=False
        )

    def sweep_phi_prime_below_half(self) -> SweepResult:
        a = open_angle_grid(self.grid_size)
        return _sweep_result(
            'phi_prime_below_half',
            "Phi'(a) < 1/2 on (0, pi/4)",
            0.5 - phi_prime(a), a, strict=True
        )

    def sweep_omega_increasing(self) -> SweepResult:
        a = np.linspace(QUARTER_PI / self.grid_size, QUARTER_PI, self.grid_size)
        return _sweep_result(
            'omega_increasing',
            "Omega(a1) < Omega(a2) for consecutive grid points a1 < a2 in (0, pi/4]",
            np.diff(omega_closed(a)), a[1:], strict=True
        )

    def sweep_omega_minus_phi_increasing(self) -> SweepResult:
        a = np.linspace(QUARTER_PI / self.grid_size, QUARTER_PI, self.grid_size)
        return _sweep_result(
            'omega_minus_phi_increasing',
            "(2/pi) Omega(a) - Phi(a) strictly increasing on (0, pi/4]",
            np.diff(omega_minus_phi(a)), a[1:], strict=True
        )

    def sweep_omega_minus_phi_threshold(self) -> SweepResult:
        a = np.linspace(SMALL_ANGLE_SPLIT, QUARTER_PI, self.grid_size + 1)[:-1]
        return _sweep_result(
            'omega_minus_phi_threshold',
            "(2/pi) Omega(a) - Phi(a) > (2 sqrt(3) - pi)/(3 sqrt(3)) on [1/5, pi/4)",
            omega_minus_phi(a) - OMEGA_PHI_THRESHOLD, a, strict=True
        )

    def sweep_omega_prime_small_angle(self) -> SweepResult:
        a = np.linspace(SMALL_ANGLE_START, SMALL_ANGLE_SPLIT, self.grid_size)
        return _sweep_result(
            'omega_prime_small_angle',
            "Omega'(a) > (pi/4)/(pi/sqrt(3) - 1) on [1e-4, 1/5]",
            omega_prime(a) - OMEGA_PRIME_THRESHOLD, a, strict=True
        )

    def sweep_omega_quadrature(self) -> SweepResult:
        a = np.linspace(QUADRATURE_GRID_MARGIN, QUARTER_PI - QUADRATURE_GRID_MARGIN, self.grid_size)
        closed = omega_closed(a)
        quadrature = np.array([omega_quadrature(value) for value in a])
        return _sweep_result(
            'omega_quadrature',
            "|Omega closed form - Omega quadrature| < 1e-9 on [0.05, pi/4 - 0.05]",
            QUADRATURE_AGREEMENT - np.abs(closed - quadrature), a, strict=True
        )

    def sweep_omega_closed_forms(self) -> SweepResult:
        a = np.linspace(QUADRATURE_GRID_MARGIN, QUARTER_PI, self.grid_size)
        difference = np.abs(omega_closed(a) - omega_closed_beta(a))
        return _sweep_result(
            'omega_closed_forms',
            "The two Pi closed forms of Omega agree within 1e-11 on [0.05, pi/4]",
            CLOSED_FORM_AGREEMENT - difference, a, strict=True
        )

    def sweep_otsuki_value_bounds(self) -> SweepResult:
        params = enumerate_parameters(self.limits.max_q)
        margins = []
        for param in params:
            value = otsuki_lambda(param).value
            lower = 8.0 * math.pi * param.q
            upper = 4.0 * math.sqrt(2.0) * math.pi ** 2 * param.q
            margins.append(min(value - lower, upper - value))
        return _sweep_result(
            'otsuki_value_bounds',
            "8*pi*q < Lambda_{2p-1}(O_{p/q}) < 4*sqrt(2)*pi^2*q",
            margins, [[param.p, param.q] for param in params], strict=True
        )

    def sweep_otsuki_sufficient_margin(self) -> SweepResult:
        params = enumerate_parameters(self.limits.max_q)
        return _sweep_result(
            'otsuki_sufficient_margin',
            "(2/pi) Omega(a*) - Phi(a*) > (2 sqrt(3) - pi)/(q sqrt(3))",
            [sufficient_margin(param) for param in params],
            [[param.p, param.q] for param in params], strict=True
        )

    def sweep_lawson_index_inequality(self) -> SweepResult:
        """
        The sufficient condition j >= m*E(...) needs m^2 + k^2 >= 4.

        At (1, 1) the index is 1 < pi/2; tau_{1,1} is the Clifford torus and
        its own record certifies it.
        """
        diagnostics = [
            index_diagnostic(param) for param in enumerate_pairs(self.limits.max_m)
            if (param.m, param.k) != (1, 1)
        ]
        return _sweep_result(
            'lawson_index_inequality',
            "j >= m*E(sqrt(m^2 - k^2)/m) for (m, k) != (1, 1)",
            [d.index_margin_printed for d in diagnostics],
            [[d.param.m, d.param.k] for d in diagnostics], strict=False,
            details={'excluded': [[1, 1]]}
        )

    def sweep_lawson_phi_positivity(self) -> SweepResult:
        x = np.linspace(1.0 / self.grid_size, 1.0, self.grid_size)
        return _sweep_result(
            'lawson_phi_positivity',
            "1 + x - E(sqrt(1 - x^2)) > 0 on (0, 1]",
            phi_positivity(x), x, strict=True
        )

    def sweep_lawson_index_readings(self) -> SweepResult:
        diagnostics = [index_diagnostic(param) for param in enumerate_pairs(self.limits.max_m)]
        disagreements = [
            [d.param.m, d.param.k, d.printed_index, d.alternative_index]
            for d in diagnostics if d.disagree
        ]
        if disagreements:
            logger.info(f"Index readings disagree for {len(disagreements)} Lawson pairs")
        return _sweep_result(
            'lawson_index_readings',
            "Lawson non-maximality under both floor(sqrt(S)/2) and floor(sqrt(S/2))",
            [min(d.margin_printed, d.margin_alternative) for d in diagnostics],
            [[d.param.m, d.param.k] for d in diagnostics], strict=True,
            details={'disagreements': disagreements}
        )

    def sweep_bipolar_equality(self) -> SweepResult:
        record = bipolar_lawson_record(LawsonParameter(3, 1))
        difference = abs(record.value - klein_bound(1).value)
        return _sweep_result(
            'bipolar_equality',
            f"Lambda_1 of the bipolar Klein bottle (3,1) equals 12*pi*E(2 sqrt(2)/3) "
            f"within {self.equality_tolerance:g}",
            [self.equality_tolerance - difference], [[3, 1]], strict=False
        )

    def sweep_bipolar_thresholds(self) -> SweepResult:
        """Pairs below the elementary thresholds are certified by their own margin."""
        thresholds = sufficient_condition_thresholds()
        margins, locations = [], []
        for param in enumerate_bipolar_pairs(self.limits.max_m):
            case: BipolarLawsonCase = classify(param.m, param.k)
            if param.m >= thresholds[case.case] or (param.m, param.k) == (3, 1):
                continue
            margins.append(bipolar_lawson_record(param).margin)
            locations.append([param.m, param.k])
        return _sweep_result(
            'bipolar_thresholds',
            "Bipolar Lawson pairs below the sufficient thresholds have positive margin",
            margins, locations, strict=True,
            details={case.value: value for case, value in thresholds.items()}
        )

    def sweep_bipolar_otsuki_chain(self) -> SweepResult:
        params = enumerate_parameters(self.limits.max_q)
        return _sweep_result(
            'bipolar_otsuki_chain',
            "8*pi*(i - 1 + pi/sqrt(3)) > 8*pi*i > c*pi*q > bound for bipolar Otsuki tori",
            [bipolar_otsuki_chain(param).worst_gap for param in params],
            [[param.p, param.q] for param in params], strict=True
        )

    def _representable_radii(self) -> List[int]:
        return [r2 for r2 in range(1, self.limits.max_r2 + 1) if representable(r2)]

    def sweep_clifford_disk_area(self) -> SweepResult:
        radii = self._representable_radii()
        return _sweep_result(
            'clifford_disk_area',
            "N(r^2) >= pi*(r - sqrt(2)/2)^2",
            [disk_area_margin(r2) for r2 in radii], radii, strict=False
        )

    def sweep_clifford_large_radius(self) -> SweepResult:
        radii = [r2 for r2 in self._representable_radii() if r2 >= LARGE_RADIUS_SQUARED]
        return _sweep_result(
            'clifford_large_radius',
            "2*(r - sqrt(2)/2)^2 > r^2 for r^2 >= 6",
            [large_radius_margin(r2) for r2 in radii], radii, strict=True
        )

    def sweep_clifford_small_radius(self) -> SweepResult:
        diagnostics = [printed_inequality_diagnostic(r2) for r2 in small_radius_values()]
        return _sweep_result(
            'clifford_small_radius',
            "4*pi^2*r^2 < 8*pi*(N(r^2) - 1 + pi/sqrt(3)) for r^2 in {1, 2, 4, 5}",
            [d.corrected_margin for d in diagnostics], [d.r2 for d in diagnostics],
            strict=True,
            details={
                'printed_form': "8*pi*N(r^2) > 4*pi*r^2",
                'printed_margins': {str(d.r2): d.printed_margin for d in diagnostics},
            }
        )

    def sweep_lattice_brute_force(self) -> SweepResult:
        lam = np.arange(1, LATTICE_BRUTE_FORCE_LIMIT + 1)
        radius = math.isqrt(LATTICE_BRUTE_FORCE_LIMIT) + 1
        n = np.arange(-radius, radius + 1)
        squares = (n[:, None] ** 2 + n[None, :] ** 2).ravel()
        brute = (squares[None, :] < lam[:, None]).sum(axis=1)
        counted = np.array([count_lattice(int(value)) for value in lam])
        return _sweep_result(
            'lattice_brute_force',
            "count_lattice equals a brute-force double loop for lambda <= 500",
            -np.abs(counted - brute).astype(float), lam, strict=False
        )

    # ------------------------------------------------------------------
    # Report
    # ------------------------------------------------------------------

    def report(
        self,
        records: List[ExtremalRecord],
        sweeps: List[SweepResult]
    ) -> VerificationReport:
        """Aggregate records and sweeps for this verifier's limits."""
        return report(records, sweeps, self.limits, self.equality_tolerance)

    def run(self) -> VerificationReport:
        """Enumerate every family, run every sweep and build the report."""
        return self.report(self.verify_all(), self.sweep_properties())


def verify_family(family: Family, limits: Optional[EnumerationLimits] = None) -> List[ExtremalRecord]:
    """
    Enumerate one family within limits.

    Args:
        family: Family to enumerate.
        limits: Enumeration limits; defaults to EnumerationLimits().

    Returns:
        List[ExtremalRecord]: Deterministically ordered records.
    """
    return TheoremVerifier(limits).verify_family(family)


def sweep_properties(grid_size: int = DEFAULT_GRID_SIZE,
                     limits: Optional[EnumerationLimits] = None) -> List[SweepResult]:
    """
    Run every property sweep.

    Raises:
        ValueError: If grid_size is below MIN_GRID_SIZE.
    """
    return TheoremVerifier(limits, grid_size).sweep_properties()


def report(
    records: List[ExtremalRecord],
    sweeps: List[SweepResult],
    limits: Optional[EnumerationLimits] = None,
    equality_tolerance: float = EQUALITY_TOLERANCE
) -> VerificationReport:
    """
    Check every record's margin and aggregate the verdict.

    A record violates the harness when its baseline is not the bound for its
    topology and index, when it is whitelisted but misses equality by more
    than equality_tolerance, or when it is not whitelisted and its margin is
    not strictly positive. Positive margins below MARGIN_WARNING_THRESHOLD
    produce a warning.

    Args:
        records: Records to check, in the order they should be reported.
        sweeps: Sweep results.
        limits: Limits the records were produced with.
        equality_tolerance: Allowed |margin| of a whitelisted record.

    Returns:
        VerificationReport: Report with verdict.
    """
    violations, warnings = [], []

    for record in records:
        label = record.label()
        expected_baseline = sup_lower_bound(record.topology, record.index).value
        if record.baseline != expected_baseline:
            violations.append(f"{label}: baseline {record.baseline!r} is not the bound {expected_baseline!r}")
            continue

        if record.is_whitelisted():
            if abs(record.margin) > equality_tolerance:
                violations.append(f"{label}: equality case misses its baseline by {record.margin!r}")
            continue

        if not record.margin > 0:
            violations.append(f"{label}: margin {record.margin!r} is not positive")
        elif record.margin < MARGIN_WARNING_THRESHOLD:
            warnings.append(f"{label}: margin {record.margin!r} below {MARGIN_WARNING_THRESHOLD}, tighten tolerances")

    for message in warnings:
        logger.warning(message)
    for message in violations:
        logger.error(f"Violation: {message}")

    result = VerificationReport(
        records=list(records),
        sweeps=list(sweeps),
        limits=limits.as_dict() if limits else {},
        violations=violations,
        warnings=warnings
    )
    logger.info(f"Verification verdict: {result.verdict} ({result})")
    return result
