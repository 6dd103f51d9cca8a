"""
Data models for the Extremal Spectra toolkit.

Contains dataclasses for the surface families' parameters, extremal metric
records and verification reports.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from config import DEFAULT_MAX_M, DEFAULT_MAX_Q, DEFAULT_MAX_R2, EQUALITY_WHITELIST


class Topology(Enum):
    """Closed surface carrying the extremal metric."""
    TORUS = "torus"
    KLEIN = "klein"


class Family(Enum):
    """Known families of extremal metrics."""
    OTSUKI = "Otsuki"
    LAWSON = "Lawson"
    BIPOLAR_LAWSON = "BipolarLawson"
    BIPOLAR_OTSUKI = "BipolarOtsuki"
    CLIFFORD = "Clifford"


class ValueKind(Enum):
    """Whether a record's value is the exact functional or an upper bound for it."""
    EXACT = "exact"
    UPPER_BOUND = "upper-bound"


class BipolarCase(Enum):
    """Congruence class of m*k deciding the bipolar Lawson surface type."""
    EVEN = "even"
    ONE_MOD_FOUR = "one-mod-four"
    THREE_MOD_FOUR = "three-mod-four"


def _require_positive_int(value: Any, name: str) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{name} must be an integer, got: {value!r}")
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got: {value}")


@dataclass(frozen=True)
class EnumerationLimits:
    """
    Enumeration limits for the verification harness.

    Attributes:
        max_q: Largest Otsuki denominator q
        max_m: Largest Lawson frequency m
        max_r2: Largest squared Clifford lattice radius
    """
    max_q: int = DEFAULT_MAX_Q
    max_m: int = DEFAULT_MAX_M
    max_r2: int = DEFAULT_MAX_R2

    def __post_init__(self) -> None:
        _require_positive_int(self.max_q, 'max_q')
        _require_positive_int(self.max_m, 'max_m')
        _require_positive_int(self.max_r2, 'max_r2')

    def as_dict(self) -> Dict[str, int]:
        return {'max_q': self.max_q, 'max_m': self.max_m, 'max_r2': self.max_r2}


@dataclass(frozen=True)
class OtsukiParameter:
    """
    Reduced rational p/q labelling the Otsuki torus O_{p/q}.

    Attributes:
        p: Numerator
        q: Denominator

    Raises:
        ValueError: Unless gcd(p, q) = 1 and 1/2 < p/q < sqrt(2)/2 strictly.
    """
    p: int
    q: int

    def __post_init__(self) -> None:
        """Validate the fraction with exact integer comparisons."""
        _require_positive_int(self.p, 'p')
        _require_positive_int(self.q, 'q')

        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"p/q must be reduced, got: {self.p}/{self.q}")

        # 1/2 < p/q  <=>  q < 2p ;  p/q < sqrt(2)/2  <=>  2p^2 < q^2
        if not 2 * self.p > self.q:
            raise ValueError(f"p/q must exceed 1/2, got: {self.p}/{self.q}")
        if not 2 * self.p * self.p < self.q * self.q:
            raise ValueError(f"p/q must be below sqrt(2)/2, got: {self.p}/{self.q}")

    def as_dict(self) -> Dict[str, int]:
        return {'p': self.p, 'q': self.q}

    def __repr__(self) -> str:
        return f"OtsukiParameter({self.p}/{self.q})"


@dataclass(frozen=True)
class OtsukiAngle:
    """
    Minimal latitude a of the closed reduced geodesic.

    Attributes:
        a: Angle in radians, 0 < a <= pi/4

    Raises:
        ValueError: If a is outside (0, pi/4] or non-finite.
    """
    a: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.a) or not 0.0 < self.a <= math.pi / 4:
            raise ValueError(f"Otsuki angle must lie in (0, pi/4], got: {self.a}")

    @property
    def beta(self) -> float:
        """beta = sqrt(1 - tan^2 a) = sqrt(cos 2a) / cos a, in [0, 1)."""
        return math.sqrt(max(math.cos(2.0 * self.a), 0.0)) / math.cos(self.a)


@dataclass(frozen=True)
class LawsonParameter:
    """
    Coprime pair (m, k) labelling the Lawson tau-surface tau_{m,k}.

    Attributes:
        m: First frequency, m >= k
        k: Second frequency, k >= 1

    Raises:
        ValueError: Unless m >= k >= 1 and gcd(m, k) = 1.
    """
    m: int
    k: int

    def __post_init__(self) -> None:
        _require_positive_int(self.m, 'm')
        _require_positive_int(self.k, 'k')
        if self.m < self.k:
            raise ValueError(f"Lawson pair needs m >= k, got: ({self.m}, {self.k})")
        if math.gcd(self.m, self.k) != 1:
            raise ValueError(f"Lawson pair must be coprime, got: ({self.m}, {self.k})")

    @property
    def topology(self) -> Topology:
        """Torus iff m and k are both odd, Klein bottle otherwise."""
        if self.m % 2 == 1 and self.k % 2 == 1:
            return Topology.TORUS
        return Topology.KLEIN

    def as_dict(self) -> Dict[str, int]:
        return {'m': self.m, 'k': self.k}

    def __repr__(self) -> str:
        return f"LawsonParameter({self.m}, {self.k})"


@dataclass(frozen=True)
class IndexDiagnostic:
    """
    The Lawson index under both readings of floor(sqrt(m^2 + k^2) / 2).

    Attributes:
        param: The Lawson pair
        printed_index: 2*floor(sqrt(S)/2) + m + k - 1, S = m^2 + k^2
        alternative_index: 2*floor(sqrt(S/2)) + m + k - 1
        index_margin_printed: printed_index - m*E(modulus)
        index_margin_alternative: alternative_index - m*E(modulus)
        margin_printed: Baseline minus value at the printed index
        margin_alternative: Baseline minus value at the alternative index
    """
    param: LawsonParameter
    printed_index: int
    alternative_index: int
    index_margin_printed: float
    index_margin_alternative: float
    margin_printed: float
    margin_alternative: float

    @property
    def disagree(self) -> bool:
        return self.printed_index != self.alternative_index

    @property
    def holds_under_both(self) -> bool:
        return self.margin_printed > 0 and self.margin_alternative > 0


@dataclass(frozen=True)
class BipolarLawsonCase:
    """
    Classification of the bipolar surface to tau_{m,k}.

    Attributes:
        case: Congruence class of m*k
        topology: Torus or Klein bottle
        index: Functional index the metric is extremal for

    Raises:
        ValueError: If index < 1 (the bipolar surface to tau_{1,1}).
    """
    case: BipolarCase
    topology: Topology
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"Bipolar Lawson index must be >= 1, got: {self.index}")


@dataclass(frozen=True)
class InequalityChain:
    """
    A strictly decreasing chain v_0 > v_1 > ... used in a sufficiency argument.

    Attributes:
        label: What the chain proves
        expressions: Symbolic form of each link
        values: Numeric value of each link
    """
    label: str
    expressions: Tuple[str, ...]
    values: Tuple[float, ...]

    @property
    def holds(self) -> bool:
        return all(left > right for left, right in zip(self.values, self.values[1:]))

    @property
    def worst_gap(self) -> float:
        """Smallest difference between consecutive links."""
        return min(left - right for left, right in zip(self.values, self.values[1:]))


@dataclass(frozen=True)
class LatticeRadiusSquared:
    """
    Squared radius r^2 = n^2 + m^2 of a lattice circle on the square torus.

    Attributes:
        r2: Positive integer, a sum of two integer squares

    Raises:
        ValueError: If r2 < 1 or r2 is not a sum of two squares.
    """
    r2: int

    def __post_init__(self) -> None:
        from backend.clifford import representable

        _require_positive_int(self.r2, 'r2')
        if not representable(self.r2):
            raise ValueError(f"r2 must be a sum of two squares, got: {self.r2}")


@dataclass(frozen=True)
class SmallRadiusDiagnostic:
    """
    The small-r^2 Clifford inequality as stated, next to the one the bound needs.

    Attributes:
        r2: Squared lattice radius
        count: N(r2)
        printed_margin: 8*pi*N(r2) - 4*pi*r2
        corrected_margin: 8*pi*(N(r2) - 1 + pi/sqrt(3)) - 4*pi^2*r2
    """
    r2: int
    count: int
    printed_margin: float
    corrected_margin: float

    @property
    def printed_holds(self) -> bool:
        return self.printed_margin > 0

    @property
    def corrected_holds(self) -> bool:
        return self.corrected_margin > 0


@dataclass(frozen=True)
class SupLowerBound:
    """
    Lower bound for sup Lambda_n over all metrics on a surface.

    The bound comes from a base surface with lambda_1 = 2 joined to n - 1
    round spheres of area 4*pi (also lambda_1 = 2) by thin handles.

    Attributes:
        topology: Surface the bound applies to
        n: Functional index
        value: The bound, in units of eigenvalue times area
        base_surface: Name of the base surface
        base_value: Contribution Lambda_1 of the base surface
        sphere_count: Number of attached spheres (n - 1)
    """
    topology: Topology
    n: int
    value: float
    base_surface: str
    base_value: float
    sphere_count: int

    @property
    def sphere_value(self) -> float:
        return 8.0 * math.pi * self.sphere_count


@dataclass
class ExtremalRecord:
    """
    An extremal metric compared against the sup Lambda lower bound.

    Attributes:
        family: Surface family
        params: Family parameters, e.g. {'p': 2, 'q': 3}
        topology: Torus or Klein bottle
        index: Functional index i of Lambda_i
        value: Lambda_i of the metric, or an upper bound for it
        value_kind: Whether value is exact or an upper bound
        baseline: Lower bound for sup Lambda_i on the same topology
        formula: Symbolic form of value, for human-readable output
        margin: baseline - value (computed)
    """
    family: Family
    params: Dict[str, int]
    topology: Topology
    index: int
    value: float
    value_kind: ValueKind
    baseline: float
    formula: str = ''
    margin: float = field(init=False)

    def __post_init__(self) -> None:
        if isinstance(self.index, bool) or not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"Functional index must be an integer >= 1, got: {self.index}")
        if not math.isfinite(self.value):
            raise ValueError(f"Record value must be finite, got: {self.value}")
        self.margin = self.baseline - self.value

    @property
    def key(self) -> Tuple[str, Tuple[int, ...]]:
        """(family name, parameter tuple), the form used by the equality whitelist."""
        return self.family.value, tuple(self.params.values())

    def is_whitelisted(self) -> bool:
        return self.key in EQUALITY_WHITELIST

    def label(self) -> str:
        params = ','.join(f"{name}={value}" for name, value in self.params.items())
        return f"{self.family.value}({params})"

    def __repr__(self) -> str:
        return (f"ExtremalRecord({self.label()}, Lambda_{self.index}={self.value:.6f}, "
                f"margin={self.margin:.3e})")


@dataclass
class SweepResult:
    """
    Outcome of checking one inequality on a grid.

    Attributes:
        name: Short identifier of the inequality
        description: Statement of the inequality
        passed: Whether every sample satisfied it
        worst_margin: Smallest (most adverse) margin over the grid
        worst_location: Grid point where the worst margin occurs
        samples: Number of grid points checked
        details: Optional extra diagnostics (e.g. listed disagreements)
    """
    name: str
    description: str
    passed: bool
    worst_margin: float
    worst_location: Any
    samples: int
    details: Optional[Dict[str, Any]] = None

    def __repr__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"SweepResult({self.name}, {status}, worst={self.worst_margin:.3e})"


@dataclass
class VerificationReport:
    """
    Aggregated outcome of the non-maximality harness.

    Attributes:
        records: All extremal records, in enumeration order
        sweeps: Property sweep results, in check order
        limits: Enumeration limits the records were produced with
        violations: Labels of records whose margin invariant fails
        warnings: Human-readable warnings (near-zero margins, flagged items)
    """
    records: List[ExtremalRecord]
    sweeps: List[SweepResult]
    limits: Dict[str, int] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def failed_sweeps(self) -> List[str]:
        return [sweep.name for sweep in self.sweeps if not sweep.passed]

    @property
    def verdict(self) -> str:
        if self.violations or self.failed_sweeps:
            return "fail"
        return "pass"

    def passed(self) -> bool:
        return self.verdict == "pass"

    def __repr__(self) -> str:
        return (f"VerificationReport({len(self.records)} records, "
                f"{len(self.sweeps)} sweeps, verdict={self.verdict})")
