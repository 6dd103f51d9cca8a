"""
The Clifford torus as the flat square torus with lattice 2*pi*Z^2.

Eigenfunctions correspond one to one with integer points (n, m), with
eigenvalue n^2 + m^2, so the counting function N(lambda) is the number of
lattice points in the open disk of radius sqrt(lambda). The metric is
extremal for Lambda_{N(r^2)} whenever r^2 is a sum of two squares, with
value 4*pi^2*r^2.

All counting is done in exact integer arithmetic.
"""

import math
from typing import List, Union

import pandas as pd

from backend.bounds import torus_bound
from models.data_models import (
    ExtremalRecord, Family, LatticeRadiusSquared, SmallRadiusDiagnostic,
    Topology, ValueKind
)
from utils.logging_config import get_logger

logger = get_logger(__name__)

# r^2 from which 2*(r - sqrt(2)/2)^2 > r^2
LARGE_RADIUS_SQUARED = 6


def _check_integer(value: int, name: str) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{name} must be an integer, got: {value!r}")


def count_lattice(lam: Union[int, float]) -> int:
    """
    Number of (n, m) in Z^2 with n^2 + m^2 < lam.

    For integer sums, n^2 + m^2 < lam is n^2 + m^2 <= ceil(lam) - 1, so every
    row is counted with math.isqrt and no floating-point boundary test.

    Args:
        lam: Spectral parameter.

    Returns:
        int: N(lam); 0 for lam <= 0.

    Raises:
        ValueError: If lam is not finite.
    """
    if not math.isfinite(lam):
        raise ValueError(f"lambda must be finite, got: {lam}")
    if lam <= 0:
        return 0

    top = math.ceil(lam) - 1
    radius = math.isqrt(top)
    return sum(2 * math.isqrt(top - n * n) + 1 for n in range(-radius, radius + 1))


def representable(r2: int) -> bool:
    """
    Whether r2 = n^2 + m^2 for some integers n, m.

    Raises:
        ValueError: If r2 is not an integer >= 1.
    """
    _check_integer(r2, 'r2')
    if r2 < 1:
        raise ValueError(f"r2 must be >= 1, got: {r2}")

    for n in range(math.isqrt(r2) + 1):
        rest = r2 - n * n
        root = math.isqrt(rest)
        if root * root == rest:
            return True
    return False


def eigenvalue_multiplicity(r2: int) -> int:
    """
    Number of lattice points with n^2 + m^2 = r2.

    This is the multiplicity of the eigenvalue r2 on the square torus;
    0 when r2 is not a sum of two squares.
    """
    _check_integer(r2, 'r2')
    if r2 < 0:
        return 0

    count = 0
    radius = math.isqrt(r2)
    for n in range(-radius, radius + 1):
        rest = r2 - n * n
        root = math.isqrt(rest)
        if root * root == rest:
            count += 1 if root == 0 else 2
    return count


def clifford_spectrum(max_lambda: int) -> pd.DataFrame:
    """
    Distinct eigenvalues up to max_lambda with multiplicities.

    Args:
        max_lambda: Largest eigenvalue listed.

    Returns:
        pd.DataFrame: Columns eigenvalue, multiplicity and count_below
            (= N(eigenvalue), the running sum of earlier multiplicities).
    """
    _check_integer(max_lambda, 'max_lambda')
    rows = []
    count_below = 0
    for eigenvalue in range(0, max_lambda + 1):
        multiplicity = eigenvalue_multiplicity(eigenvalue)
        if multiplicity:
            rows.append((eigenvalue, multiplicity, count_below))
            count_below += multiplicity

    return pd.DataFrame(rows, columns=['eigenvalue', 'multiplicity', 'count_below'])


def clifford_record(radius: LatticeRadiusSquared) -> ExtremalRecord:
    """
    Record for Lambda_{N(r^2)}(T_Cl) = 4*pi^2*r^2.

    Args:
        radius: Validated squared radius.

    Returns:
        ExtremalRecord: Torus record against torus_bound(N(r^2)).
    """
    index = count_lattice(radius.r2)
    return ExtremalRecord(
        family=Family.CLIFFORD,
        params={'r2': radius.r2},
        topology=Topology.TORUS,
        index=index,
        value=4.0 * math.pi ** 2 * radius.r2,
        value_kind=ValueKind.EXACT,
        baseline=torus_bound(index).value,
        formula=f"4*pi^2*r^2 with r^2={radius.r2}"
    )


def clifford_records(max_r2: int) -> List[ExtremalRecord]:
    """
    Records for every representable r^2 <= max_r2, in ascending r^2.

    Args:
        max_r2: Largest squared radius.

    Returns:
        List[ExtremalRecord]: Empty when max_r2 < 1.
    """
    _check_integer(max_r2, 'max_r2')
    records = [
        clifford_record(LatticeRadiusSquared(r2))
        for r2 in range(1, max_r2 + 1)
        if representable(r2)
    ]
    logger.debug(f"Built {len(records)} Clifford records with r^2 <= {max_r2}")
    return records


def disk_area_margin(r2: int) -> float:
    """N(r^2) - pi*(r - sqrt(2)/2)^2, non-negative for representable r^2."""
    r = math.sqrt(r2)
    return count_lattice(r2) - math.pi * (r - math.sqrt(2.0) / 2) ** 2


def large_radius_margin(r2: int) -> float:
    """2*(r - sqrt(2)/2)^2 - r^2, positive for r^2 >= 6."""
    r = math.sqrt(r2)
    return 2.0 * (r - math.sqrt(2.0) / 2) ** 2 - r2


def printed_inequality_diagnostic(r2: int) -> SmallRadiusDiagnostic:
    """
    Compare 8*pi*N(r^2) > 4*pi*r^2 with the inequality the bound requires.

    The non-maximality of the Clifford metric at Lambda_{N(r^2)} needs
    4*pi^2*r^2 < 8*pi*(N(r^2) - 1 + pi/sqrt(3)); the first form is the
    statement as written for small r^2 and is only reported.

    Args:
        r2: Representable squared radius.

    Returns:
        SmallRadiusDiagnostic: Both margins.
    """
    radius = LatticeRadiusSquared(r2)
    count = count_lattice(radius.r2)
    diagnostic = SmallRadiusDiagnostic(
        r2=radius.r2,
        count=count,
        printed_margin=8.0 * math.pi * count - 4.0 * math.pi * radius.r2,
        corrected_margin=torus_bound(count).value - 4.0 * math.pi ** 2 * radius.r2
    )
    if diagnostic.printed_holds != diagnostic.corrected_holds:
        logger.warning(
            f"Small-radius inequality forms disagree at r^2 = {r2}: "
            f"printed {diagnostic.printed_margin:.6g}, corrected {diagnostic.corrected_margin:.6g}"
        )
    return diagnostic


def small_radius_values() -> List[int]:
    """Representable r^2 below LARGE_RADIUS_SQUARED: 1, 2, 4, 5."""
    return [r2 for r2 in range(1, LARGE_RADIUS_SQUARED) if representable(r2)]
