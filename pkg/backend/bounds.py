"""
Lower bounds for sup Lambda_n on the torus and the Klein bottle.

A surface with lambda_1 = 2 glued by thin handles to n - 1 round spheres of
area 4*pi (each with lambda_1 = 2) has Lambda_n close to the sum of the
pieces' Lambda_1. Two base surfaces give the bounds:

    torus:        equilateral torus, area 4*pi^2/sqrt(3)  ->  8*pi*(n - 1 + pi/sqrt(3))
    Klein bottle: bipolar Lawson tau~(3,1)                 ->  8*pi*(n - 1) + 12*pi*E(2*sqrt(2)/3)
"""

import math
from functools import lru_cache

from backend.elliptic import complete_E
from models.data_models import SupLowerBound, Topology
from utils.logging_config import get_logger

logger = get_logger(__name__)

EQUILATERAL_TORUS = "equilateral torus"
BIPOLAR_TAU_31 = "bipolar Lawson Klein bottle (3,1)"

# Modulus of the tau~(3,1) value; equals sqrt(3**2 - 1**2) / 3 bit for bit
KLEIN_BASE_MODULUS = 2.0 * math.sqrt(2.0) / 3.0

# Lambda_1 of a round sphere of area 4*pi
SPHERE_CONTRIBUTION = 8.0 * math.pi


@lru_cache(maxsize=None)
def equilateral_torus_value() -> float:
    """Lambda_1 of the equilateral torus: 2 * 4*pi^2/sqrt(3)."""
    return 8.0 * math.pi * (math.pi / math.sqrt(3.0))


@lru_cache(maxsize=None)
def tau31_value() -> float:
    """Lambda_1 of the bipolar Lawson Klein bottle tau~(3,1): 12*pi*E(2*sqrt(2)/3)."""
    value = 4.0 * math.pi * 3 * complete_E(KLEIN_BASE_MODULUS)
    logger.debug(f"Klein bottle base constant evaluated: {value!r}")
    return value


def _check_index(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError(f"Functional index must be an integer, got: {n!r}")
    if n < 1:
        raise ValueError(f"Functional index must be >= 1, got: {n}")


def torus_bound(n: int) -> SupLowerBound:
    """
    Lower bound 8*pi*(n - 1 + pi/sqrt(3)) for sup Lambda_n over tori.

    Args:
        n: Functional index, n >= 1.

    Returns:
        SupLowerBound: Bound with its equilateral-torus construction.

    Raises:
        ValueError: If n < 1.
    """
    _check_index(n)
    base = equilateral_torus_value()
    return SupLowerBound(
        topology=Topology.TORUS,
        n=n,
        value=SPHERE_CONTRIBUTION * (n - 1) + base,
        base_surface=EQUILATERAL_TORUS,
        base_value=base,
        sphere_count=n - 1
    )


def klein_bound(n: int) -> SupLowerBound:
    """
    Lower bound 8*pi*(n - 1) + 12*pi*E(2*sqrt(2)/3) for sup Lambda_n over Klein bottles.

    Args:
        n: Functional index, n >= 1.

    Returns:
        SupLowerBound: Bound with its tau~(3,1) construction.

    Raises:
        ValueError: If n < 1.
    """
    _check_index(n)
    base = tau31_value()
    return SupLowerBound(
        topology=Topology.KLEIN,
        n=n,
        value=SPHERE_CONTRIBUTION * (n - 1) + base,
        base_surface=BIPOLAR_TAU_31,
        base_value=base,
        sphere_count=n - 1
    )


def sup_lower_bound(topology: Topology, n: int) -> SupLowerBound:
    """
    Dispatch to torus_bound or klein_bound.

    Raises:
        ValueError: If n < 1 or topology is not a Topology member.
    """
    if topology is Topology.TORUS:
        return torus_bound(n)
    if topology is Topology.KLEIN:
        return klein_bound(n)
    raise ValueError(f"Unknown topology: {topology!r}")
