"""
Lawson tau-surfaces tau_{m,k}.

tau_{m,k} is the image of the doubly periodic map

    (x, y) -> (cos mx cos y, sin mx cos y, cos kx sin y, sin kx sin y)

into S^3. It is a torus when m and k are both odd and a Klein bottle
otherwise, and its metric is extremal for Lambda_j with

    j = 2*floor(sqrt(m^2 + k^2) / 2) + m + k - 1,    Lambda_j = 8*pi*m*E(sqrt(m^2 - k^2) / m).
"""

import math
from typing import List, Union

import numpy as np

from backend.bounds import sup_lower_bound
from backend.elliptic import complete_E
from models.data_models import (
    ExtremalRecord, Family, IndexDiagnostic, LawsonParameter, Topology, ValueKind
)
from utils.logging_config import get_logger

logger = get_logger(__name__)

Real = Union[float, np.ndarray]


def lawson_topology(m: int, k: int) -> Topology:
    """
    Topology of tau_{m,k}.

    Raises:
        ValueError: If (m, k) is not a valid Lawson pair.
    """
    return LawsonParameter(m, k).topology


def lawson_modulus(m: int, k: int) -> float:
    """Elliptic modulus sqrt(m^2 - k^2) / m of the Lawson functional value."""
    return math.sqrt(m * m - k * k) / m


def lawson_index(param: LawsonParameter) -> int:
    """
    Index j = 2*floor(sqrt(m^2 + k^2) / 2) + m + k - 1.

    floor(sqrt(S) / 2) = floor(isqrt(S) / 2), evaluated in integers.

    Args:
        param: Lawson pair.

    Returns:
        int: The index j >= 1.
    """
    s = param.m * param.m + param.k * param.k
    return 2 * (math.isqrt(s) // 2) + param.m + param.k - 1


def lawson_index_alternative(param: LawsonParameter) -> int:
    """Index with floor(sqrt((m^2 + k^2) / 2)) in place of floor(sqrt(m^2 + k^2) / 2)."""
    s = param.m * param.m + param.k * param.k
    return 2 * math.isqrt(s // 2) + param.m + param.k - 1


def lawson_lambda(param: LawsonParameter) -> ExtremalRecord:
    """
    Lambda_j(tau_{m,k}) = 8*pi*m*E(sqrt(m^2 - k^2) / m).

    Args:
        param: Lawson pair.

    Returns:
        ExtremalRecord: Record with index lawson_index(param) against the
            bound for the pair's topology.
    """
    index = lawson_index(param)
    value = 8.0 * math.pi * param.m * complete_E(lawson_modulus(param.m, param.k))
    topology = param.topology

    return ExtremalRecord(
        family=Family.LAWSON,
        params=param.as_dict(),
        topology=topology,
        index=index,
        value=value,
        value_kind=ValueKind.EXACT,
        baseline=sup_lower_bound(topology, index).value,
        formula=f"8*pi*m*E(sqrt(m^2-k^2)/m) with m={param.m}, k={param.k}"
    )


def immersion_point(param: LawsonParameter, x: Real, y: Real) -> np.ndarray:
    """
    Point of tau_{m,k} in R^4 at the parameters (x, y).

    Args:
        param: Lawson pair.
        x: First parameter, radians (scalar or array).
        y: Second parameter, radians (broadcast against x).

    Returns:
        np.ndarray: Shape (..., 4), unit Euclidean norm.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    mx, kx = param.m * x, param.k * x
    cos_y, sin_y = np.cos(y), np.sin(y)
    return np.stack(np.broadcast_arrays(
        np.cos(mx) * cos_y, np.sin(mx) * cos_y, np.cos(kx) * sin_y, np.sin(kx) * sin_y
    ), axis=-1)


def index_margin(param: LawsonParameter, index: int) -> float:
    """index - m*E(sqrt(m^2 - k^2)/m); non-negative index margin is sufficient for non-maximality."""
    return index - param.m * complete_E(lawson_modulus(param.m, param.k))


def index_diagnostic(param: LawsonParameter) -> IndexDiagnostic:
    """
    Compare the two readings of the index formula for one pair.

    The non-maximality argument only needs j >= m*E(modulus), so both
    readings are checked against their own baselines.

    Args:
        param: Lawson pair.

    Returns:
        IndexDiagnostic: Indices, index margins and baseline margins.
    """
    record = lawson_lambda(param)
    alternative = lawson_index_alternative(param)
    diagnostic = IndexDiagnostic(
        param=param,
        printed_index=record.index,
        alternative_index=alternative,
        index_margin_printed=index_margin(param, record.index),
        index_margin_alternative=index_margin(param, alternative),
        margin_printed=record.margin,
        margin_alternative=sup_lower_bound(param.topology, alternative).value - record.value
    )
    if diagnostic.disagree:
        logger.debug(
            f"Index readings differ for ({param.m}, {param.k}): "
            f"{diagnostic.printed_index} vs {diagnostic.alternative_index}"
        )
    return diagnostic


def phi_positivity(x: Real) -> Real:
    """
    1 + x - E(sqrt(1 - x^2)), positive on (0, 1].

    Equivalently E(t) < 1 + sqrt(1 - t^2) for t in [0, 1).

    Raises:
        ValueError: If x lies outside [0, 1].
    """
    x_arr = np.asarray(x, dtype=float)
    if not np.all((x_arr >= 0) & (x_arr <= 1)):
        raise ValueError(f"x must lie in [0, 1], got: {x}")
    value = 1.0 + x_arr - complete_E(np.sqrt((1.0 - x_arr) * (1.0 + x_arr)))
    return float(value) if np.ndim(x) == 0 else value


def enumerate_pairs(max_m: int) -> List[LawsonParameter]:
    """
    All coprime pairs m >= k >= 1 with m <= max_m, in (m, k) order.

    Args:
        max_m: Largest m.

    Returns:
        List[LawsonParameter]: Empty when max_m < 1.
    """
    pairs = [
        LawsonParameter(m, k)
        for m in range(1, max_m + 1)
        for k in range(1, m + 1)
        if math.gcd(m, k) == 1
    ]
    logger.debug(f"Enumerated {len(pairs)} Lawson pairs with m <= {max_m}")
    return pairs
