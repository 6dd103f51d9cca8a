"""
Bipolar surfaces to Lawson tau-surfaces and to Otsuki tori.

The bipolar surface tau~_{m,k} falls into one of three cases by m*k mod 4:

    even          torus         Lambda_{4m-2} = 16*pi*m*E(sqrt(m^2 - k^2)/m)
    one-mod-four  torus         Lambda_{2m-2} =  8*pi*m*E(...)
    three-mod-four Klein bottle Lambda_{m-2}  =  4*pi*m*E(...)

For the bipolar Otsuki torus O~_{p/q} only an upper bound of the functional
is known: 4*sqrt(2)*pi^2*q for odd q (index 2q + 4p - 2) and
2*sqrt(2)*pi^2*q for even q (index q + 2p - 2).
"""

import math
from typing import Dict, List

from backend.bounds import sup_lower_bound, tau31_value, torus_bound
from backend.elliptic import complete_E
from backend.lawson import enumerate_pairs, lawson_modulus
from models.data_models import (
    BipolarCase, BipolarLawsonCase, ExtremalRecord, Family, InequalityChain,
    LawsonParameter, OtsukiParameter, Topology, ValueKind
)
from utils.logging_config import get_logger

logger = get_logger(__name__)

# Coefficient c in Lambda = c*pi*m*E(modulus)
CASE_COEFFICIENTS = {
    BipolarCase.EVEN: 16.0,
    BipolarCase.ONE_MOD_FOUR: 8.0,
    BipolarCase.THREE_MOD_FOUR: 4.0,
}

THRESHOLD_SCAN_LIMIT = 1000


def classify(m: int, k: int) -> BipolarLawsonCase:
    """
    Case, topology and index of the bipolar surface to tau_{m,k}.

    Args:
        m: First Lawson frequency.
        k: Second Lawson frequency.

    Returns:
        BipolarLawsonCase: The classification.

    Raises:
        ValueError: If (m, k) is not a Lawson pair, or the index would be
            below 1 (tau~_{1,1}, the Clifford torus).
    """
    param = LawsonParameter(m, k)
    product = param.m * param.k

    if product % 2 == 0:
        return BipolarLawsonCase(BipolarCase.EVEN, Topology.TORUS, 4 * param.m - 2)
    if product % 4 == 1:
        return BipolarLawsonCase(BipolarCase.ONE_MOD_FOUR, Topology.TORUS, 2 * param.m - 2)
    return BipolarLawsonCase(BipolarCase.THREE_MOD_FOUR, Topology.KLEIN, param.m - 2)


def bipolar_lawson_record(param: LawsonParameter) -> ExtremalRecord:
    """
    Functional value of the bipolar surface to tau_{m,k}.

    Args:
        param: Lawson pair other than (1, 1).

    Returns:
        ExtremalRecord: Exact value against the bound of the case's topology.
            For (3, 1) the value and the Klein bottle bound share one
            evaluation, so the margin is zero.

    Raises:
        ValueError: For (1, 1), whose index 2m - 2 is 0.
    """
    case = classify(param.m, param.k)
    coefficient = CASE_COEFFICIENTS[case.case]
    value = coefficient * math.pi * param.m * complete_E(lawson_modulus(param.m, param.k))

    return ExtremalRecord(
        family=Family.BIPOLAR_LAWSON,
        params=param.as_dict(),
        topology=case.topology,
        index=case.index,
        value=value,
        value_kind=ValueKind.EXACT,
        baseline=sup_lower_bound(case.topology, case.index).value,
        formula=f"{coefficient:g}*pi*m*E(sqrt(m^2-k^2)/m) with m={param.m}, k={param.k}"
    )


def bipolar_otsuki_index(param: OtsukiParameter) -> int:
    """2q + 4p - 2 for odd q, q + 2p - 2 for even q."""
    if param.q % 2 == 1:
        return 2 * param.q + 4 * param.p - 2
    return param.q + 2 * param.p - 2


def bipolar_otsuki_record(param: OtsukiParameter) -> ExtremalRecord:
    """
    Upper bound for the functional of the bipolar Otsuki torus.

    The value field carries 4*sqrt(2)*pi^2*q (odd q) or 2*sqrt(2)*pi^2*q
    (even q) and is marked ValueKind.UPPER_BOUND.

    Args:
        param: Valid Otsuki parameter.

    Returns:
        ExtremalRecord: Torus record.
    """
    index = bipolar_otsuki_index(param)
    factor = 4.0 if param.q % 2 == 1 else 2.0

    return ExtremalRecord(
        family=Family.BIPOLAR_OTSUKI,
        params=param.as_dict(),
        topology=Topology.TORUS,
        index=index,
        value=factor * math.sqrt(2.0) * math.pi ** 2 * param.q,
        value_kind=ValueKind.UPPER_BOUND,
        baseline=torus_bound(index).value,
        formula=f"{factor:g}*sqrt(2)*pi^2*q with q={param.q}"
    )


def bipolar_otsuki_chain(param: OtsukiParameter) -> InequalityChain:
    """
    The chain of estimates that places the bipolar Otsuki bound below the baseline.

    Even q:  8*pi*(q + 2p - 3 + pi/sqrt(3)) > 8*pi*(q + 2p - 2) > 12*pi*q > 2*sqrt(2)*pi^2*q
    Odd q:   8*pi*(2q + 4p - 3 + pi/sqrt(3)) > 8*pi*(2q + 4p - 2) > 24*pi*q > 4*sqrt(2)*pi^2*q
    """
    index = bipolar_otsuki_index(param)
    q = param.q
    if q % 2 == 1:
        linear, factor = 24.0, 4.0
    else:
        linear, factor = 12.0, 2.0

    return InequalityChain(
        label=f"BipolarOtsuki p={param.p}, q={q}",
        expressions=(
            f"8*pi*({index}-1+pi/sqrt(3))",
            f"8*pi*{index}",
            f"{linear:g}*pi*q",
            f"{factor:g}*sqrt(2)*pi^2*q",
        ),
        values=(
            torus_bound(index).value,
            8.0 * math.pi * index,
            linear * math.pi * q,
            factor * math.sqrt(2.0) * math.pi ** 2 * q,
        )
    )


def _first_holding(predicate) -> int:
    """Smallest m in [1, THRESHOLD_SCAN_LIMIT) from which predicate holds for every later m."""
    threshold = THRESHOLD_SCAN_LIMIT
    for m in range(THRESHOLD_SCAN_LIMIT - 1, 0, -1):
        if not predicate(m):
            break
        threshold = m
    return threshold


def sufficient_condition_thresholds() -> Dict[BipolarCase, int]:
    """
    Smallest m from which the elementary estimates covering each case hold.

    Using E <= pi/2 the three non-maximality inequalities reduce to

        one-mod-four:   pi*m <= 4m - 4
        even:           pi*m <= 4m - 3 + pi/sqrt(3)
        three-mod-four: (2 - pi/2)*m > 6 - 3*E(2*sqrt(2)/3)

    Pairs below the thresholds are checked directly by the records.

    Returns:
        Dict[BipolarCase, int]: Threshold per case (5, 2 and 7).
    """
    tau_constant = tau31_value() / (4.0 * math.pi)

    thresholds = {
        BipolarCase.ONE_MOD_FOUR: _first_holding(lambda m: math.pi * m <= 4 * m - 4),
        BipolarCase.EVEN: _first_holding(
            lambda m: math.pi * m <= 4 * m - 3 + math.pi / math.sqrt(3.0)
        ),
        BipolarCase.THREE_MOD_FOUR: _first_holding(
            lambda m: (2.0 - math.pi / 2) * m > 6.0 - tau_constant
        ),
    }
    logger.debug(f"Bipolar sufficient thresholds: {thresholds}")
    return thresholds


def enumerate_bipolar_pairs(max_m: int) -> List[LawsonParameter]:
    """
    Lawson pairs with m <= max_m whose bipolar surface has index >= 1.

    Skips (1, 1): tau~_{1,1} is the Clifford torus, covered by the Clifford
    record with r^2 = 1.
    """
    return [param for param in enumerate_pairs(max_m) if (param.m, param.k) != (1, 1)]
