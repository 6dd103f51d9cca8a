"""
Otsuki tori O_{p/q}.

The orbit curve of O_{p/q} is a closed geodesic of the reduced metric
oscillating between the latitudes a and pi/2 - a. Between two consecutive
turning points the longitude advances by

    Omega(a) = sin a cos a * int_a^{pi/2 - a} dphi / (cos phi sqrt(sin^2 phi cos^2 phi - sin^2 a cos^2 a))
             = Pi(-cos 2a / sin^2 a, beta) / sin a,        beta = sqrt(1 - tan^2 a),

and the curve closes after 2q arcs iff Omega(a) = p*pi/q. The metric is
extremal for Lambda_{2p-1} with value 8*pi*q*Phi(a), Phi(a) = cos a * E(beta).

Angle functions accept a float or a numpy array.
"""

import math
from typing import List, Union

import numpy as np
from scipy.integrate import quad
from scipy.optimize import bisect
from scipy.special import elliprf, elliprj

from backend.bounds import torus_bound
from backend.elliptic import complete_E, legendre_gap_reduced
from config import (
    OMEGA_BRACKET_EPS, OMEGA_XTOL, OMEGA_RESIDUAL_TOL, OMEGA_MAX_ITER,
    QUAD_EPSABS, QUAD_EPSREL, QUAD_LIMIT
)
from models.data_models import (
    ExtremalRecord, Family, OtsukiAngle, OtsukiParameter, Topology, ValueKind
)
from utils.logging_config import get_logger

logger = get_logger(__name__)

Real = Union[float, np.ndarray]

QUARTER_PI = math.pi / 4
OMEGA_AT_ZERO = math.pi / 2
OMEGA_AT_QUARTER = math.pi / math.sqrt(2.0)
PHI_AT_ZERO = 1.0
PHI_AT_QUARTER = math.pi / (2.0 * math.sqrt(2.0))

# (2/pi) Omega - Phi exceeds this on [1/5, pi/4)
OMEGA_PHI_THRESHOLD = (2.0 * math.sqrt(3.0) - math.pi) / (3.0 * math.sqrt(3.0))
# Omega' exceeds this on (0, 1/5]
OMEGA_PRIME_THRESHOLD = (math.pi / 4) / (math.pi / math.sqrt(3.0) - 1.0)
SMALL_ANGLE_SPLIT = 0.2


class ParameterSolveError(ValueError):
    """Exception raised when the closing angle of an Otsuki torus cannot be certified."""
    pass


def _check_angle(a: Real, func: str, allow_quarter: bool) -> np.ndarray:
    """
    Validate angle argument(s).

    Args:
        a: Angle(s) in radians.
        func: Calling function, for the error message.
        allow_quarter: Whether a = pi/4 belongs to the domain.

    Raises:
        ValueError: If any angle is non-finite or outside the domain.
    """
    a_arr = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(a_arr)):
        raise ValueError(f"{func}: angle must be finite, got: {a}")
    upper_ok = a_arr <= QUARTER_PI if allow_quarter else a_arr < QUARTER_PI
    if not np.all((a_arr > 0) & upper_ok):
        interval = "(0, pi/4]" if allow_quarter else "(0, pi/4)"
        raise ValueError(f"{func}: angle must lie in {interval}, got: {a}")
    return a_arr


def _unwrap(arr: np.ndarray, a: Real) -> Real:
    return float(arr) if np.ndim(a) == 0 else arr


def beta(a: Real) -> Real:
    """
    beta = sqrt(1 - tan^2 a) = sqrt(cos 2a) / cos a, clamped to 0 at a = pi/4.
    """
    a_arr = _check_angle(a, 'beta', allow_quarter=True)
    value = np.sqrt(np.maximum(np.cos(2.0 * a_arr), 0.0)) / np.cos(a_arr)
    return _unwrap(value, a)


def omega_closed(a: Real) -> Real:
    """
    Omega(a) through the complete integral of the third kind.

    Folding the defining integral about phi = pi/4 and substituting
    w = sin phi - cos phi turns Pi(-cos 2a / sin^2 a, beta) / sin a into

        Omega(a) = 2S / sqrt(1 + S) * Pi(1 - S, k),   S = sin 2a,  k^2 = (1 - S)/(1 + S).

    The characteristic is positive here, so the Carlson sum
    R_F(0, y, 1) + (1 - S)/3 * R_J(0, y, 1, S) with y = 2S/(1 + S) has no
    cancellation as a -> 0, where the negative-characteristic form loses
    digits to R_F ~ log(4/a).

    Args:
        a: Angle in (0, pi/4]. At a = pi/4 the formula gives the endpoint
            value pi/sqrt(2) (characteristic 0, modulus 0).

    Returns:
        Omega(a) in (pi/2, pi/sqrt(2)].

    Raises:
        ValueError: If a is outside (0, pi/4].
    """
    a_arr = _check_angle(a, 'omega_closed', allow_quarter=True)
    S = np.sin(2.0 * a_arr)
    y = 2.0 * S / (1.0 + S)
    Pi = elliprf(0.0, y, 1.0) + (1.0 - S) / 3.0 * elliprj(0.0, y, 1.0, S)
    value = np.where(a_arr == QUARTER_PI, OMEGA_AT_QUARTER, 2.0 * S / np.sqrt(1.0 + S) * Pi)
    return _unwrap(value, a)


def omega_closed_beta(a: Real) -> Real:
    """
    Omega(a) = sqrt((2 - beta^2)/(1 - beta^2)) * Pi(-beta^2/(1 - beta^2), beta).

    Second closed form, used to cross-check omega_closed. The Carlson
    arguments y = 1 - beta^2 and 1 - n = 1/y are taken from tan^2 a rather
    than from beta. Below a ~ 1e-3 the sum still cancels against R_F.
    """
    a_arr = _check_angle(a, 'omega_closed_beta', allow_quarter=True)
    b = beta(a_arr)
    b2 = b * b
    # 1 - beta^2 = tan^2 a, exact where beta is close to 1
    t2 = np.tan(a_arr) ** 2
    Pi = elliprf(0.0, t2, 1.0) - b2 / (3.0 * t2) * elliprj(0.0, t2, 1.0, 1.0 / t2)
    value = np.sqrt((2.0 - b2) / t2) * Pi
    return _unwrap(value, a)


def omega_quadrature(a: float) -> float:
    """
    Omega(a) by adaptive quadrature of the defining integral.

    The radicand factors as sin(phi - a) sin(b - phi) (sin 2phi + sin 2a) / 2
    with b = pi/2 - a, so QUADPACK's algebraic-weight rule
    (x - a)^(-1/2) (b - x)^(-1/2) absorbs both endpoint singularities and the
    remaining factor is smooth.

    Args:
        a: Angle in (0, pi/4).

    Returns:
        float: Omega(a), absolute error below 1e-10.

    Raises:
        ValueError: If a is outside (0, pi/4).
    """
    _check_angle(a, 'omega_quadrature', allow_quarter=False)
    a = float(a)
    b = math.pi / 2 - a
    c = math.sin(a) * math.cos(a)
    sin_2a = math.sin(2.0 * a)

    def regular_part(phi: float) -> float:
        # sin(x)/x = np.sinc(x/pi), finite at the endpoints
        radicand = (np.sinc((phi - a) / math.pi) * np.sinc((b - phi) / math.pi)
                    * (math.sin(2.0 * phi) + sin_2a) / 2.0)
        return c / (math.cos(phi) * math.sqrt(radicand))

    value, error = quad(
        regular_part, a, b, weight='alg', wvar=(-0.5, -0.5),
        epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT
    )
    logger.debug(f"omega_quadrature({a!r}) = {value!r} (error estimate {error:.2e})")
    return value


def omega_prime(a: Real) -> Real:
    """
    Omega'(a) = ((2 - beta^2)^(3/2) / beta^2) (K(beta) - 2E(beta)/(2 - beta^2)).

    Evaluated as sqrt(2 - beta^2) * (2/3 R_D - R_F)(beta). Non-negative;
    vanishes as a -> pi/4.

    Raises:
        ValueError: If a is outside (0, pi/4).
    """
    a_arr = _check_angle(a, 'omega_prime', allow_quarter=False)
    b = beta(a_arr)
    value = np.sqrt(2.0 - b * b) * legendre_gap_reduced(b)
    return _unwrap(np.maximum(value, 0.0), a)


def phi(a: Real) -> Real:
    """
    Phi(a) = cos a * E(sqrt(1 - tan^2 a)).

    Args:
        a: Angle in (0, pi/4].

    Returns:
        Phi(a) in [1, pi/(2 sqrt(2))].

    Raises:
        ValueError: If a is outside (0, pi/4].
    """
    a_arr = _check_angle(a, 'phi', allow_quarter=True)
    value = np.cos(a_arr) * complete_E(beta(a_arr))
    return _unwrap(value, a)


def phi_prime(a: Real) -> Real:
    """
    Phi'(a) = (sqrt((1 - beta^2)(2 - beta^2)) / beta^2) (K(beta) - 2E(beta)/(2 - beta^2)).

    Evaluated as sqrt((1 - beta^2)/(2 - beta^2)) * (2/3 R_D - R_F)(beta).
    Lies in [0, 1/2).

    Raises:
        ValueError: If a is outside (0, pi/4).
    """
    a_arr = _check_angle(a, 'phi_prime', allow_quarter=False)
    b = beta(a_arr)
    b2 = b * b
    t2 = np.tan(a_arr) ** 2
    value = np.sqrt(t2 / (2.0 - b2)) * legendre_gap_reduced(b)
    return _unwrap(np.maximum(value, 0.0), a)


def omega_minus_phi(a: Real) -> Real:
    """(2/pi) Omega(a) - Phi(a), increasing on (0, pi/4)."""
    return 2.0 / math.pi * omega_closed(a) - phi(a)


def omega_minus_phi_prime(a: Real) -> Real:
    """
    Derivative of omega_minus_phi,

        (2/3 R_D - R_F)(beta) * ((2/pi) sqrt(2 - beta^2) - sqrt((1 - beta^2)/(2 - beta^2))).
    """
    a_arr = _check_angle(a, 'omega_minus_phi_prime', allow_quarter=False)
    b = beta(a_arr)
    b2 = b * b
    t2 = np.tan(a_arr) ** 2
    factor = 2.0 / math.pi * np.sqrt(2.0 - b2) - np.sqrt(t2 / (2.0 - b2))
    return _unwrap(legendre_gap_reduced(b) * factor, a)


def solve_parameter(param: OtsukiParameter) -> OtsukiAngle:
    """
    Find the angle a* with Omega(a*) = p*pi/q.

    Omega is strictly increasing, so bisection on (eps, pi/4 - eps) finds the
    unique root. Newton steps are avoided since Omega' vanishes at pi/4.

    Args:
        param: Valid Otsuki parameter.

    Returns:
        OtsukiAngle: The closing angle, residual below OMEGA_RESIDUAL_TOL.

    Raises:
        ValueError: If p*pi/q lies outside (pi/2, pi/sqrt(2)).
        ParameterSolveError: If the bracket or the residual check fails.
    """
    target = param.p * math.pi / param.q
    if not OMEGA_AT_ZERO < target < OMEGA_AT_QUARTER:
        raise ValueError(f"p*pi/q must lie in (pi/2, pi/sqrt(2)), got: {param.p}/{param.q}")

    def residual(a: float) -> float:
        return omega_closed(a) - target

    lo, hi = OMEGA_BRACKET_EPS, QUARTER_PI - OMEGA_BRACKET_EPS
    if residual(lo) >= 0 or residual(hi) <= 0:
        raise ParameterSolveError(
            f"Omega(a) - {param.p}*pi/{param.q} does not change sign on [{lo}, {hi}]"
        )

    try:
        root = bisect(residual, lo, hi, xtol=OMEGA_XTOL, maxiter=OMEGA_MAX_ITER)
    except RuntimeError as e:
        raise ParameterSolveError(f"Bisection failed for {param.p}/{param.q}: {e}") from e

    error = abs(residual(root))
    if error >= OMEGA_RESIDUAL_TOL:
        raise ParameterSolveError(
            f"Residual {error:.3e} for {param.p}/{param.q} exceeds {OMEGA_RESIDUAL_TOL}"
        )

    logger.debug(f"Solved {param.p}/{param.q}: a* = {root!r}, residual {error:.2e}")
    return OtsukiAngle(root)


def otsuki_lambda(param: OtsukiParameter) -> ExtremalRecord:
    """
    Lambda_{2p-1}(O_{p/q}) = 8*pi*q*Phi(a*), twice the length of the closed geodesic.

    Args:
        param: Valid Otsuki parameter.

    Returns:
        ExtremalRecord: Torus record with index 2p - 1 against torus_bound.

    Raises:
        ParameterSolveError: Propagated from solve_parameter.
    """
    angle = solve_parameter(param)
    index = 2 * param.p - 1
    value = 8.0 * math.pi * param.q * phi(angle.a)

    lower, upper = 8.0 * math.pi * param.q, 4.0 * math.sqrt(2.0) * math.pi ** 2 * param.q
    if not lower <= value <= upper:
        logger.warning(f"Lambda of O_{param.p}/{param.q} = {value!r} outside [{lower}, {upper}]")

    return ExtremalRecord(
        family=Family.OTSUKI,
        params=param.as_dict(),
        topology=Topology.TORUS,
        index=index,
        value=value,
        value_kind=ValueKind.EXACT,
        baseline=torus_bound(index).value,
        formula=f"8*pi*q*Phi(a) with q={param.q}, a={angle.a:.15g}"
    )


def sufficient_margin(param: OtsukiParameter) -> float:
    """
    Reduced form of Lambda_{2p-1}(O_{p/q}) < 8*pi*(2p - 2 + pi/sqrt(3)).

    Using Omega(a*) = p*pi/q the estimate is equivalent to
    (2/pi) Omega(a*) - Phi(a*) > (2 sqrt(3) - pi) / (q sqrt(3)).

    Returns:
        float: Left side minus right side; positive when the estimate holds.
    """
    angle = solve_parameter(param)
    threshold = (2.0 * math.sqrt(3.0) - math.pi) / (param.q * math.sqrt(3.0))
    return omega_minus_phi(angle.a) - threshold


def enumerate_parameters(max_q: int) -> List[OtsukiParameter]:
    """
    All reduced p/q in (1/2, sqrt(2)/2) with q <= max_q.

    Args:
        max_q: Largest denominator.

    Returns:
        List[OtsukiParameter]: Sorted by (q, p); empty when max_q < 3.
    """
    params = []
    for q in range(3, max_q + 1):
        for p in range(q // 2 + 1, q):
            if 2 * p * p < q * q and math.gcd(p, q) == 1:
                params.append(OtsukiParameter(p, q))

    logger.debug(f"Enumerated {len(params)} Otsuki parameters with q <= {max_q}")
    return params
