"""
Complete elliptic integrals of the first, second and third kind.

Every function here takes the MODULUS k, not the parameter m = k**2:

    K(k)     = int_0^1 dx / (sqrt(1 - x^2) sqrt(1 - k^2 x^2))
    E(k)     = int_0^1 sqrt(1 - k^2 x^2) / sqrt(1 - x^2) dx
    Pi(n, k) = int_0^1 dx / ((1 - n x^2) sqrt(1 - x^2) sqrt(1 - k^2 x^2))

Tables and libraries that use the parameter convention (scipy.special.ellipk,
mpmath.ellipk) must be called with k**2.

Evaluation goes through the Carlson symmetric forms R_F, R_D and R_J
(scipy.special.elliprf/elliprd/elliprj), which stay accurate for negative
characteristics n. With y = 1 - k^2:

    K = R_F(0, y, 1)
    E = R_F(0, y, 1) - k^2/3 R_D(0, y, 1)
    Pi = R_F(0, y, 1) + n/3 R_J(0, y, 1, 1 - n)

Scalars in give floats out; numpy arrays in give arrays out.
"""

from typing import Tuple, Union

import numpy as np
from scipy.special import elliprd, elliprf, elliprj

from config import K_DIVERGENCE_GAP
from utils.logging_config import get_logger

logger = get_logger(__name__)

Real = Union[float, np.ndarray]


class EllipticDomainError(ValueError):
    """Exception raised when an integral diverges or a closed form degenerates."""
    pass


def _finite_array(value: Real, name: str) -> np.ndarray:
    """Convert to a float array, rejecting NaN and infinities."""
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite, got: {value}")
    return arr


def _unwrap(arr: np.ndarray, *inputs: Real) -> Real:
    """Return a float when every input was a scalar and the array otherwise."""
    if all(np.ndim(value) == 0 for value in inputs):
        return float(arr)
    return arr


def _check_modulus(k: Real, func: str, allow_one: bool = False) -> np.ndarray:
    """
    Validate a modulus argument.

    Args:
        k: Modulus value(s).
        func: Name of the calling function, used in error messages.
        allow_one: Whether k = 1 is part of the domain (E only).

    Returns:
        np.ndarray: Validated modulus array.

    Raises:
        ValueError: If k is negative or non-finite (or > 1 when allow_one).
        EllipticDomainError: If k reaches the divergent endpoint k = 1.
    """
    k_arr = _finite_array(k, 'k')
    if np.any(k_arr < 0):
        raise ValueError(f"{func}: modulus k must be >= 0, got: {k}")
    if allow_one:
        if np.any(k_arr > 1):
            raise ValueError(f"{func}: modulus k must be <= 1, got: {k}")
    elif np.any(k_arr >= 1.0 - K_DIVERGENCE_GAP):
        raise EllipticDomainError(f"{func}: integral diverges at k = 1, got k = {k}")
    return k_arr


def _check_characteristic(n: Real, func: str) -> np.ndarray:
    """Validate a characteristic argument: n < 1 keeps the pole outside [0, 1]."""
    n_arr = _finite_array(n, 'n')
    if np.any(n_arr >= 1):
        raise EllipticDomainError(
            f"{func}: characteristic n must be < 1 (pole inside the interval), got n = {n}"
        )
    return n_arr


def _check_not_degenerate(n_arr: np.ndarray, k_arr: np.ndarray, func: str) -> None:
    """Reject n == k**2, where the closed-form derivatives lose their denominator."""
    if np.any(np.isclose(n_arr, k_arr * k_arr, rtol=1e-12, atol=1e-15)):
        raise EllipticDomainError(f"{func}: formula degenerates at n == k**2")


def _carlson_rf_rd(k_arr: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """R_F(0, 1 - k^2, 1) and R_D(0, 1 - k^2, 1)."""
    y = (1.0 - k_arr) * (1.0 + k_arr)
    return elliprf(0.0, y, 1.0), elliprd(0.0, y, 1.0)


def complete_K(k: Real) -> Real:
    """
    Complete elliptic integral of the first kind K(k).

    Args:
        k: Modulus, 0 <= k < 1.

    Returns:
        K(k); K(0) = pi/2.

    Raises:
        ValueError: If k < 0 or non-finite.
        EllipticDomainError: If k >= 1 (logarithmic divergence).
    """
    k_arr = _check_modulus(k, 'complete_K')
    y = (1.0 - k_arr) * (1.0 + k_arr)
    return _unwrap(elliprf(0.0, y, 1.0), k)


def complete_E(k: Real) -> Real:
    """
    Complete elliptic integral of the second kind E(k).

    Args:
        k: Modulus, 0 <= k <= 1.

    Returns:
        E(k) in [1, pi/2]; E(0) = pi/2 and E(1) = 1.

    Raises:
        ValueError: If k lies outside [0, 1] or is non-finite.
    """
    k_arr = _check_modulus(k, 'complete_E', allow_one=True)
    with np.errstate(invalid='ignore', divide='ignore', over='ignore'):
        rf, rd = _carlson_rf_rd(k_arr)
        value = rf - k_arr * k_arr / 3.0 * rd
    value = np.where(k_arr == 1.0, 1.0, value)
    return _unwrap(value, k)


def complete_Pi(n: Real, k: Real) -> Real:
    """
    Complete elliptic integral of the third kind Pi(n, k).

    Args:
        n: Characteristic, n < 1 (negative values allowed).
        k: Modulus, 0 <= k < 1.

    Returns:
        Pi(n, k); Pi(0, k) = K(k).

    Raises:
        EllipticDomainError: If n >= 1 or k >= 1.
    """
    n_arr = _check_characteristic(n, 'complete_Pi')
    k_arr = _check_modulus(k, 'complete_Pi')
    y = (1.0 - k_arr) * (1.0 + k_arr)
    value = elliprf(0.0, y, 1.0) + n_arr / 3.0 * elliprj(0.0, y, 1.0, 1.0 - n_arr)
    return _unwrap(value, n, k)


def complete_KEPi(n: Real, k: Real) -> Tuple[Real, Real, Real]:
    """
    K, E and Pi sharing one R_F/R_D evaluation.

    Args:
        n: Characteristic, n < 1.
        k: Modulus, 0 <= k < 1.

    Returns:
        Tuple of (K(k), E(k), Pi(n, k)).
    """
    n_arr = _check_characteristic(n, 'complete_KEPi')
    k_arr = _check_modulus(k, 'complete_KEPi')
    rf, rd = _carlson_rf_rd(k_arr)
    y = (1.0 - k_arr) * (1.0 + k_arr)
    K = rf
    E = rf - k_arr * k_arr / 3.0 * rd
    Pi = rf + n_arr / 3.0 * elliprj(0.0, y, 1.0, 1.0 - n_arr)
    return _unwrap(K, n, k), _unwrap(E, n, k), _unwrap(Pi, n, k)


def dE_dk(k: Real) -> Real:
    """
    Derivative dE/dk = (E - K) / k.

    Evaluated as -k/3 R_D(0, 1 - k^2, 1), which is the same quantity without
    the cancellation of E - K for small k. The removable singularity at
    k = 0 gives 0.

    Raises:
        EllipticDomainError: If k >= 1.
    """
    k_arr = _check_modulus(k, 'dE_dk')
    _, rd = _carlson_rf_rd(k_arr)
    return _unwrap(-k_arr / 3.0 * rd, k)


def dK_dk(k: Real) -> Real:
    """
    Derivative dK/dk = E / (k (1 - k^2)) - K / k.

    Since E - (1 - k^2) K = k^2 (R_F - R_D/3), this equals
    k (R_F - R_D/3) / (1 - k^2), finite at k = 0 where it vanishes and
    positive on (0, 1).

    Raises:
        EllipticDomainError: If k >= 1.
    """
    k_arr = _check_modulus(k, 'dK_dk')
    rf, rd = _carlson_rf_rd(k_arr)
    y = (1.0 - k_arr) * (1.0 + k_arr)
    return _unwrap(k_arr * (rf - rd / 3.0) / y, k)


def dPi_dn(n: Real, k: Real) -> Real:
    """
    Partial derivative of Pi(n, k) in the characteristic,

        dPi/dn = (E + (k^2 - n) K / n + (n^2 - k^2) Pi / n) / (2 (k^2 - n)(n - 1)).

    At n = 0 (with k > 0) the analytic limit (K - E) / k^2 = R_D / 3 is used.

    Raises:
        EllipticDomainError: If n >= 1, k >= 1 or n == k**2.
    """
    n_arr = _check_characteristic(n, 'dPi_dn')
    k_arr = _check_modulus(k, 'dPi_dn')
    _check_not_degenerate(n_arr, k_arr, 'dPi_dn')

    rf, rd = _carlson_rf_rd(k_arr)
    y = (1.0 - k_arr) * (1.0 + k_arr)
    k2 = k_arr * k_arr
    K = rf
    E = rf - k2 / 3.0 * rd
    Pi = rf + n_arr / 3.0 * elliprj(0.0, y, 1.0, 1.0 - n_arr)

    with np.errstate(invalid='ignore', divide='ignore'):
        general = (
            (E + (k2 - n_arr) * K / n_arr + (n_arr * n_arr - k2) * Pi / n_arr)
            / (2.0 * (k2 - n_arr) * (n_arr - 1.0))
        )
    value = np.where(n_arr == 0.0, rd / 3.0, general)
    return _unwrap(value, n, k)


def dPi_dk(n: Real, k: Real) -> Real:
    """
    Partial derivative of Pi(n, k) in the modulus,

        dPi/dk = k / (n - k^2) (E / (k^2 - 1) + Pi).

    Raises:
        EllipticDomainError: If n >= 1, k >= 1 or n == k**2.
    """
    n_arr = _check_characteristic(n, 'dPi_dk')
    k_arr = _check_modulus(k, 'dPi_dk')
    _check_not_degenerate(n_arr, k_arr, 'dPi_dk')

    K, E, Pi = complete_KEPi(n_arr, k_arr)
    k2 = k_arr * k_arr
    value = k_arr / (n_arr - k2) * (E / (k2 - 1.0) + Pi)
    return _unwrap(value, n, k)


def legendre_gap_reduced(k: Real) -> Real:
    """
    (K(k) - 2 E(k) / (2 - k^2)) * (2 - k^2) / k^2 = 2/3 R_D - R_F.

    Finite at k = 0, where it vanishes. The Otsuki derivatives are this
    quantity times elementary factors.

    Raises:
        EllipticDomainError: If k >= 1.
    """
    k_arr = _check_modulus(k, 'legendre_gap_reduced')
    rf, rd = _carlson_rf_rd(k_arr)
    return _unwrap(2.0 / 3.0 * rd - rf, k)


def legendre_gap(k: Real) -> Real:
    """
    K(k) - 2 E(k) / (2 - k^2), non-negative on [0, 1).

    Written as k^2 / (2 - k^2) * (2/3 R_D - R_F) so that the leading terms
    of K and 2E/(2 - k^2) never have to cancel numerically.

    Raises:
        EllipticDomainError: If k >= 1.
    """
    k_arr = _check_modulus(k, 'legendre_gap')
    rf, rd = _carlson_rf_rd(k_arr)
    k2 = k_arr * k_arr
    return _unwrap(k2 / (2.0 - k2) * (2.0 / 3.0 * rd - rf), k)


def legendre_relation_residual(k: float) -> float:
    """
    Residual of Legendre's relation E K' + E' K - K K' - pi/2 at modulus k.

    Args:
        k: Modulus in (0, 1).

    Returns:
        float: Signed residual, zero in exact arithmetic.
    """
    if not 0 < k < 1:
        raise ValueError(f"Legendre relation needs 0 < k < 1, got: {k}")
    kp = float(np.sqrt((1.0 - k) * (1.0 + k)))
    K, Kp = complete_K(k), complete_K(kp)
    E, Ep = complete_E(k), complete_E(kp)
    return E * Kp + Ep * K - K * Kp - np.pi / 2
