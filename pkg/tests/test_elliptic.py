"""
Unit tests for the complete elliptic integrals.
"""

import math
import os
import sys

import mpmath
import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from backend.elliptic import (
    EllipticDomainError,
    complete_E,
    complete_K,
    complete_KEPi,
    complete_Pi,
    dE_dk,
    dK_dk,
    dPi_dk,
    dPi_dn,
    legendre_gap,
    legendre_gap_reduced,
    legendre_relation_residual
)

MODULI = [0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999]
FD_STEP = 1e-6


def _central_difference(func, x, h=FD_STEP):
    return (func(x + h) - func(x - h)) / (2 * h)


def _random_points(seed, count, n_range, k_range, min_gap=0.0):
    """Seeded (n, k) pairs, keeping |n - k^2| >= min_gap."""
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < count:
        n, k = rng.uniform(*n_range), rng.uniform(*k_range)
        if abs(n - k * k) >= min_gap:
            points.append((float(n), float(k)))
    return points


PI_POINTS = _random_points(20240601, 100, (-50.0, 0.9), (0.0, 0.95))
DERIVATIVE_POINTS = _random_points(17, 100, (-5.0, 0.8), (0.05, 0.9), min_gap=0.05)


class TestSpecialValues:
    """Tests for endpoint values."""

    def test_values_at_zero(self):
        """K(0) = E(0) = pi/2."""
        assert abs(complete_K(0.0) - math.pi / 2) < 1e-15
        assert abs(complete_E(0.0) - math.pi / 2) < 1e-15

    def test_e_at_one(self):
        """E(1) = 1 exactly."""
        assert complete_E(1.0) == 1.0

    @pytest.mark.parametrize("k", [0.0, 0.2, 0.5, 0.8, 0.95])
    def test_pi_at_zero_characteristic(self, k):
        """Pi(0, k) = K(k)."""
        assert abs(complete_Pi(0.0, k) - complete_K(k)) < 1e-13

    def test_k_diverges_at_one(self):
        """K(1) is a domain error."""
        with pytest.raises(EllipticDomainError):
            complete_K(1.0)

    def test_invalid_modulus(self):
        """Negative, non-finite and > 1 moduli are rejected."""
        with pytest.raises(ValueError):
            complete_K(-0.1)
        with pytest.raises(ValueError):
            complete_E(float('nan'))
        with pytest.raises(ValueError):
            complete_E(1.5)

    def test_pi_pole_inside_interval(self):
        """n >= 1 puts the pole inside the integration interval."""
        with pytest.raises(EllipticDomainError):
            complete_Pi(1.0, 0.5)
        with pytest.raises(EllipticDomainError):
            complete_Pi(2.0, 0.5)


class TestAgainstMpmath:
    """Comparison with mpmath, which uses the parameter m = k^2."""

    @pytest.mark.parametrize("k", MODULI)
    def test_first_and_second_kind(self, k):
        """K and E agree with mpmath to near machine precision."""
        m = k * k
        assert complete_K(k) == pytest.approx(float(mpmath.ellipk(m)), rel=1e-13)
        assert complete_E(k) == pytest.approx(float(mpmath.ellipe(m)), rel=1e-13)

    @pytest.mark.parametrize("n", [-400.0, -10.0, -1.0, -0.2, 0.3, 0.8])
    def test_third_kind(self, n):
        """Pi(n, k) agrees with mpmath for negative and positive characteristics."""
        k = 0.6
        expected = float(mpmath.ellippi(n, k * k))
        assert complete_Pi(n, k) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("n, k", PI_POINTS)
    def test_third_kind_random(self, n, k):
        """Pi agrees with mpmath on seeded random (n, k)."""
        expected = float(mpmath.ellippi(n, k * k))
        assert complete_Pi(n, k) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("k", [0.1, 0.5, 0.9])
    def test_agm_identity(self, k):
        """K(k) = pi / (2 agm(1, sqrt(1 - k^2)))."""
        expected = float(mpmath.pi / (2 * mpmath.agm(1, mpmath.sqrt(1 - mpmath.mpf(k) ** 2))))
        assert complete_K(k) == pytest.approx(expected, rel=1e-13)

    def test_combined_evaluation(self):
        """complete_KEPi matches the separate functions."""
        K, E, Pi = complete_KEPi(-3.0, 0.7)
        assert K == pytest.approx(complete_K(0.7), rel=1e-15)
        assert E == pytest.approx(complete_E(0.7), rel=1e-15)
        assert Pi == pytest.approx(complete_Pi(-3.0, 0.7), rel=1e-15)


class TestArrays:
    """Tests for the scalar/array convention."""

    def test_scalar_returns_float(self):
        """Scalar input gives a Python float."""
        assert isinstance(complete_K(0.5), float)
        assert isinstance(complete_Pi(-1.0, 0.5), float)

    def test_array_returns_array(self):
        """Array input gives an array of the same shape."""
        k = np.linspace(0.0, 0.9, 7)
        values = complete_E(k)
        assert isinstance(values, np.ndarray)
        assert values.shape == k.shape
        assert np.all(np.diff(values) < 0)

    def test_array_with_endpoint(self):
        """E over [0, 1] includes the exact endpoint value."""
        values = complete_E(np.array([0.0, 1.0]))
        assert values[1] == 1.0

    def test_monotone_on_fine_grid(self):
        """K strictly increases and E strictly decreases on 1000 points of [0, 0.999]."""
        k = np.linspace(0.0, 0.999, 1000)
        assert np.all(np.diff(complete_K(k)) > 0)
        assert np.all(np.diff(complete_E(k)) < 0)


class TestDerivatives:
    """Tests for the derivative formulas."""

    @pytest.mark.parametrize("k", [0.2, 0.6, 0.9])
    def test_de_dk_finite_difference(self, k):
        """dE/dk matches a central difference."""
        assert abs(dE_dk(k) - _central_difference(complete_E, k)) < 1e-8

    @pytest.mark.parametrize("k", [0.2, 0.6, 0.9])
    def test_dk_dk_finite_difference(self, k):
        """dK/dk matches a central difference."""
        expected = _central_difference(complete_K, k)
        assert abs(dK_dk(k) - expected) < 1e-8 * max(1.0, abs(expected))

    def test_derivatives_at_zero(self):
        """Both derivatives vanish at k = 0."""
        assert dE_dk(0.0) == 0.0
        assert dK_dk(0.0) == 0.0

    @pytest.mark.parametrize("n", [-2.0, -0.5, 0.5])
    def test_dpi_dn_finite_difference(self, n):
        """dPi/dn matches a central difference."""
        k = 0.6
        expected = _central_difference(lambda x: complete_Pi(x, k), n)
        assert abs(dPi_dn(n, k) - expected) < 1e-8

    @pytest.mark.parametrize("n", [-2.0, -0.5, 0.5])
    def test_dpi_dk_finite_difference(self, n):
        """dPi/dk matches a central difference."""
        k = 0.6
        expected = _central_difference(lambda x: complete_Pi(n, x), k)
        assert abs(dPi_dk(n, k) - expected) < 1e-8

    @pytest.mark.parametrize("n, k", DERIVATIVE_POINTS)
    def test_derivatives_random(self, n, k):
        """All four derivatives match central differences at seeded interior points."""
        pairs = [
            (dE_dk(k), _central_difference(complete_E, k)),
            (dK_dk(k), _central_difference(complete_K, k)),
            (dPi_dn(n, k), _central_difference(lambda x: complete_Pi(x, k), n)),
            (dPi_dk(n, k), _central_difference(lambda x: complete_Pi(n, x), k)),
        ]
        for value, expected in pairs:
            assert abs(value - expected) < 1e-7 * max(1.0, abs(expected))

    def test_dpi_dn_at_zero_characteristic(self):
        """At n = 0 the derivative takes its limit (K - E) / k^2."""
        k = 0.6
        expected = (complete_K(k) - complete_E(k)) / k ** 2
        assert dPi_dn(0.0, k) == pytest.approx(expected, rel=1e-12)

    def test_degenerate_characteristic(self):
        """n == k^2 is rejected with a message naming the formula."""
        with pytest.raises(EllipticDomainError, match="dPi_dn"):
            dPi_dn(0.36, 0.6)
        with pytest.raises(EllipticDomainError, match="dPi_dk"):
            dPi_dk(0.36, 0.6)


class TestLegendre:
    """Tests for Legendre's relation and the elliptic inequality."""

    @pytest.mark.parametrize("k", [i / 10 for i in range(1, 10)])
    def test_legendre_relation(self, k):
        """E K' + E' K - K K' = pi/2 within 1e-12."""
        assert abs(legendre_relation_residual(k)) < 1e-12

    def test_legendre_relation_domain(self):
        """The relation is checked on the open interval only."""
        with pytest.raises(ValueError):
            legendre_relation_residual(0.0)

    def test_gap_matches_direct_form(self):
        """legendre_gap equals K - 2E/(2 - k^2) where no cancellation occurs."""
        for k in (0.5, 0.8, 0.95):
            direct = complete_K(k) - 2 * complete_E(k) / (2 - k * k)
            assert legendre_gap(k) == pytest.approx(direct, rel=1e-12)

    def test_gap_non_negative(self):
        """K(k) >= 2E(k)/(2 - k^2) on [0, 1)."""
        k = np.linspace(0.0, 0.999, 1000)
        assert np.all(legendre_gap(k) >= -1e-12)

    def test_reduced_gap(self):
        """The reduced gap vanishes at 0 and scales back to the gap."""
        assert abs(legendre_gap_reduced(0.0)) < 1e-15
        k = 0.7
        assert legendre_gap(k) == pytest.approx(k * k / (2 - k * k) * legendre_gap_reduced(k), rel=1e-14)
