"""
Unit tests for the sup Lambda_n lower bounds.
"""

import math
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from backend.bounds import (
    SPHERE_CONTRIBUTION,
    equilateral_torus_value,
    klein_bound,
    sup_lower_bound,
    tau31_value,
    torus_bound
)
from models.data_models import Topology


class TestTorusBound:
    """Tests for the torus bound 8*pi*(n - 1 + pi/sqrt(3))."""

    def test_first_index(self):
        """n = 1 is the equilateral torus alone."""
        bound = torus_bound(1)
        assert bound.value == pytest.approx(8 * math.pi ** 2 / math.sqrt(3), rel=1e-15)
        assert bound.sphere_count == 0
        assert bound.base_value == equilateral_torus_value()

    @pytest.mark.parametrize("n", [2, 5, 100])
    def test_formula(self, n):
        """Each extra index adds one round sphere, 8*pi."""
        expected = 8 * math.pi * (n - 1 + math.pi / math.sqrt(3))
        assert torus_bound(n).value == pytest.approx(expected, rel=1e-14)
        assert torus_bound(n).sphere_value == pytest.approx(8 * math.pi * (n - 1), rel=1e-15)

    def test_consecutive_difference(self):
        """bound(n + 1) - bound(n) = 8*pi."""
        for n in range(1, 50):
            difference = torus_bound(n + 1).value - torus_bound(n).value
            assert difference == pytest.approx(SPHERE_CONTRIBUTION, rel=1e-12)


class TestKleinBound:
    """Tests for the Klein bottle bound 8*pi*(n - 1) + 12*pi*E(2 sqrt 2 / 3)."""

    def test_first_index(self):
        """n = 1 is the bipolar Lawson Klein bottle alone."""
        bound = klein_bound(1)
        assert bound.value == tau31_value()
        assert bound.topology is Topology.KLEIN

    def test_construction(self):
        """value = base contribution + sphere contribution."""
        bound = klein_bound(7)
        assert bound.value == pytest.approx(bound.base_value + bound.sphere_value, rel=1e-15)
        assert bound.sphere_count == 6

    def test_klein_base_below_torus_base(self):
        """12*pi*E(2 sqrt 2/3) < 8*pi^2/sqrt(3)."""
        assert tau31_value() < equilateral_torus_value()


class TestDispatch:
    """Tests for sup_lower_bound and argument validation."""

    def test_dispatch(self):
        """Topology selects the bound."""
        assert sup_lower_bound(Topology.TORUS, 3) == torus_bound(3)
        assert sup_lower_bound(Topology.KLEIN, 3) == klein_bound(3)

    @pytest.mark.parametrize("n", [0, -1, 2.5, True])
    def test_invalid_index(self, n):
        """n must be an integer >= 1."""
        with pytest.raises(ValueError):
            torus_bound(n)
        with pytest.raises(ValueError):
            klein_bound(n)

    def test_unknown_topology(self):
        """Only Topology members are accepted."""
        with pytest.raises(ValueError):
            sup_lower_bound('torus', 1)
