"""
Unit tests for the non-maximality harness.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from backend.bipolar import bipolar_lawson_record
from backend.bounds import torus_bound
from backend.serialization import ReportSerializer
from backend.verify import TheoremVerifier, report, sweep_properties, verify_family
from config import DEFAULT_GRID_SIZE, MARGIN_WARNING_THRESHOLD
from models.data_models import (
    EnumerationLimits, ExtremalRecord, Family, LawsonParameter, Topology, ValueKind
)

SMALL_LIMITS = EnumerationLimits(max_q=10, max_m=20, max_r2=100)


@pytest.fixture(scope="module")
def small_report():
    """Full harness run at small limits and the minimum grid."""
    return TheoremVerifier(SMALL_LIMITS, grid_size=100).run()


@pytest.fixture(scope="module")
def default_reports():
    """Two independent harness runs at the default limits and grid."""
    return [TheoremVerifier(EnumerationLimits(), grid_size=DEFAULT_GRID_SIZE).run() for _ in range(2)]


def _record(value_offset: float, index: int = 3) -> ExtremalRecord:
    baseline = torus_bound(index).value
    return ExtremalRecord(
        family=Family.OTSUKI,
        params={'p': 2, 'q': 3},
        topology=Topology.TORUS,
        index=index,
        value=baseline + value_offset,
        value_kind=ValueKind.EXACT,
        baseline=baseline
    )


class TestVerifyFamily:
    """Tests for per-family enumeration."""

    def test_otsuki_smallest(self):
        """q <= 3 admits only 2/3."""
        records = verify_family(Family.OTSUKI, EnumerationLimits(max_q=3))
        assert [r.params for r in records] == [{'p': 2, 'q': 3}]
        assert records[0].index == 3

    def test_bipolar_lawson_contains_equality(self):
        """m <= 3 gives (2, 1), (3, 1), (3, 2); (3, 1) meets its bound."""
        records = verify_family(Family.BIPOLAR_LAWSON, EnumerationLimits(max_m=3))
        assert [(r.params['m'], r.params['k']) for r in records] == [(2, 1), (3, 1), (3, 2)]
        assert abs(records[1].margin) < 1e-12

    def test_clifford_radii(self):
        """r^2 <= 5 gives the representable radii 1, 2, 4, 5."""
        records = verify_family(Family.CLIFFORD, EnumerationLimits(max_r2=5))
        assert [r.params['r2'] for r in records] == [1, 2, 4, 5]

    def test_deterministic_order(self):
        """Two enumerations return the same records in the same order."""
        first = verify_family(Family.LAWSON, EnumerationLimits(max_m=15))
        second = verify_family(Family.LAWSON, EnumerationLimits(max_m=15))
        assert [(r.label(), r.value) for r in first] == [(r.label(), r.value) for r in second]

    def test_verify_all_order(self):
        """Records come family by family in declaration order."""
        verifier = TheoremVerifier(EnumerationLimits(max_q=5, max_m=3, max_r2=2))
        families = []
        for record in verifier.verify_all():
            if not families or families[-1] is not record.family:
                families.append(record.family)
        assert families == list(Family)


class TestSweeps:
    """Tests for the property sweeps."""

    def test_all_pass(self):
        """Every sweep passes on the minimum grid."""
        results = sweep_properties(100, SMALL_LIMITS)
        failed = [r.name for r in results if not r.passed]
        assert failed == []
        assert len({r.name for r in results}) == len(results)

    @pytest.mark.parametrize("grid_size", [99, 0, 100.0, True])
    def test_invalid_grid(self, grid_size):
        """grid_size must be an integer >= 100."""
        with pytest.raises(ValueError):
            TheoremVerifier(grid_size=grid_size)

    @pytest.mark.parametrize("tolerance", [0.0, -1e-12, float('nan'), float('inf')])
    def test_invalid_equality_tolerance(self, tolerance):
        """The equality tolerance must be positive and finite."""
        with pytest.raises(ValueError):
            TheoremVerifier(equality_tolerance=tolerance)

    def test_lawson_index_sweep_excludes_smallest_pair(self):
        """(1, 1) is listed as excluded, not as a failure."""
        result = TheoremVerifier(SMALL_LIMITS, grid_size=100).sweep_lawson_index_inequality()
        assert result.passed
        assert result.details == {'excluded': [[1, 1]]}

    def test_small_radius_reports_printed_form(self):
        """The small-radius sweep carries the margins of the inequality as stated."""
        result = TheoremVerifier(SMALL_LIMITS, grid_size=100).sweep_clifford_small_radius()
        assert result.passed
        assert set(result.details['printed_margins']) == {'1', '2', '4', '5'}

    def test_equality_sweep_uses_instance_tolerance(self):
        """The equality sweep measures its margin against the configured tolerance."""
        result = TheoremVerifier(SMALL_LIMITS, grid_size=100, equality_tolerance=1e-3).sweep_bipolar_equality()
        assert result.passed
        assert 1e-4 < result.worst_margin <= 1e-3
        assert "0.001" in result.description


class TestReport:
    """Tests for the margin checks and the verdict."""

    def test_negative_margin_fails(self):
        """A record above its bound is a violation naming the record."""
        result = report([_record(1.0)], [])
        assert result.verdict == "fail"
        assert len(result.violations) == 1
        assert "Otsuki(p=2,q=3)" in result.violations[0]

    def test_zero_margin_fails_unless_whitelisted(self):
        """Equality is only allowed for the whitelisted metric."""
        assert report([_record(0.0)], []).verdict == "fail"

    def test_whitelisted_equality_passes(self):
        """The bipolar Klein bottle (3, 1) alone passes."""
        result = report([bipolar_lawson_record(LawsonParameter(3, 1))], [])
        assert result.verdict == "pass"
        assert result.violations == []

    def test_wrong_baseline_fails(self):
        """A baseline that is not the bound for the index is a violation."""
        record = _record(-1.0)
        record.baseline += 1.0
        record.margin = record.baseline - record.value
        result = report([record], [])
        assert result.verdict == "fail"
        assert "baseline" in result.violations[0]

    def test_small_margin_warns(self):
        """Positive margins below 1e-9 pass with a warning."""
        result = report([_record(-1e-10)], [])
        assert result.verdict == "pass"
        assert len(result.warnings) == 1

    def test_empty_report_passes(self):
        """No records and no sweeps give a passing verdict."""
        assert report([], []).passed()


class TestFullRun:
    """Tests for TheoremVerifier.run."""

    def test_passes(self, small_report):
        """All families and sweeps pass at small limits."""
        assert small_report.violations == []
        assert small_report.failed_sweeps == []
        assert small_report.verdict == "pass"
        assert small_report.limits == SMALL_LIMITS.as_dict()

    def test_single_equality(self, small_report):
        """Exactly one record has |margin| within the equality tolerance."""
        equal = [r for r in small_report.records if abs(r.margin) <= 1e-12]
        assert [r.label() for r in equal] == ["BipolarLawson(m=3,k=1)"]

    def test_progress_callback(self):
        """The callback sees every family and the completion message."""
        calls = []
        verifier = TheoremVerifier(EnumerationLimits(max_q=5, max_m=5, max_r2=10))
        verifier.set_progress_callback(lambda current, total, message: calls.append((current, total, message)))
        verifier.verify_all()
        assert len(calls) == len(Family) + 1
        assert calls[-1] == (len(Family), len(Family), "Families enumerated")


class TestDefaultLimits:
    """Tests for the run at the default limits q <= 30, m <= 100, r^2 <= 10^4."""

    def test_passes(self, default_reports):
        """The default run passes with limits recorded in the report."""
        first, _ = default_reports
        assert first.verdict == "pass"
        assert first.violations == []
        assert first.limits == {'max_q': 30, 'max_m': 100, 'max_r2': 10_000}

    def test_only_equality_is_bipolar_klein_bottle(self, default_reports):
        """BipolarLawson(3,1) is the only record with margin <= 1e-9."""
        first, _ = default_reports
        tight = [r.label() for r in first.records if r.margin <= MARGIN_WARNING_THRESHOLD]
        assert tight == ["BipolarLawson(m=3,k=1)"]

    def test_identical_json(self, default_reports):
        """Two runs serialize to the same bytes."""
        first, second = default_reports
        assert ReportSerializer.report_to_json(first) == ReportSerializer.report_to_json(second)

    def test_omega_quadrature_on_fine_grid(self, default_reports):
        """Closed form and quadrature agree on all 1000 grid points."""
        first, _ = default_reports
        sweep = next(s for s in first.sweeps if s.name == 'omega_quadrature')
        assert sweep.passed
        assert sweep.samples == DEFAULT_GRID_SIZE == 1000
