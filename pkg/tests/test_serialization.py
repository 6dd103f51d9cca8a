"""
Unit tests for record, report and trace serialization.
"""

import json
import math
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from backend.bipolar import bipolar_lawson_record, bipolar_otsuki_record
from backend.geodesic import trace_arc
from backend.lawson import lawson_lambda
from backend.otsuki import otsuki_lambda
from backend.serialization import ReportSerializer, format_params, round_significant
from backend.verify import report
from config import RECORD_COLUMNS
from models.data_models import (
    EnumerationLimits, LawsonParameter, OtsukiAngle, OtsukiParameter, SweepResult
)


@pytest.fixture
def records():
    """A small mixed list of records."""
    return [
        otsuki_lambda(OtsukiParameter(2, 3)),
        lawson_lambda(LawsonParameter(3, 1)),
        bipolar_lawson_record(LawsonParameter(3, 1)),
    ]


@pytest.fixture
def sample_report(records):
    """Passing report over the sample records with one sweep."""
    sweep = SweepResult('phi_bounds', "1 <= Phi(a)", True, 0.25, 0.5, 100)
    return report(records, [sweep], EnumerationLimits(max_q=3, max_m=3, max_r2=1))


class TestRounding:
    """Tests for significant-digit rounding."""

    def test_round_significant(self):
        """Floats are cut to the requested number of significant digits."""
        assert round_significant(math.pi, 3) == 3.14
        assert round_significant(123456.789, 4) == 123500.0
        assert round_significant(-1.23456e-13, 2) == -1.2e-13

    def test_passthrough(self):
        """Integers, booleans and None are not touched."""
        assert round_significant(5) == 5
        assert round_significant(True) is True
        assert round_significant(None) is None

    def test_non_finite(self):
        """Non-finite floats become strings, keeping JSON valid."""
        assert round_significant(math.inf) == 'inf'
        assert round_significant(-math.inf) == '-inf'
        assert round_significant(math.nan) == 'nan'

    def test_format_params(self):
        """Parameters join as name=value pairs."""
        assert format_params({'p': 2, 'q': 3}) == "p=2;q=3"
        assert format_params({}) == ""


class TestRecordOutput:
    """Tests for the record layouts."""

    def test_json_keys(self, records):
        """Every record renders with the fixed key order."""
        data = json.loads(ReportSerializer.records_to_json(records))
        assert len(data) == 3
        for entry in data:
            assert list(entry.keys()) == RECORD_COLUMNS
        assert data[0]['family'] == 'Otsuki'
        assert data[0]['params'] == {'p': 2, 'q': 3}
        assert data[2]['topology'] == 'klein'

    def test_json_deterministic(self, records):
        """Two renderings are byte-identical."""
        first = ReportSerializer.records_to_json(records)
        second = ReportSerializer.records_to_json(records)
        assert first == second
        assert first.endswith('\n')

    def test_csv_layout(self, records):
        """Header row, one line per record, LF line endings."""
        text = ReportSerializer.records_to_csv(records)
        lines = text.split('\n')
        assert lines[0] == ','.join(RECORD_COLUMNS)
        assert lines[1].startswith('Otsuki,p=2;q=3,torus,3,')
        assert lines[-1] == ''
        assert len(lines) == 5
        assert '\r' not in text

    def test_precision(self, records):
        """Values carry the requested significant digits."""
        data = json.loads(ReportSerializer.records_to_json(records[:1], precision=4))
        assert data[0]['value'] == round_significant(records[0].value, 4)

    def test_human(self, records):
        """Plain text shows the index, value and margin."""
        text = ReportSerializer.record_to_human(records[1])
        assert "Lambda_5 = " in text
        assert "baseline = " in text
        assert "margin   = " in text

    def test_human_upper_bound(self):
        """Upper bounds are marked as such."""
        text = ReportSerializer.record_to_human(bipolar_otsuki_record(OtsukiParameter(2, 3)))
        assert "(upper bound)" in text

    def test_human_empty(self):
        """An empty list renders a placeholder line."""
        assert ReportSerializer.records_to_human([]) == "No records.\n"


class TestReportOutput:
    """Tests for report rendering and persistence."""

    def test_report_dict(self, sample_report):
        """Report carries version, limits, whitelist, summary and verdict."""
        data = ReportSerializer.report_to_dict(sample_report)
        assert data['verdict'] == 'pass'
        assert data['limits'] == {'max_q': 3, 'max_m': 3, 'max_r2': 1}
        assert data['whitelist'] == [['BipolarLawson', [3, 1]]]
        assert data['summary']['Otsuki']['count'] == 1
        assert data['sweeps'][0]['name'] == 'phi_bounds'
        assert len(data['records']) == 3

    def test_report_human(self, sample_report):
        """Plain-text report ends with the verdict."""
        text = ReportSerializer.report_to_human(sample_report)
        assert "[pass] phi_bounds" in text
        assert text.endswith("Verdict: pass\n")

    def test_save_and_load(self, sample_report, tmp_path):
        """A saved report loads back with the same content."""
        path = str(tmp_path / 'reports' / 'report.json')
        assert ReportSerializer.save_report(path, sample_report)
        data = ReportSerializer.load_report(path)
        assert data == json.loads(ReportSerializer.report_to_json(sample_report))

    def test_save_gzip_reproducible(self, sample_report, tmp_path):
        """Compressed reports are byte-identical across saves."""
        first = str(tmp_path / 'first.json.gz')
        second = str(tmp_path / 'second.json.gz')
        ReportSerializer.save_report(first, sample_report)
        ReportSerializer.save_report(second, sample_report)
        with open(first, 'rb') as f_first, open(second, 'rb') as f_second:
            assert f_first.read() == f_second.read()
        assert ReportSerializer.load_report(first)['verdict'] == 'pass'

    def test_load_invalid(self, tmp_path):
        """Files that are not reports are rejected."""
        broken = tmp_path / 'broken.json'
        broken.write_text("{not json", encoding='utf-8')
        with pytest.raises(ValueError):
            ReportSerializer.load_report(str(broken))

        other = tmp_path / 'other.json'
        other.write_text('{"records": []}', encoding='utf-8')
        with pytest.raises(ValueError):
            ReportSerializer.load_report(str(other))

    def test_load_missing(self, tmp_path):
        """A missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            ReportSerializer.load_report(str(tmp_path / 'missing.json'))


class TestTraceOutput:
    """Tests for geodesic trace export."""

    def test_save_trace(self, tmp_path):
        """The trace file has the s, phi, theta header and at most max_rows rows."""
        trace = trace_arc(OtsukiAngle(0.3))
        path = str(tmp_path / 'trace.csv')
        rows = ReportSerializer.save_trace(path, trace, max_rows=50)
        with open(path, 'r', encoding='utf-8') as f:
            lines = f.read().splitlines()
        assert lines[0] == 's,phi,theta'
        assert rows == len(lines) - 1
        assert 2 <= rows <= 50

    def test_mapping_to_human(self):
        """One aligned line per key."""
        text = ReportSerializer.mapping_to_human({'K': 1.5, 'label': 'x'}, precision=3)
        assert text == "K     = 1.5\nlabel = x\n"

    def test_mapping_to_json_numpy_scalars(self):
        """numpy booleans, integers and floats serialize as plain JSON values."""
        data = {'closed': np.bool_(True), 'arcs': np.int64(6), 'mismatch': np.float64(1.0 / 3.0)}
        parsed = json.loads(ReportSerializer.mapping_to_json(data, precision=4))
        assert parsed == {'closed': True, 'arcs': 6, 'mismatch': 0.3333}
        assert parsed['closed'] is True
