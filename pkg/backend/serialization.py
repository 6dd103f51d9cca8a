"""
Serialization of extremal records, verification reports and geodesic traces.

JSON and CSV layouts are fixed: every record renders as
{family, params, topology, index, value, value_kind, baseline, margin}
with the CSV columns in the same order. Floats are rounded to the requested
number of significant digits, and nothing time-dependent is written, so
identical inputs give byte-identical output.
"""

import gzip
import io
import json
import math
import os
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from config import (
    APP_NAME, APP_VERSION, DEFAULT_PRECISION, EQUALITY_WHITELIST,
    GEODESIC_MAX_EXPORT_ROWS, RECORD_COLUMNS, REPORT_FORMAT_VERSION
)
from backend.geodesic import trace_to_frame
from models.data_models import (
    ExtremalRecord, SupLowerBound, SweepResult, ValueKind, VerificationReport
)
from models.geodesic_models import GeodesicTrace
from utils.file_utils import ensure_directory, write_text
from utils.logging_config import get_logger

logger = get_logger(__name__)


def round_significant(value: Optional[float], precision: int = DEFAULT_PRECISION) -> Any:
    """
    Round a float to precision significant digits; non-finite values become strings.

    Args:
        value: Number to round (None passes through).
        precision: Significant digits, >= 1.

    Returns:
        The rounded float, or 'inf' / '-inf' / 'nan' for non-finite input.
    """
    if value is None or isinstance(value, (bool, int)):
        return value
    if not math.isfinite(value):
        return repr(float(value))
    return float(f"{value:.{precision}g}")


def _round_nested(value: Any, precision: int) -> Any:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float):
        return round_significant(value, precision)
    if isinstance(value, dict):
        return {key: _round_nested(item, precision) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_nested(item, precision) for item in value]
    return value


def format_params(params: Dict[str, int]) -> str:
    """Parameters as 'p=2;q=3' for CSV and human output."""
    return ';'.join(f"{name}={value}" for name, value in params.items())


class ReportSerializer:
    """
    Renders records, sweeps and reports as JSON, CSV or plain text.

    Reports can also be saved to and loaded from disk; a '.gz' suffix
    selects gzip compression.
    """

    @staticmethod
    def record_to_dict(record: ExtremalRecord, precision: int = DEFAULT_PRECISION) -> Dict[str, Any]:
        """
        Record in the fixed JSON layout.

        Args:
            record: Record to render.
            precision: Significant digits of the float fields.

        Returns:
            Dict[str, Any]: Keys in RECORD_COLUMNS order.
        """
        return {
            'family': record.family.value,
            'params': dict(record.params),
            'topology': record.topology.value,
            'index': record.index,
            'value': round_significant(record.value, precision),
            'value_kind': record.value_kind.value,
            'baseline': round_significant(record.baseline, precision),
            'margin': round_significant(record.margin, precision),
        }

    @staticmethod
    def sweep_to_dict(sweep: SweepResult, precision: int = DEFAULT_PRECISION) -> Dict[str, Any]:
        return {
            'name': sweep.name,
            'description': sweep.description,
            'passed': sweep.passed,
            'worst_margin': round_significant(sweep.worst_margin, precision),
            'worst_location': _round_nested(sweep.worst_location, precision),
            'samples': sweep.samples,
            'details': _round_nested(sweep.details, precision) if sweep.details else {},
        }

    @staticmethod
    def report_to_dict(report: VerificationReport, precision: int = DEFAULT_PRECISION) -> Dict[str, Any]:
        """
        Report as a deterministic dictionary.

        Contains the format version, limits, the equality whitelist, a
        per-family summary (count and minimum margin), warnings, violations,
        sweeps, records and the verdict.
        """
        summary: Dict[str, Dict[str, Any]] = {}
        for record in report.records:
            entry = summary.setdefault(record.family.value, {'count': 0, 'min_margin': math.inf})
            entry['count'] += 1
            entry['min_margin'] = min(entry['min_margin'], record.margin)
        for entry in summary.values():
            entry['min_margin'] = round_significant(entry['min_margin'], precision)

        return {
            'format_version': REPORT_FORMAT_VERSION,
            'application': {'name': APP_NAME, 'version': APP_VERSION},
            'limits': dict(report.limits),
            'whitelist': [[family, list(params)] for family, params in sorted(EQUALITY_WHITELIST)],
            'verdict': report.verdict,
            'summary': summary,
            'violations': list(report.violations),
            'warnings': list(report.warnings),
            'sweeps': [ReportSerializer.sweep_to_dict(s, precision) for s in report.sweeps],
            'records': [ReportSerializer.record_to_dict(r, precision) for r in report.records],
        }

    @staticmethod
    def records_to_json(records: List[ExtremalRecord], precision: int = DEFAULT_PRECISION) -> str:
        data = [ReportSerializer.record_to_dict(record, precision) for record in records]
        return json.dumps(data, indent=2, ensure_ascii=False) + '\n'

    @staticmethod
    def report_to_json(report: VerificationReport, precision: int = DEFAULT_PRECISION) -> str:
        data = ReportSerializer.report_to_dict(report, precision)
        return json.dumps(data, indent=2, ensure_ascii=False) + '\n'

    @staticmethod
    def records_to_frame(records: List[ExtremalRecord]) -> pd.DataFrame:
        """Records as a DataFrame with RECORD_COLUMNS, params flattened to 'p=2;q=3'."""
        rows = [
            {
                'family': record.family.value,
                'params': format_params(record.params),
                'topology': record.topology.value,
                'index': record.index,
                'value': record.value,
                'value_kind': record.value_kind.value,
                'baseline': record.baseline,
                'margin': record.margin,
            }
            for record in records
        ]
        return pd.DataFrame(rows, columns=RECORD_COLUMNS)

    @staticmethod
    def frame_to_csv(frame: pd.DataFrame, precision: int = DEFAULT_PRECISION) -> str:
        """CSV text with a header row, LF line endings and explicit float format."""
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, lineterminator='\n', float_format=f"%.{precision}g")
        return buffer.getvalue()

    @staticmethod
    def records_to_csv(records: List[ExtremalRecord], precision: int = DEFAULT_PRECISION) -> str:
        return ReportSerializer.frame_to_csv(ReportSerializer.records_to_frame(records), precision)

    @staticmethod
    def record_to_human(record: ExtremalRecord, precision: int = DEFAULT_PRECISION) -> str:
        """Multi-line plain-text rendering with the symbolic formula."""
        kind = " (upper bound)" if record.value_kind is ValueKind.UPPER_BOUND else ""
        lines = [
            f"{record.family.value} {format_params(record.params)} [{record.topology.value}]",
            f"  Lambda_{record.index} = {record.value:.{precision}g}{kind}",
        ]
        if record.formula:
            lines.append(f"    = {record.formula}")
        lines.append(f"  baseline = {record.baseline:.{precision}g}")
        lines.append(f"  margin   = {record.margin:.{precision}g}")
        return '\n'.join(lines)

    @staticmethod
    def records_to_human(records: List[ExtremalRecord], precision: int = DEFAULT_PRECISION) -> str:
        if not records:
            return "No records.\n"
        return '\n\n'.join(ReportSerializer.record_to_human(r, precision) for r in records) + '\n'

    @staticmethod
    def report_to_human(report: VerificationReport, precision: int = DEFAULT_PRECISION) -> str:
        """Summary table, sweeps, warnings and violations as plain text."""
        data = ReportSerializer.report_to_dict(report, precision)
        lines = [f"{APP_NAME} {APP_VERSION} verification report"]
        lines.append("Limits: " + ', '.join(f"{k}={v}" for k, v in data['limits'].items()))
        lines.append("")
        lines.append(f"{'family':<16}{'records':>8}  min margin")
        for family, entry in data['summary'].items():
            lines.append(f"{family:<16}{entry['count']:>8}  {entry['min_margin']}")
        lines.append("")
        for sweep in report.sweeps:
            status = "pass" if sweep.passed else "FAIL"
            lines.append(
                f"[{status}] {sweep.name}: worst {sweep.worst_margin:.{precision}g} "
                f"at {sweep.worst_location} ({sweep.samples} samples)"
            )
        for message in report.warnings:
            lines.append(f"warning: {message}")
        for message in report.violations:
            lines.append(f"VIOLATION: {message}")
        lines.append("")
        lines.append(f"Verdict: {report.verdict}")
        return '\n'.join(lines) + '\n'

    @staticmethod
    def save_report(
        filepath: str,
        report: VerificationReport,
        precision: int = DEFAULT_PRECISION
    ) -> bool:
        """
        Save a report as JSON, gzip-compressed when filepath ends in '.gz'.

        Args:
            filepath: Output path.
            report: Report to save.
            precision: Significant digits of floats.

        Returns:
            bool: True if save was successful.
        """
        try:
            json_data = ReportSerializer.report_to_json(report, precision)
            ensure_directory(os.path.dirname(filepath))

            if filepath.endswith('.gz'):
                # mtime=0 keeps the compressed bytes reproducible
                payload = gzip.compress(json_data.encode('utf-8'), compresslevel=9, mtime=0)
                with open(filepath, 'wb') as f:
                    f.write(payload)
            else:
                write_text(filepath, json_data)

            logger.info(f"Report saved: {filepath} ({len(json_data):,} characters)")
            return True

        except OSError as e:
            logger.error(f"Failed to save report: {e}")
            raise

    @staticmethod
    def load_report(filepath: str) -> Dict[str, Any]:
        """
        Load a saved report as a dictionary.

        Raises:
            ValueError: If the file is not a report.
            FileNotFoundError: If the file doesn't exist.
        """
        if filepath.endswith('.gz'):
            with open(filepath, 'rb') as f:
                text = gzip.decompress(f.read()).decode('utf-8')
        else:
            with open(filepath, 'r', encoding='utf-8') as f:
                text = f.read()

        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"Invalid report file: {e}") from e
        if not isinstance(data, dict) or 'verdict' not in data:
            raise ValueError(f"Invalid report file: {filepath}")

        file_version = data.get('format_version', 'unknown')
        if file_version != REPORT_FORMAT_VERSION:
            logger.warning(f"Report version mismatch: {file_version} vs {REPORT_FORMAT_VERSION}")
        return data

    @staticmethod
    def bound_to_dict(bound: SupLowerBound, precision: int = DEFAULT_PRECISION) -> Dict[str, Any]:
        """Lower bound with its construction (base surface and attached spheres)."""
        return {
            'topology': bound.topology.value,
            'n': bound.n,
            'value': round_significant(bound.value, precision),
            'base_surface': bound.base_surface,
            'base_value': round_significant(bound.base_value, precision),
            'sphere_count': bound.sphere_count,
            'sphere_value': round_significant(bound.sphere_value, precision),
        }

    @staticmethod
    def mapping_to_json(data: Any, precision: int = DEFAULT_PRECISION) -> str:
        return json.dumps(_round_nested(data, precision), indent=2, ensure_ascii=False) + '\n'

    @staticmethod
    def rows_to_csv(
        rows: List[Dict[str, Any]],
        columns: List[str],
        precision: int = DEFAULT_PRECISION
    ) -> str:
        return ReportSerializer.frame_to_csv(pd.DataFrame(rows, columns=columns), precision)

    @staticmethod
    def mapping_to_human(data: Dict[str, Any], precision: int = DEFAULT_PRECISION) -> str:
        """One 'key = value' line per entry, floats at the requested precision."""
        width = max((len(key) for key in data), default=0)
        lines = []
        for key, value in data.items():
            text = f"{value:.{precision}g}" if isinstance(value, float) else str(value)
            lines.append(f"{key:<{width}} = {text}")
        return '\n'.join(lines) + '\n'

    @staticmethod
    def trace_to_csv(
        trace: GeodesicTrace,
        precision: int = DEFAULT_PRECISION,
        max_rows: Optional[int] = GEODESIC_MAX_EXPORT_ROWS
    ) -> str:
        """Trace samples as CSV with columns s, phi, theta."""
        return ReportSerializer.frame_to_csv(trace_to_frame(trace, max_rows), precision)

    @staticmethod
    def save_trace(
        filepath: str,
        trace: GeodesicTrace,
        precision: int = DEFAULT_PRECISION,
        max_rows: Optional[int] = GEODESIC_MAX_EXPORT_ROWS
    ) -> int:
        """
        Write a trace CSV file.

        Returns:
            int: Number of data rows written.
        """
        text = ReportSerializer.trace_to_csv(trace, precision, max_rows)
        write_text(filepath, text)
        rows = text.count('\n') - 1
        logger.info(f"Trace saved: {filepath} ({rows} rows)")
        return rows
