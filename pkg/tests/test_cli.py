"""
Tests for the command-line front end.
"""

import json
import logging
import math
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from backend.bounds import tau31_value
from config import EXIT_INVALID, EXIT_OK, RECORD_COLUMNS
from frontend.cli import build_parser, run
from utils.logging_config import set_console_level, setup_logging


class TestParser:
    """Tests for argument parsing."""

    def test_global_options_before_command(self):
        """--format given before the subcommand is kept."""
        args = build_parser().parse_args(['--format', 'csv', 'lawson', '--m', '3', '--k', '1'])
        assert args.format == 'csv'
        assert args.precision == 12

    def test_global_options_after_command(self):
        """--format given after the subcommand is accepted too."""
        args = build_parser().parse_args(['lawson', '--m', '3', '--k', '1', '--format', 'json'])
        assert args.format == 'json'

    @pytest.mark.parametrize("argv", [
        [],
        ['lawson', '--m', '3'],
        ['lawson', '--m', 'three', '--k', '1'],
        ['--precision', '0', 'lawson', '--m', '3', '--k', '1'],
        ['--precision', '18', 'lawson', '--m', '3', '--k', '1'],
        ['--format', 'xml', 'clifford'],
        ['verify', '--tol', '-1'],
        ['bounds', '--surface', 'sphere', '--n', '1'],
    ])
    def test_usage_errors(self, argv, capsys):
        """Malformed arguments exit with status 2."""
        assert run(argv) == EXIT_INVALID
        assert capsys.readouterr().err

    def test_verbose_keeps_stdout_clean(self, capsys):
        """--verbose logs to standard error only."""
        root = logging.getLogger()
        saved_handlers, saved_level = list(root.handlers), root.level
        setup_logging(log_to_file=False)
        try:
            assert run(['--verbose', '--format', 'json', 'bounds', '--surface', 'torus', '--n', '2']) == EXIT_OK
            captured = capsys.readouterr()
            assert json.loads(captured.out)['n'] == 2
            assert 'Running command: bounds' in captured.err
        finally:
            set_console_level(logging.WARNING)
            root.handlers[:] = saved_handlers
            root.setLevel(saved_level)
            sys.excepthook = sys.__excepthook__

    def test_version(self, capsys):
        """--version exits 0."""
        assert run(['--version']) == EXIT_OK
        assert '1.0.0' in capsys.readouterr().out


class TestRecordCommands:
    """Tests for single-record and enumeration commands."""

    def test_lawson_json(self, capsys):
        """tau_{3,1} as a single JSON object."""
        assert run(['lawson', '--m', '3', '--k', '1', '--format', 'json']) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert list(data.keys()) == RECORD_COLUMNS
        assert data['index'] == 5
        assert data['topology'] == 'torus'
        assert data['margin'] > 0

    def test_otsuki_human(self, capsys):
        """The default output names the index and the formula."""
        assert run(['otsuki', '--p', '2', '--q', '3']) == EXIT_OK
        out = capsys.readouterr().out
        assert "Lambda_3 = " in out
        assert "margin" in out

    def test_otsuki_invalid_parameter(self, capsys):
        """1/2 is outside (1/2, sqrt(2)/2)."""
        assert run(['otsuki', '--p', '1', '--q', '2']) == EXIT_INVALID
        captured = capsys.readouterr()
        assert captured.out == ''
        assert 'error:' in captured.err

    def test_otsuki_needs_parameters(self, capsys):
        """Without --p/--q or enumerate the command is rejected."""
        assert run(['otsuki']) == EXIT_INVALID
        assert 'error:' in capsys.readouterr().err

    def test_otsuki_enumerate(self, capsys):
        """q <= 7 gives 2/3, 3/5 and 4/7 as a JSON list."""
        assert run(['otsuki', 'enumerate', '--max-q', '7', '--format', 'json']) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert [entry['params'] for entry in data] == [
            {'p': 2, 'q': 3}, {'p': 3, 'q': 5}, {'p': 4, 'q': 7}
        ]

    def test_bipolar_equality_case(self, capsys):
        """The bipolar Klein bottle (3, 1) prints a zero margin."""
        assert run(['bipolar', 'lawson', '--m', '3', '--k', '1', '--format', 'json']) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data['topology'] == 'klein'
        assert data['index'] == 1
        assert data['margin'] == 0.0

    def test_bipolar_clifford_pair(self, capsys):
        """(1, 1) has no bipolar record."""
        assert run(['bipolar', 'lawson', '--m', '1', '--k', '1']) == EXIT_INVALID
        assert 'error:' in capsys.readouterr().err

    def test_bipolar_otsuki(self, capsys):
        """Bipolar Otsuki records are upper bounds."""
        assert run(['bipolar', 'otsuki', '--p', '2', '--q', '3', '--format', 'json']) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data['value_kind'] == 'upper-bound'
        assert data['index'] == 12

    def test_clifford_csv(self, capsys):
        """Header plus one row per representable r^2 <= 5."""
        assert run(['--format', 'csv', 'clifford', '--max-r2', '5']) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == ','.join(RECORD_COLUMNS)
        assert len(lines) == 5
        assert lines[1].startswith('Clifford,r2=1,torus,1,')


class TestMappingCommands:
    """Tests for bounds and elliptic."""

    def test_klein_bound(self, capsys):
        """n = 1 on the Klein bottle is 12*pi*E(2 sqrt 2/3)."""
        assert run(['bounds', '--surface', 'klein', '--n', '1', '--format', 'json',
                    '--precision', '17']) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data['value'] == pytest.approx(tau31_value(), rel=1e-15)
        assert data['sphere_count'] == 0

    def test_elliptic(self, capsys):
        """K, E and Pi with their derivatives."""
        assert run(['elliptic', '--k', '0', '--n', '0.5', '--format', 'json']) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data['K'] == pytest.approx(math.pi / 2)
        assert data['E'] == pytest.approx(math.pi / 2)
        assert data['Pi'] == pytest.approx(math.pi / math.sqrt(2))
        assert {'dE_dk', 'dK_dk', 'legendre_gap', 'dPi_dn', 'dPi_dk'} <= set(data)

    def test_elliptic_at_one(self, capsys):
        """At k = 1 only E is finite."""
        assert run(['elliptic', '--k', '1', '--format', 'json']) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data['E'] == pytest.approx(1.0)
        assert 'K' not in data

    def test_elliptic_domain_error(self, capsys):
        """n = k^2 has no derivative in n."""
        assert run(['elliptic', '--k', '0.5', '--n', '0.25']) == EXIT_INVALID
        assert 'domain error' in capsys.readouterr().err


class TestLongCommands:
    """Tests for geodesic and verify."""

    def test_geodesic(self, tmp_path, capsys):
        """The traced geodesic of O_{2/3} closes and matches Lambda_3."""
        out = str(tmp_path / 'trace.csv')
        assert run(['geodesic', '--p', '2', '--q', '3', '--out', out, '--format', 'json']) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data['closed'] is True
        assert data['relative_difference'] < 1e-6
        with open(out, 'r', encoding='utf-8') as f:
            assert f.readline().strip() == 's,phi,theta'

    def test_verify(self, tmp_path, capsys):
        """Small limits pass and the saved report matches the printed one."""
        out = str(tmp_path / 'report.json')
        argv = ['verify', '--max-q', '10', '--max-m', '20', '--max-r2', '100',
                '--grid', '100', '--out', out, '--format', 'json']
        assert run(argv) == EXIT_OK
        printed = json.loads(capsys.readouterr().out)
        assert printed['verdict'] == 'pass'
        with open(out, 'r', encoding='utf-8') as f:
            assert json.load(f) == printed

    def test_verify_grid_too_small(self, capsys):
        """Grids below 100 points are rejected."""
        assert run(['verify', '--max-q', '5', '--grid', '50']) == EXIT_INVALID
        assert 'error:' in capsys.readouterr().err
