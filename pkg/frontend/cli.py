"""
Command-line front end.

Every computation is exposed as a subcommand writing JSON, CSV or plain
text to standard output; logging and progress go to standard error.

Exit codes:
    0  success, everything verified
    1  verification found a violation or a failed sweep
    2  invalid arguments or a mathematical domain error
"""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional

from tqdm import tqdm

from backend.bipolar import bipolar_lawson_record, bipolar_otsuki_record
from backend.bounds import sup_lower_bound
from backend.clifford import clifford_records
from backend.elliptic import (
    EllipticDomainError, complete_E, complete_K, complete_Pi, dE_dk, dK_dk,
    dPi_dk, dPi_dn, legendre_gap
)
from backend.geodesic import geodesic_length, trace_geodesic
from backend.lawson import index_diagnostic, lawson_lambda
from backend.otsuki import enumerate_parameters, otsuki_lambda, solve_parameter
from backend.serialization import ReportSerializer, format_params
from backend.validators import (
    output_path_arg, positive_int_arg, precision_arg, real_arg, tolerance_arg
)
from backend.verify import TheoremVerifier
from config import (
    APP_NAME, APP_VERSION, DEFAULT_GRID_SIZE, DEFAULT_MAX_M, DEFAULT_MAX_Q,
    DEFAULT_MAX_R2, DEFAULT_PRECISION, EQUALITY_TOLERANCE, EXIT_INVALID, EXIT_OK,
    EXIT_VIOLATION, MIN_GRID_SIZE, OUTPUT_FORMATS
)
from models.data_models import (
    EnumerationLimits, ExtremalRecord, LawsonParameter, OtsukiParameter, SweepResult,
    Topology
)
from utils.logging_config import get_logger, log_error, set_console_level

logger = get_logger(__name__)

SWEEP_COLUMNS = ['name', 'passed', 'worst_margin', 'worst_location', 'samples']


class _ProgressBar:
    """tqdm bar on standard error fed by TheoremVerifier progress callbacks."""

    def __init__(self, enabled: bool) -> None:
        self.enabled = enabled
        self._bar: Optional[tqdm] = None

    def __call__(self, current: int, total: int, message: str) -> None:
        if not self.enabled:
            return
        if self._bar is None or self._bar.total != total:
            self.close()
            self._bar = tqdm(total=total, desc="Verifying", unit="step", file=sys.stderr, leave=False)
        self._bar.n = current
        self._bar.set_postfix_str(message, refresh=True)
        if current >= total:
            self.close()

    def close(self) -> None:
        if self._bar is not None:
            self._bar.close()
            self._bar = None


# ----------------------------------------------------------------------
# Output
# ----------------------------------------------------------------------

def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def _emit_records(records: List[ExtremalRecord], args: argparse.Namespace, single: bool = False) -> None:
    if args.format == 'json':
        if single:
            data = ReportSerializer.record_to_dict(records[0], args.precision)
            _emit(ReportSerializer.mapping_to_json(data, args.precision))
        else:
            _emit(ReportSerializer.records_to_json(records, args.precision))
    elif args.format == 'csv':
        _emit(ReportSerializer.records_to_csv(records, args.precision))
    else:
        _emit(ReportSerializer.records_to_human(records, args.precision))


def _emit_mapping(data: Dict[str, Any], args: argparse.Namespace) -> None:
    if args.format == 'json':
        _emit(ReportSerializer.mapping_to_json(data, args.precision))
    elif args.format == 'csv':
        _emit(ReportSerializer.rows_to_csv([data], list(data), args.precision))
    else:
        _emit(ReportSerializer.mapping_to_human(data, args.precision))


def _emit_sweeps(sweeps: List[SweepResult], args: argparse.Namespace) -> None:
    if args.format == 'json':
        data = [ReportSerializer.sweep_to_dict(sweep, args.precision) for sweep in sweeps]
        _emit(ReportSerializer.mapping_to_json(data, args.precision))
    elif args.format == 'csv':
        rows = [
            {
                'name': sweep.name,
                'passed': sweep.passed,
                'worst_margin': sweep.worst_margin,
                'worst_location': str(sweep.worst_location),
                'samples': sweep.samples,
            }
            for sweep in sweeps
        ]
        _emit(ReportSerializer.rows_to_csv(rows, SWEEP_COLUMNS, args.precision))
    else:
        lines = []
        for sweep in sweeps:
            status = "pass" if sweep.passed else "FAIL"
            lines.append(
                f"[{status}] {sweep.name}: worst {sweep.worst_margin:.{args.precision}g} "
                f"at {sweep.worst_location} ({sweep.samples} samples)"
            )
            lines.append(f"       {sweep.description}")
        _emit('\n'.join(lines) + '\n')


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

def _cmd_otsuki(args: argparse.Namespace) -> int:
    if args.otsuki_command == 'enumerate':
        records = [otsuki_lambda(param) for param in enumerate_parameters(args.max_q)]
        _emit_records(records, args)
        return EXIT_OK

    if args.p is None or args.q is None:
        raise ValueError("otsuki needs --p and --q (or the 'enumerate' subcommand)")
    record = otsuki_lambda(OtsukiParameter(args.p, args.q))
    _emit_records([record], args, single=True)
    return EXIT_OK


def _cmd_lawson(args: argparse.Namespace) -> int:
    param = LawsonParameter(args.m, args.k)
    record = lawson_lambda(param)
    diagnostic = index_diagnostic(param)
    if diagnostic.disagree:
        logger.info(
            f"Index readings differ for {param}: {diagnostic.printed_index} "
            f"vs {diagnostic.alternative_index}"
        )
    _emit_records([record], args, single=True)
    return EXIT_OK


def _cmd_bipolar(args: argparse.Namespace) -> int:
    if args.bipolar_command == 'lawson':
        record = bipolar_lawson_record(LawsonParameter(args.m, args.k))
    else:
        record = bipolar_otsuki_record(OtsukiParameter(args.p, args.q))
    _emit_records([record], args, single=True)
    return EXIT_OK


def _cmd_clifford(args: argparse.Namespace) -> int:
    _emit_records(clifford_records(args.max_r2), args)
    return EXIT_OK


def _cmd_bounds(args: argparse.Namespace) -> int:
    bound = sup_lower_bound(Topology(args.surface), args.n)
    _emit_mapping(ReportSerializer.bound_to_dict(bound, args.precision), args)
    return EXIT_OK


def _cmd_elliptic(args: argparse.Namespace) -> int:
    k = args.k
    data: Dict[str, Any] = {'k': k, 'E': float(complete_E(k))}
    if k < 1:
        data.update({
            'K': float(complete_K(k)),
            'dE_dk': float(dE_dk(k)),
            'dK_dk': float(dK_dk(k)),
            'legendre_gap': float(legendre_gap(k)),
        })
    if args.n is not None:
        n = args.n
        data.update({
            'n': n,
            'Pi': float(complete_Pi(n, k)),
            'dPi_dn': float(dPi_dn(n, k)),
            'dPi_dk': float(dPi_dk(n, k)),
        })
    _emit_mapping(data, args)
    return EXIT_OK


def _cmd_geodesic(args: argparse.Namespace) -> int:
    param = OtsukiParameter(args.p, args.q)
    angle = solve_parameter(param)
    trace = trace_geodesic(angle, param)
    rows = ReportSerializer.save_trace(args.out, trace, args.precision)

    length = geodesic_length(trace)
    record = otsuki_lambda(param)
    data = {
        'params': format_params(param.as_dict()),
        'a': angle.a,
        'arcs': trace.arcs,
        'closed': trace.closed,
        'mismatch': trace.mismatch,
        'length': length,
        'twice_length': 2.0 * length,
        'lambda_value': record.value,
        'relative_difference': abs(2.0 * length - record.value) / record.value,
        'rows': rows,
        'out': args.out,
    }
    _emit_mapping(data, args)
    return EXIT_OK if trace.closed else EXIT_VIOLATION


def _cmd_sweep(args: argparse.Namespace) -> int:
    verifier = TheoremVerifier(grid_size=args.grid)
    progress = _ProgressBar(enabled=sys.stderr.isatty())
    verifier.set_progress_callback(progress)
    try:
        sweeps = verifier.sweep_properties()
    finally:
        progress.close()
    _emit_sweeps(sweeps, args)
    return EXIT_OK if all(sweep.passed for sweep in sweeps) else EXIT_VIOLATION


def _cmd_verify(args: argparse.Namespace) -> int:
    limits = EnumerationLimits(args.max_q, args.max_m, args.max_r2)
    verifier = TheoremVerifier(limits, args.grid, args.tol)
    progress = _ProgressBar(enabled=sys.stderr.isatty())
    verifier.set_progress_callback(progress)
    try:
        result = verifier.run()
    finally:
        progress.close()

    if args.out:
        ReportSerializer.save_report(args.out, result, args.precision)

    if args.format == 'json':
        _emit(ReportSerializer.report_to_json(result, args.precision))
    elif args.format == 'csv':
        _emit(ReportSerializer.records_to_csv(result.records, args.precision))
    else:
        _emit(ReportSerializer.report_to_human(result, args.precision))

    return EXIT_OK if result.passed() else EXIT_VIOLATION


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def _global_options(suppress: bool) -> argparse.ArgumentParser:
    """
    Shared --format/--precision/--verbose options.

    The top-level parser owns the defaults; subcommand copies use SUPPRESS
    so that a flag given before the subcommand is not overwritten.
    """
    parent = argparse.ArgumentParser(add_help=False)
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parent.add_argument('--format', choices=OUTPUT_FORMATS, default=default('human'),
                        help='Output format (default: human)')
    parent.add_argument('--precision', type=precision_arg, default=default(DEFAULT_PRECISION),
                        help=f'Significant digits of printed numbers (default: {DEFAULT_PRECISION})')
    parent.add_argument('--verbose', action='store_true', default=default(False),
                        help='Log progress to standard error')
    return parent


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with every subcommand."""
    common = _global_options(suppress=True)
    parser = argparse.ArgumentParser(
        prog='extremal-spectra',
        description=f"{APP_NAME}: eigenvalue functionals of extremal metrics on tori and Klein bottles",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[_global_options(suppress=False)],
        epilog="""
Examples:
    main.py otsuki --p 2 --q 3
    main.py lawson --m 3 --k 1 --format json
    main.py bipolar lawson --m 3 --k 1
    main.py geodesic --p 2 --q 3 --out trace.csv
    main.py verify --max-q 10 --max-m 20 --max-r2 100
        """
    )
    parser.add_argument('--version', action='version', version=f'{APP_NAME} {APP_VERSION}')
    commands = parser.add_subparsers(dest='command', required=True, metavar='command')

    otsuki = commands.add_parser('otsuki', parents=[common], help='Otsuki torus O_{p/q}')
    otsuki.add_argument('--p', type=positive_int_arg, help='Numerator p')
    otsuki.add_argument('--q', type=positive_int_arg, help='Denominator q')
    otsuki_commands = otsuki.add_subparsers(dest='otsuki_command', metavar='enumerate')
    enumerate_parser = otsuki_commands.add_parser(
        'enumerate', parents=[common], help='Every Otsuki torus with q <= max-q'
    )
    enumerate_parser.add_argument('--max-q', type=positive_int_arg, default=DEFAULT_MAX_Q)
    otsuki.set_defaults(handler=_cmd_otsuki)

    lawson = commands.add_parser('lawson', parents=[common], help='Lawson tau-surface tau_{m,k}')
    lawson.add_argument('--m', type=positive_int_arg, required=True)
    lawson.add_argument('--k', type=positive_int_arg, required=True)
    lawson.set_defaults(handler=_cmd_lawson)

    bipolar = commands.add_parser('bipolar', parents=[common], help='Bipolar surfaces')
    bipolar_commands = bipolar.add_subparsers(dest='bipolar_command', required=True, metavar='family')
    bipolar_lawson = bipolar_commands.add_parser('lawson', parents=[common], help='Bipolar Lawson surface')
    bipolar_lawson.add_argument('--m', type=positive_int_arg, required=True)
    bipolar_lawson.add_argument('--k', type=positive_int_arg, required=True)
    bipolar_otsuki = bipolar_commands.add_parser('otsuki', parents=[common], help='Bipolar Otsuki torus')
    bipolar_otsuki.add_argument('--p', type=positive_int_arg, required=True)
    bipolar_otsuki.add_argument('--q', type=positive_int_arg, required=True)
    bipolar.set_defaults(handler=_cmd_bipolar)

    clifford = commands.add_parser('clifford', parents=[common], help='Clifford torus records')
    clifford.add_argument('--max-r2', type=positive_int_arg, default=DEFAULT_MAX_R2)
    clifford.set_defaults(handler=_cmd_clifford)

    bounds = commands.add_parser('bounds', parents=[common], help='Lower bound for sup Lambda_n')
    bounds.add_argument('--surface', choices=[t.value for t in Topology], required=True)
    bounds.add_argument('--n', type=positive_int_arg, required=True)
    bounds.set_defaults(handler=_cmd_bounds)

    elliptic = commands.add_parser('elliptic', parents=[common], help='Complete elliptic integrals')
    elliptic.add_argument('--k', type=real_arg, required=True, help='Modulus k')
    elliptic.add_argument('--n', type=real_arg, help='Characteristic n of Pi(n, k)')
    elliptic.set_defaults(handler=_cmd_elliptic)

    geodesic = commands.add_parser('geodesic', parents=[common], help='Trace the Otsuki geodesic')
    geodesic.add_argument('--p', type=positive_int_arg, required=True)
    geodesic.add_argument('--q', type=positive_int_arg, required=True)
    geodesic.add_argument('--out', type=output_path_arg, required=True, help='Trace CSV file')
    geodesic.set_defaults(handler=_cmd_geodesic)

    sweep = commands.add_parser('sweep', parents=[common], help='Run the property sweeps')
    sweep.add_argument('--grid', type=positive_int_arg, default=DEFAULT_GRID_SIZE,
                       help=f'Grid size, at least {MIN_GRID_SIZE}')
    sweep.set_defaults(handler=_cmd_sweep)

    verify = commands.add_parser('verify', parents=[common], help='Run the full harness')
    verify.add_argument('--max-q', type=positive_int_arg, default=DEFAULT_MAX_Q)
    verify.add_argument('--max-m', type=positive_int_arg, default=DEFAULT_MAX_M)
    verify.add_argument('--max-r2', type=positive_int_arg, default=DEFAULT_MAX_R2)
    verify.add_argument('--tol', type=tolerance_arg, default=EQUALITY_TOLERANCE,
                        help=f'Tolerance of the equality case (default: {EQUALITY_TOLERANCE})')
    verify.add_argument('--grid', type=positive_int_arg, default=DEFAULT_GRID_SIZE,
                        help=f'Sweep grid size, at least {MIN_GRID_SIZE}')
    verify.add_argument('--out', type=output_path_arg, help='Also write the JSON report here')
    verify.set_defaults(handler=_cmd_verify)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv and run one command.

    Args:
        argv: Arguments without the program name; sys.argv[1:] if None.

    Returns:
        int: Exit code (0 ok, 1 violation, 2 invalid input).
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help/--version and 2 for usage errors
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID

    if args.verbose:
        set_console_level(logging.INFO)
    handler: Callable[[argparse.Namespace], int] = args.handler
    logger.info(f"Running command: {args.command}")

    try:
        return handler(args)
    except EllipticDomainError as e:
        print(f"error: domain error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:
        log_error(f"Command {args.command} failed: {e}", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
