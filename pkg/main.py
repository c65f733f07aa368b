#!/usr/bin/env python3
"""
qmf - verification CLI for quasi-modular forms attached to Hodge structures
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np

from src.base import Report
from src.config import get_config
from src.errors import QMFError, SchemaError
from src.hodge.frame import FRAME_SCHEMA, HodgeFrame, LatticePoint
from src.linalg import MATRIX_SCHEMA, matrix_from_json
from src.orchestrator import Orchestrator
from src.siegel.domain import SiegelBlocks

logger = logging.getLogger("qmf")

SIEGEL_SCHEMA = (
    '{"genus": g, "x1": <matrix>, "x2": <matrix>, "x3": <matrix>, "x4": <matrix>} '
    'or {"period_matrix": <matrix>}; <matrix> is ' + MATRIX_SCHEMA
)


# ---------------------------------------------------------- input helpers

def positive_int(text: str) -> int:
    value = _int_argument(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def non_negative_int(text: str) -> int:
    value = _int_argument(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {value}")
    return value


def _int_argument(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


def load_json(path: str, schema: str) -> Any:
    """Read a JSON file, raising SchemaError with the expected schema on failure."""
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise SchemaError(f"cannot read {path}: {e}; expected {schema}") from e


def load_matrix(path: str) -> np.ndarray:
    data = load_json(path, MATRIX_SCHEMA)
    if isinstance(data, list):
        try:
            return np.array(data, dtype=complex)
        except (TypeError, ValueError) as e:
            raise SchemaError(f"nested-list matrix in {path} is malformed") from e
    return matrix_from_json(data)


def load_frame(path: Optional[str], size: int) -> HodgeFrame:
    if path is None:
        return HodgeFrame.default_for(size)
    return HodgeFrame.from_json(load_json(path, FRAME_SCHEMA))


def load_blocks(path: str) -> SiegelBlocks:
    data = load_json(path, SIEGEL_SCHEMA)
    if not isinstance(data, dict):
        raise SchemaError(f"Siegel input must be an object: {SIEGEL_SCHEMA}")
    if "period_matrix" in data:
        return SiegelBlocks.from_period_matrix(matrix_from_json(data["period_matrix"]))
    try:
        genus = int(data["genus"])
        blocks = [matrix_from_json(data[name]) for name in ("x1", "x2", "x3", "x4")]
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"Siegel input must look like {SIEGEL_SCHEMA}") from e
    return SiegelBlocks(genus, *blocks)


def emit(report: Report) -> int:
    print(json.dumps(report.to_dict(), indent=2))
    return report.exit_code()


# ---------------------------------------------------------- commands

def eisenstein_command(args, orchestrator: Orchestrator) -> Report:
    """Handle eisenstein command."""
    return orchestrator.eisenstein(args.k, args.terms, graded=args.graded)


def qm_command(args, orchestrator: Orchestrator) -> Report:
    return orchestrator.qm_derive(args.poly, args.check_terms)


def hodge_command(args, orchestrator: Orchestrator) -> Report:
    """Handle hodge check / hodge connection."""
    if args.hodge_command == 'connection':
        return orchestrator.hodge_connection(args.path, args.t, args.v)

    if bool(args.lattice) == bool(args.periods):
        raise SchemaError("hodge check needs exactly one of --lattice or --periods")
    matrix = load_matrix(args.lattice or args.periods)
    frame = load_frame(args.frame, matrix.shape[0])
    if args.lattice:
        point = LatticePoint(frame, matrix)
    else:
        point = LatticePoint.from_periods(frame, matrix)
    return orchestrator.hodge_check(point, trials=args.trials)


def group_command(args, orchestrator: Orchestrator) -> Report:
    matrix = load_matrix(args.matrix)
    frame = load_frame(args.frame, matrix.shape[0])
    return orchestrator.group_membership(args.group_command, matrix, frame)


def elliptic_command(args, orchestrator: Orchestrator) -> Report:
    if args.elliptic_command == 'periods':
        return orchestrator.elliptic_periods(complex(*args.t1), complex(*args.t2), complex(*args.t3))
    return orchestrator.elliptic_roundtrip(complex(args.tau_re, args.tau_im), args.terms)


def siegel_command(args, orchestrator: Orchestrator) -> Report:
    blocks = load_blocks(args.file)
    if args.siegel_command == 'check':
        return orchestrator.siegel_check(blocks)
    return orchestrator.siegel_map(blocks)


def mq_command(args, orchestrator: Orchestrator) -> Report:
    """Handle the mirror-quintic subcommands."""
    if args.mq_command == 'instantons':
        return orchestrator.mq_instantons(args.degree)
    if args.mq_command == 'yukawa':
        return orchestrator.mq_yukawa(args.terms)
    if args.mq_command == 'tau1':
        return orchestrator.mq_tau1(args.terms)
    return orchestrator.mq_verify_tau(args.mode, args.terms)


def selfcheck_command(args, orchestrator: Orchestrator) -> Report:
    return orchestrator.selfcheck()


# ---------------------------------------------------------- parser

def _add_random_flags(parser: argparse.ArgumentParser, default_trials: Optional[int]):
    parser.add_argument('--seed', type=int, default=None,
                        help='RNG seed for randomized checks (default: QMF_SEED or 0)')
    parser.add_argument('--trials', type=non_negative_int, default=default_trials,
                        help='Number of randomized trials')


def build_parser() -> argparse.ArgumentParser:
    config = get_config()
    parser = argparse.ArgumentParser(
        description="qmf - quasi-modular forms attached to Hodge structures"
    )
    subparsers = parser.add_subparsers(dest='command', help='Commands')

    # eisenstein
    eis = subparsers.add_parser('eisenstein', help='Eisenstein series coefficients')
    eis.add_argument('--k', type=int, choices=(1, 2, 3), required=True, help='E_{2k}')
    eis.add_argument('--terms', type=non_negative_int, required=True, help='Truncation N')
    eis.add_argument('--graded', action='store_true',
                     help='Emit the (2 pi i)-graded companion as series JSON')

    # qm derive
    qm = subparsers.add_parser('qm', help='Quasi-modular polynomials')
    qm_sub = qm.add_subparsers(dest='qm_command', required=True)
    derive = qm_sub.add_parser('derive', help='Apply the Ramanujan derivation')
    derive.add_argument('--poly', required=True, help='Polynomial in E2, E4, E6')
    derive.add_argument('--check-terms', type=non_negative_int, default=0,
                        help='Compare against q d/dq of the expansion through q^N')

    # hodge
    hodge = subparsers.add_parser('hodge', help='Hodge structure checks')
    hodge_sub = hodge.add_subparsers(dest='hodge_command', required=True)
    check = hodge_sub.add_parser('check', help='P1, P2, P3 at a lattice point')
    check.add_argument('--frame', help='frame.json (default chosen by size)')
    check.add_argument('--lattice', help='Lattice matrix p (matrix JSON)')
    check.add_argument('--periods', help='Period matrix per (matrix JSON)')
    _add_random_flags(check, 0)
    conn = hodge_sub.add_parser('connection', help='Connection matrix along a built-in path')
    conn.add_argument('--path', required=True, help='builtin:NAME')
    conn.add_argument('--t', type=complex, nargs='+', help='Parameter, e.g. 0.3+1.7j')
    conn.add_argument('--v', type=complex, nargs='+', help='Tangent direction')

    # group
    group = subparsers.add_parser('group', help='Gamma_Z and G0 membership')
    group_sub = group.add_subparsers(dest='group_command', required=True)
    for kind in ('gamma', 'g0'):
        member = group_sub.add_parser(kind, help=f'{kind} membership')
        member.add_argument('--matrix', required=True, help='Matrix JSON')
        member.add_argument('--frame', help='frame.json (default chosen by size)')

    # elliptic
    elliptic = subparsers.add_parser('elliptic', help='Elliptic periods')
    elliptic_sub = elliptic.add_subparsers(dest='elliptic_command', required=True)
    periods = elliptic_sub.add_parser('periods', help='Normalized period matrix of E_t')
    for name in ('--t1', '--t2', '--t3'):
        periods.add_argument(name, type=float, nargs=2, metavar=('RE', 'IM'), required=True)
    roundtrip = elliptic_sub.add_parser('roundtrip', help='tau -> t -> periods -> tau')
    roundtrip.add_argument('--tau-re', type=float, required=True)
    roundtrip.add_argument('--tau-im', type=float, required=True)
    roundtrip.add_argument('--terms', type=positive_int, default=60)

    # siegel
    siegel = subparsers.add_parser('siegel', help='Siegel upper half-space')
    siegel_sub = siegel.add_subparsers(dest='siegel_command', required=True)
    for name in ('check', 'map'):
        cmd = siegel_sub.add_parser(name, help=f'Riemann relations ({name})')
        cmd.add_argument('--file', required=True, help='blocks.json')

    # mq
    mq = subparsers.add_parser('mq', help='Mirror quintic')
    mq_sub = mq.add_subparsers(dest='mq_command', required=True)
    inst = mq_sub.add_parser('instantons', help='Instanton numbers n_1..n_D')
    inst.add_argument('--degree', type=positive_int, required=True)
    yuk = mq_sub.add_parser('yukawa', help='Yukawa coupling as a q-series')
    yuk.add_argument('--terms', type=positive_int, required=True)
    tau1 = mq_sub.add_parser('tau1', help='tau_1 polynomial and q-part')
    tau1.add_argument('--terms', type=positive_int, required=True)
    verify = mq_sub.add_parser('verify-tau', help='tau-matrix identities')
    verify.add_argument('--mode', choices=('symbolic', 'numeric', 'all'), default='all')
    verify.add_argument('--terms', type=positive_int, default=10)
    _add_random_flags(verify, config.trials)

    # selfcheck
    selfcheck = subparsers.add_parser('selfcheck', help='Run the acceptance suite')
    _add_random_flags(selfcheck, None)

    return parser


COMMANDS = {
    'eisenstein': eisenstein_command,
    'qm': qm_command,
    'hodge': hodge_command,
    'group': group_command,
    'elliptic': elliptic_command,
    'siegel': siegel_command,
    'mq': mq_command,
    'selfcheck': selfcheck_command,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    config = get_config()
    logging.basicConfig(
        level=getattr(logging, config.log_level, logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse already printed usage; 2 on errors, 0 for --help
        return 0 if e.code is None else int(e.code)

    if not args.command:
        parser.print_help()
        return 2

    orchestrator = Orchestrator(seed=getattr(args, 'seed', None),
                                trials=getattr(args, 'trials', None))
    try:
        report = COMMANDS[args.command](args, orchestrator)
    except SchemaError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2
    except QMFError as e:
        # input that parsed but violates a domain invariant
        report = Report(command=[args.command], error=type(e).__name__, message=str(e))

    return emit(report)


if __name__ == '__main__':
    sys.exit(main())
