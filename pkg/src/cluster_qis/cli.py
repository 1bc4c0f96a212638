"""Command-line interface for running, verifying and attacking the splitting protocols."""

import argparse
import logging
import math
import sys
from collections.abc import Callable, Mapping, Sequence
from dataclasses import asdict
from typing import Any

import numpy as np

from cluster_qis.__about__ import __version__
from cluster_qis.acceptance import run_acceptance
from cluster_qis.channels import local_equivalence_search, make_channel, relabeled_equivalence_search
from cluster_qis.errors import QisError, StateError
from cluster_qis.protocols import (
    PROTOCOL_IDS,
    REFERENCE_TABLES,
    TABLE_ALIASES,
    VARIANT_IDS,
    cbit_account,
    correction_table,
    get_protocol_spec,
    run_protocol,
    sample_branches,
    verify_reference_tables,
)
from cluster_qis.qcore import PureState, from_amplitudes, label_name, parse_label
from cluster_qis.security import (
    AttackSpec,
    claimed_tapped_state,
    eve_information,
    resolve_attack,
    run_attack,
    tapped_state_deviation,
)
from cluster_qis.utils import config_module, report_module
from cluster_qis.utils.logger_module import setup_logger

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2
# raw amplitudes within this distance of unit norm are rescaled, others rejected
SECRET_NORM_SLACK = 1e-6
# explicit states compared against the cluster definition of the same size
EXPLICIT_CLUSTERS = {4: 'c4', 5: 'c5'}


def parse_secret(text: str, num_qubits: int, *, support: Sequence[int] | None = None) -> PureState:
    """Parse ``'a0,a1,...'`` amplitudes or ``'random:<seed>'``.

    Amplitudes accept Python complex literals (``0.6``, ``0.8j``, ``1+2j``).
    Random secrets are normalised complex Gaussian draws from
    ``numpy.random.default_rng(seed)`` restricted to ``support``.

    Returns
    -------
    PureState
        Normalised secret on qubits ``1..num_qubits``.

    Raises
    ------
    StateError
        For malformed text, a wrong amplitude count or a norm further than
        1e-6 from one.
    """
    dimension = 2**num_qubits
    if text.startswith('random:'):
        try:
            seed = int(text.removeprefix('random:'))
        except ValueError:
            raise StateError(f'Random secrets are written random:<seed>, got {text!r}') from None
        indices = list(support) if support is not None else list(range(dimension))
        rng = np.random.default_rng(seed)
        amplitudes = np.zeros(dimension, dtype=np.complex128)
        amplitudes[indices] = rng.standard_normal(len(indices)) + 1j * rng.standard_normal(len(indices))
        return from_amplitudes(amplitudes, normalize=True)

    try:
        amplitudes = [complex(part.strip().replace(' ', '')) for part in text.split(',')]
    except ValueError:
        raise StateError(f'Malformed amplitudes {text!r}') from None
    if len(amplitudes) != dimension:
        raise StateError(f'Expected {dimension} amplitudes for a {num_qubits}-qubit secret, got {len(amplitudes)}')
    norm = math.sqrt(sum(abs(amplitude) ** 2 for amplitude in amplitudes))
    if abs(norm - 1.0) > SECRET_NORM_SLACK:
        raise StateError(f'Secret norm is {norm:.9g}; amplitudes must be normalised within {SECRET_NORM_SLACK:g}')
    return from_amplitudes(amplitudes, normalize=True)


def _protocol_secret(protocol: str, text: str | None, seed: int) -> PureState:
    spec = get_protocol_spec(protocol)
    return parse_secret(text or f'random:{seed}', len(spec.secret_labels), support=spec.support)


def _finite(value: float) -> float | None:
    return value if math.isfinite(value) else None


def _emit(document: Mapping[str, Any], output_format: str) -> None:
    sys.stdout.write(report_module.render(document, output_format))


def cmd_run(args: argparse.Namespace) -> int:
    """Run one protocol over every branch, or over sampled branches.

    Returns
    -------
    int
        ``0`` when every reported branch recovers the secret.
    """
    secret = _protocol_secret(args.protocol, args.secret, args.seed)
    report = run_protocol(args.protocol, secret, channel_sign=args.channel_sign, tolerance=args.tolerance)

    document = {'mode': args.mode, **report.to_dict()}
    document['cbit_account'] = {f'{sender}->{receiver}': bits for (sender, receiver), bits in cbit_account(report).items()}
    ok = report.all_fidelities_ok
    if args.mode == 'sample':
        drawn = sample_branches(report, args.trials, np.random.default_rng(args.seed))
        document['seed'] = args.seed
        document['trials'] = args.trials
        document['branches'] = [branch.to_dict() for branch in drawn]
        ok = all(branch.fidelity >= 1.0 - args.tolerance for branch in drawn)
        document['all_fidelities_ok'] = ok
    _emit(document, args.format)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_tables(args: argparse.Namespace) -> int:
    """Compare the printed outcome tables with the engine.

    Returns
    -------
    int
        ``0`` when every row matches.
    """
    verdicts = verify_reference_tables(args.table, tolerance=args.tolerance)
    rows = []
    for verdict in verdicts:
        row = asdict(verdict)
        row['max_deviation'] = _finite(verdict.max_deviation)
        row['printed_deviation'] = _finite(verdict.printed_deviation)
        rows.append(row)
    all_match = all(verdict.match for verdict in verdicts)
    _emit({'table': args.table, 'rows': rows, 'all_match': all_match}, args.format)
    return EXIT_OK if all_match else EXIT_FAILED


def cmd_attack(args: argparse.Namespace) -> int:
    """Attack one channel qubit and measure what Eve learns.

    Returns
    -------
    int
        ``0`` when Eve's states for the two secrets coincide.
    """
    attack_name, unitary = resolve_attack(args.attack)
    attack = AttackSpec(args.protocol, args.tap, unitary, attack_name)
    secret_1 = _protocol_secret(args.protocol, args.secret, args.seed)
    secret_2 = _protocol_secret(args.protocol, args.secret2, args.seed + 1)

    report = run_attack(attack, secret_1, truncate_after_alice=args.truncate)
    information = eve_information(attack, secret_1, secret_2, truncate_after_alice=args.truncate)
    document = report.to_dict()
    document['secret_2'] = report_module.state_to_dict(secret_2)
    document['eve_information'] = report_module.round_significant(information)
    document['eve_uninformed'] = information <= args.tolerance
    if attack.key == ('c4-single', 2, 'cnot') and not args.truncate:
        document['claimed_tapped_state'] = report_module.state_to_dict(claimed_tapped_state(secret_1))
        document['tapped_state_deviation'] = report_module.round_significant(tapped_state_deviation(secret_1))
    _emit(document, args.format)
    return EXIT_OK if information <= args.tolerance else EXIT_FAILED


def cmd_corrections(args: argparse.Namespace) -> int:
    """Derive and classify Charlie's corrections.

    Returns
    -------
    int
        ``0`` when every correction is a signed permutation.
    """
    table = correction_table(args.protocol, verification_secrets=config_module.get_run_settings()['verification_secrets'])
    entries = [
        {
            'alice_outcome': entry.alice_outcome,
            'alice_name': entry.alice_name,
            'bob_outcome': entry.bob_outcome,
            'bob_name': entry.bob_name,
            'name': entry.unitary.name,
            'pauli': entry.pauli,
            'signed_permutation': entry.signed_permutation,
            'matrix': report_module.matrix_to_list(entry.unitary.matrix),
        }
        for entry in table.entries
    ]
    signed = all(entry.signed_permutation for entry in table.entries)
    document = {'protocol': table.protocol_id, 'count': len(table), 'entries': entries, 'all_signed_permutations': signed}
    _emit(document, args.format)
    return EXIT_OK if signed else EXIT_FAILED


def cmd_verify_all(args: argparse.Namespace) -> int:
    """Run the full acceptance sweep.

    Returns
    -------
    int
        ``0`` when every check passes.
    """
    results = run_acceptance(
        secrets=args.secrets,
        seed=args.seed,
        verification_secrets=config_module.get_run_settings()['verification_secrets'],
        tolerance=args.tolerance,
    )
    passed = all(result.passed for result in results)
    checks = [{'name': result.name, 'passed': result.passed, 'detail': result.detail} for result in results]
    _emit({'seed': args.seed, 'secrets': args.secrets, 'checks': checks, 'all_passed': passed}, args.format)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_channels(args: argparse.Namespace) -> int:
    """Print a channel state and, for ``cluster:<n>``, its relation to the explicit state.

    Returns
    -------
    int
        ``0`` unless a requested comparison finds no relation.
    """
    state = make_channel(args.channel)
    document: dict[str, Any] = {'channel': args.channel, 'state': report_module.state_to_dict(state)}
    ok = True

    size = state.num_qubits
    if args.channel.startswith('cluster:') and size in EXPLICIT_CLUSTERS:
        explicit = make_channel(EXPLICIT_CLUSTERS[size])
        direct = local_equivalence_search(state, explicit, args.tolerance)
        relabeled = relabeled_equivalence_search(state, explicit, args.tolerance)
        document['explicit'] = EXPLICIT_CLUSTERS[size]
        document['same_numbering_equivalent'] = direct is not None
        document['relabeling'] = (
            None
            if relabeled is None
            else {
                'matched_qubits': [label_name(label) for label in relabeled[0]],
                'cliffords': [clifford.name for clifford in relabeled[1]],
            }
        )
        ok = relabeled is not None

    if args.compare:
        other = make_channel(args.compare)
        cliffords = local_equivalence_search(state, other, args.tolerance)
        document['compare'] = {
            'channel': args.compare,
            'cliffords': None if cliffords is None else [clifford.name for clifford in cliffords],
        }
    _emit(document, args.format)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_config(args: argparse.Namespace) -> int:
    """Show, and optionally update, the persisted settings.

    Returns
    -------
    int
        Always ``0``.
    """
    if args.acceptance is not None:
        config_module.set_tolerance_settings(acceptance=args.acceptance)
    updates = {key: value for key, value in (('seed', args.set_seed), ('trials', args.set_trials)) if value is not None}
    if updates:
        config_module.set_run_settings(**updates)
    document = {
        'path': str(config_module.get_config_path()),
        'tolerances': config_module.get_tolerance_settings(),
        'runs': config_module.get_run_settings(),
    }
    _emit(document, args.format)
    return EXIT_OK


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--format', choices=('json', 'text'), default='json', help='Output format (default: json)')


def _add_tolerance(parser: argparse.ArgumentParser, default: float) -> None:
    parser.add_argument('--tolerance', type=float, default=default, help=f'Acceptance tolerance (default: {default:g})')


def _add_protocol(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--protocol', required=True, choices=(*PROTOCOL_IDS, *VARIANT_IDS), help='Protocol identifier')


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser for the CLI.

    Defaults for ``--tolerance``, ``--seed``, ``--trials`` and ``--secrets``
    come from the configuration file.

    Returns
    -------
    argparse.ArgumentParser
        Parser with one subcommand per operation.
    """
    tolerance = config_module.get_tolerance_settings()['acceptance']
    runs = config_module.get_run_settings()

    parser = argparse.ArgumentParser(prog='cluster_qis', description=__doc__)
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    logging_group = parser.add_mutually_exclusive_group()
    logging_group.add_argument('-db', '--debug', action='store_true', help='Enable debug logging output')
    logging_group.add_argument('-v', '--verbose', action='store_true', help='Show info level logging output')
    logging_group.add_argument('-q', '--quiet', action='store_true', help='Only show error logging output')
    subparsers = parser.add_subparsers(dest='command', required=True)

    run = subparsers.add_parser('run', help='Run a protocol on one secret')
    _add_protocol(run)
    run.add_argument('--secret', help="Comma-separated amplitudes or 'random:<seed>' (default: random:<seed>)")
    run.add_argument('--mode', choices=('enumerate', 'sample'), default='enumerate', help='Branch enumeration mode')
    run.add_argument('--seed', type=int, default=runs['seed'], help='Seed for random secrets and sampling')
    run.add_argument('--trials', type=int, default=runs['trials'], help='Number of sampled branches')
    run.add_argument('--channel-sign', type=int, choices=(1, -1), default=1, help='Sign of the GHZ channel (hbb-ghz)')
    _add_format(run)
    _add_tolerance(run, tolerance)
    run.set_defaults(handler=cmd_run)

    tables = subparsers.add_parser('tables', help='Verify the printed outcome tables')
    tables.add_argument(
        '--table',
        choices=(*REFERENCE_TABLES, *TABLE_ALIASES, 'all'),
        default='all',
        help='Table identifier or printed table number (I to V)',
    )
    _add_format(tables)
    _add_tolerance(tables, tolerance)
    tables.set_defaults(handler=cmd_tables)

    attack = subparsers.add_parser('attack', help='Entangle an eavesdropper ancilla with one channel qubit')
    _add_protocol(attack)
    attack.add_argument('--tap', type=parse_label, required=True, help='Tapped channel qubit')
    attack.add_argument('--attack', default='cnot', help="'cnot', 'cnot-reverse' or a .json/.npy matrix file")
    attack.add_argument('--secret', help='First secret (default: random:<seed>)')
    attack.add_argument('--secret2', help='Second secret (default: random:<seed + 1>)')
    attack.add_argument('--seed', type=int, default=runs['seed'], help='Seed for random secrets')
    attack.add_argument('--truncate', action='store_true', help='Stop the protocol after Alice measures')
    _add_format(attack)
    _add_tolerance(attack, tolerance)
    attack.set_defaults(handler=cmd_attack)

    corrections = subparsers.add_parser('corrections', help="Derive Charlie's correction table")
    _add_protocol(corrections)
    _add_format(corrections)
    corrections.set_defaults(handler=cmd_corrections)

    verify = subparsers.add_parser('verify-all', help='Run every acceptance check')
    verify.add_argument('--secrets', type=int, default=runs['acceptance_secrets'], help='Random secrets per protocol')
    verify.add_argument('--seed', type=int, default=runs['seed'], help='Seed of the sweep')
    _add_format(verify)
    _add_tolerance(verify, tolerance)
    verify.set_defaults(handler=cmd_verify_all)

    channels = subparsers.add_parser('channels', help='Print a channel state')
    channels.add_argument('--channel', default='c4', help='Channel identifier, e.g. c4, c5, ghz3, cluster:4')
    channels.add_argument('--compare', help='Channel to search a local Clifford relation with')
    _add_format(channels)
    _add_tolerance(channels, tolerance)
    channels.set_defaults(handler=cmd_channels)

    config = subparsers.add_parser('config', help='Show or update persisted settings')
    config.add_argument('--acceptance', type=float, help='Store a new acceptance tolerance')
    config.add_argument('--set-seed', type=int, help='Store a new default seed')
    config.add_argument('--set-trials', type=int, help='Store a new default number of trials')
    _add_format(config)
    config.set_defaults(handler=cmd_config)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, configure logging and dispatch to a subcommand.

    Returns
    -------
    int
        Exit status: 0 success, 1 failed verification, 2 error.
    """
    arg_list = list(argv) if argv is not None else sys.argv[1:]

    parser = build_parser()
    args = parser.parse_args(arg_list)

    setup_logger(debug=args.debug, verbose=args.verbose, quiet=args.quiet)

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (QisError, ValueError, OSError) as exc:
        logger.error('%s', exc)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
