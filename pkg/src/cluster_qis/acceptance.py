"""End-to-end verification sweep behind ``cluster_qis verify-all``."""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from cluster_qis.channels import (
    four_party_basis,
    local_equivalence_search,
    make_channel,
    relabeled_equivalence_search,
)
from cluster_qis.errors import PreconditionError
from cluster_qis.protocols import (
    PROTOCOL_IDS,
    REFERENCE_TABLES,
    VARIANT_IDS,
    Party,
    correction_table,
    get_protocol_spec,
    matches_expected,
    run_protocol,
    verify_conversion,
    verify_factorized_decomposition,
    verify_reference_tables,
    verify_rows,
)
from cluster_qis.qcore import (
    NORM_TOLERANCE,
    basis_state,
    from_amplitudes,
    reduced_density,
)
from cluster_qis.security import (
    ATTACK_UNITARIES,
    CLAIMED_SCENARIOS,
    TAPPED_STATE_TOLERANCE,
    AttackSpec,
    eve_information,
    party_blindness,
    run_attack,
    tapped_state_deviation,
)
from cluster_qis.utils.logger_module import log_operation

logger = logging.getLogger(__name__)

EXPECTED_BRANCHES = {
    'hbb-ghz': 8,
    'c4-single': 8,
    'c4-entangled': 8,
    'c5-single': 16,
    'c5-arbitrary': 32,
    'c4-single-split': 8,
    'c4-entangled-split': 16,
}


@dataclass(frozen=True)
class CheckResult:
    """Verdict of one acceptance check."""

    name: str
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)


def _fidelity_check(protocol: str, secrets: int, rng: np.random.Generator, tolerance: float) -> CheckResult:
    spec = get_protocol_spec(protocol)
    worst, probability_drift, alice_drift, branch_counts = 1.0, 0.0, 0.0, set()
    reference: np.ndarray | None = None
    for _ in range(secrets):
        report = run_protocol(protocol, spec.random_secret(rng), tolerance=tolerance)
        worst = min([worst, *(branch.fidelity for branch in report.branches)])
        probabilities = np.array([branch.probability for branch in report.branches])
        branch_counts.add(len(report.branches))
        if reference is None or reference.shape != probabilities.shape:
            reference = probabilities
        probability_drift = max(probability_drift, float(np.max(np.abs(probabilities - reference))))

        alice: dict[int, float] = {}
        for branch in report.branches:
            alice[branch.alice_outcome] = alice.get(branch.alice_outcome, 0.0) + branch.probability
        alice_drift = max(alice_drift, max(abs(value - 1 / len(alice)) for value in alice.values()))

    passed = (
        worst >= 1.0 - tolerance
        and probability_drift <= tolerance
        and alice_drift <= tolerance
        and branch_counts == {EXPECTED_BRANCHES[protocol]}
    )
    detail = {
        'secrets': secrets,
        'min_fidelity': worst,
        'branches': sorted(branch_counts),
        'probability_drift': probability_drift,
        'alice_uniformity_drift': alice_drift,
    }
    return CheckResult(f'fidelity:{protocol}', passed, detail)


def _tables_check(tolerance: float) -> CheckResult:
    verdicts = verify_reference_tables('all', tolerance=tolerance)
    failed = [f'{verdict.table}[{verdict.row}]' for verdict in verdicts if not verdict.match]
    errata = [f'{verdict.table}[{verdict.row}]' for verdict in verdicts if verdict.erratum]
    return CheckResult('tables', not failed, {'rows': len(verdicts), 'failed': failed, 'errata': errata})


def _cbit_check(protocol: str, rng: np.random.Generator) -> CheckResult:
    report = run_protocol(protocol, get_protocol_spec(protocol).random_secret(rng))
    totals = {f'{sender}->{receiver}': bits for (sender, receiver), bits in report.cbit_totals.items()}
    return CheckResult(f'cbits:{protocol}', matches_expected(report), totals)


def _corrections_check(protocol: str, verification_secrets: int) -> CheckResult:
    table = correction_table(protocol, verification_secrets=verification_secrets)
    signed = all(entry.signed_permutation for entry in table.entries)
    passed = signed and len(table) == EXPECTED_BRANCHES[protocol]
    if protocol == 'hbb-ghz':
        passed = passed and all(entry.pauli is not None for entry in table.entries)
    return CheckResult(f'corrections:{protocol}', passed, {'entries': len(table), 'signed_permutations': signed})


def _decomposition_check(tolerance: float) -> CheckResult:
    result = verify_factorized_decomposition(0, tolerance=tolerance)
    passed = result.satisfied and abs(result.overlap - 1.0) <= tolerance and abs(result.norm_before - 2.0) <= tolerance
    detail = {'assignment': result.assignment, 'signs': list(result.signs), 'overlap': result.overlap}
    return CheckResult('decomposition', passed, detail)


def _attack_checks(rng: np.random.Generator, pairs: int, tolerance: float) -> list[CheckResult]:
    results = []
    for (protocol, tap, attack_name), scenario in CLAIMED_SCENARIOS.items():
        attack = AttackSpec(protocol, tap, ATTACK_UNITARIES[attack_name], attack_name)
        spec = attack.protocol_spec
        information, monogamy, worst = 0.0, True, 1.0
        for _ in range(pairs):
            secret_1, secret_2 = spec.random_secret(rng), spec.random_secret(rng)
            report = run_attack(attack, secret_1)
            information = max(information, eve_information(attack, secret_1, secret_2))
            monogamy = monogamy and report.monogamy_holds
            worst = min(worst, 0.0 if report.min_fidelity is None else report.min_fidelity)
        passed = information <= tolerance and monogamy and worst >= 1.0 - tolerance
        detail = {
            'pairs': pairs,
            'eve_information': information,
            'monogamy_holds': monogamy,
            'min_fidelity': worst,
            'claim': scenario.statement,
        }
        results.append(CheckResult(f'attack:{protocol}:{tap}:{attack_name}', passed, detail))
    return results


def _tapped_state_check(rng: np.random.Generator, secrets: int) -> CheckResult:
    spec = get_protocol_spec('c4-single')
    deviation = max((tapped_state_deviation(spec.random_secret(rng)) for _ in range(secrets)), default=0.0)
    detail = {'secrets': secrets, 'max_deviation': deviation, 'tolerance': TAPPED_STATE_TOLERANCE}
    return CheckResult('attack:c4-single:2:tapped-state', deviation <= TAPPED_STATE_TOLERANCE, detail)


def _control_checks(tolerance: float) -> list[CheckResult]:
    truncated = eve_information(
        AttackSpec('c4-single', 4),
        basis_state('0'),
        basis_state('1'),
        truncate_after_alice=True,
    )
    results = [CheckResult('control:truncated-attack', truncated > tolerance, {'eve_information': truncated})]

    try:
        run_protocol('c4-entangled', from_amplitudes([0.5, 0.5, 0.5, 0.5]))
    except PreconditionError as exc:
        results.append(CheckResult('control:entangled-precondition', True, {'error': str(exc)}))
    else:
        results.append(CheckResult('control:entangled-precondition', False))

    table = REFERENCE_TABLES['c4-single']
    row = table.rows[0]
    flipped = {component: {ket: -sign for ket, sign in kets.items()} for component, kets in row.terms.items()}
    corrupted = replace(row, terms={**row.terms, '1': flipped['1']})
    verdict = verify_rows(table, [corrupted], tolerance=tolerance)[0]
    results.append(CheckResult('control:corrupted-row', not verdict.match, {'max_deviation': verdict.max_deviation}))
    return results


def _blindness_check(protocol: str, rng: np.random.Generator, pairs: int, tolerance: float) -> CheckResult:
    spec = get_protocol_spec(protocol)
    stages = [(Party.BOB, 'alice'), (Party.CHARLIE, 'alice'), (Party.CHARLIE, 'bob')]
    worst = 0.0
    for _ in range(pairs):
        secret_1, secret_2 = spec.random_secret(rng), spec.random_secret(rng)
        for party, stage in stages:
            worst = max(worst, party_blindness(protocol, party, secret_1, secret_2, stage=stage))
    return CheckResult(f'blindness:{protocol}', worst <= tolerance, {'pairs': pairs, 'max_trace_distance': worst})


def _structure_checks(tolerance: float) -> list[CheckResult]:
    marginal_drift = 0.0
    for name in ('c4', 'c5'):
        state = make_channel(name)
        for label in state.labels:
            rho = reduced_density(state, [label])
            marginal_drift = max(marginal_drift, float(np.max(np.abs(rho.matrix - np.eye(2) / 2))))

    basis = four_party_basis()
    stacked = np.column_stack(basis.vectors)
    gram = float(np.max(np.abs(stacked.conj().T @ stacked - np.eye(len(basis)))))

    relabeled = relabeled_equivalence_search(make_channel('cluster:4'), make_channel('c4'), tolerance)
    ghz = local_equivalence_search(make_channel('c4'), make_channel('ghz4'), tolerance)
    return [
        CheckResult('structure:maximally-mixed-marginals', marginal_drift <= tolerance, {'drift': marginal_drift}),
        CheckResult('structure:four-party-basis', gram <= tolerance and basis.is_complete, {'gram_drift': gram}),
        CheckResult(
            'structure:cluster-equivalence',
            relabeled is not None and ghz is None,
            {'relabeled': relabeled is not None, 'ghz_equivalent': ghz is not None},
        ),
    ]


@log_operation('acceptance sweep')
def run_acceptance(
    *,
    secrets: int,
    seed: int,
    verification_secrets: int = 20,
    tolerance: float = NORM_TOLERANCE,
) -> list[CheckResult]:
    """Run every acceptance check with seeded random secrets.

    Returns
    -------
    list[CheckResult]
        Verdicts in a fixed order.
    """
    rng = np.random.default_rng(seed)
    steps: list[Callable[[], list[CheckResult]]] = [
        lambda: [_fidelity_check(protocol, secrets, rng, tolerance) for protocol in (*PROTOCOL_IDS, *VARIANT_IDS)],
        lambda: [_tables_check(tolerance)],
        lambda: [_cbit_check(protocol, rng) for protocol in (*PROTOCOL_IDS, *VARIANT_IDS)],
        lambda: [_corrections_check(protocol, verification_secrets) for protocol in PROTOCOL_IDS],
        lambda: [CheckResult('conversion', verify_conversion(tolerance))],
        lambda: [_decomposition_check(tolerance)],
        lambda: _attack_checks(rng, verification_secrets, tolerance),
        lambda: [_tapped_state_check(rng, verification_secrets)],
        lambda: _control_checks(tolerance),
        lambda: [_blindness_check(protocol, rng, verification_secrets, tolerance) for protocol in PROTOCOL_IDS],
        lambda: _structure_checks(tolerance),
    ]
    results = [result for step in steps for result in step()]
    for result in results:
        if not result.passed:
            logger.warning('Check %s failed: %s', result.name, result.detail)
    logger.info('%d of %d checks passed', sum(result.passed for result in results), len(results))
    return results


__all__ = ['EXPECTED_BRANCHES', 'CheckResult', 'run_acceptance']
