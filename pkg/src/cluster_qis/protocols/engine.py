"""Exhaustive branch enumeration for the splitting protocols."""

import itertools
import logging
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from cluster_qis.errors import PreconditionError, StateError
from cluster_qis.protocols.corrections import derive_correction, derive_joint_conversion
from cluster_qis.protocols.parties import ClassicalMessage, Party, message_bits, message_totals
from cluster_qis.protocols.specs import ProtocolSpec, get_protocol_spec
from cluster_qis.qcore import (
    NORM_TOLERANCE,
    PAULI_X,
    Branch,
    PureState,
    UnitaryOp,
    apply_unitary,
    enumerate_measurement,
    equal_up_to_global_phase,
    fidelity,
    from_amplitudes,
    kron_all,
    relabel,
    reorder,
)
from cluster_qis.qcore.gates import IDENTITY, PAULI_SET
from cluster_qis.utils import report_module
from cluster_qis.utils.logger_module import log_operation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NullOutcome:
    """Zero-probability outcome, kept so that the basis completeness stays visible."""

    party: Party
    outcome: int
    name: str
    alice_outcome: int | None = None


@dataclass(frozen=True)
class BranchWalk:
    """Raw states of one nonzero (Alice, Bob) branch, before any correction."""

    alice: Branch
    bob: Branch
    alice_bits: int
    bob_bits: int
    alice_payload: int
    bob_payload: int
    after_alice: PureState

    @property
    def probability(self) -> float:
        """Joint probability of both outcomes."""
        return self.alice.probability * self.bob.probability

    @property
    def remaining(self) -> PureState:
        """State of every unmeasured qubit after Bob's measurement."""
        if self.bob.post_state is None:
            raise StateError('Branch has no unmeasured qubits left')
        return self.bob.post_state


def walk_branches(spec: ProtocolSpec, register: PureState) -> tuple[list[BranchWalk], list[NullOutcome]]:
    """Enumerate Alice's and Bob's measurements on ``register``.

    ``register`` may carry extra qubits (an eavesdropper's ancilla); they
    ride along untouched.

    Returns
    -------
    tuple[list[BranchWalk], list[NullOutcome]]
        Nonzero branches in Alice-then-Bob basis order, and every
        zero-probability outcome met on the way.
    """
    alice_branches = enumerate_measurement(register, spec.alice_measurement())
    nonzero_alice = [branch for branch in alice_branches if not branch.is_null]
    nulls = [NullOutcome(Party.ALICE, branch.outcome, branch.name) for branch in alice_branches if branch.is_null]
    alice_bits = message_bits(len(nonzero_alice))

    walks = []
    for alice_payload, alice_branch in enumerate(nonzero_alice):
        after_alice = alice_branch.post_state
        if after_alice is None:
            raise StateError(f'Alice outcome {alice_branch.name} leaves no qubits')
        converted = after_alice
        if spec.conversion_targets:
            converted = apply_unitary(after_alice, derive_joint_conversion(), spec.conversion_targets)

        bob_branches = enumerate_measurement(converted, spec.bob_measurement())
        nonzero_bob = [branch for branch in bob_branches if not branch.is_null]
        nulls.extend(
            NullOutcome(Party.BOB, branch.outcome, branch.name, alice_branch.outcome)
            for branch in bob_branches
            if branch.is_null
        )
        bob_bits = message_bits(len(nonzero_bob))
        walks.extend(
            BranchWalk(alice_branch, bob_branch, alice_bits, bob_bits, alice_payload, bob_payload, after_alice)
            for bob_payload, bob_branch in enumerate(nonzero_bob)
        )
    return walks, nulls


@dataclass(frozen=True)
class BranchRecord:
    """Outcome pair of one branch together with Charlie's recovery."""

    alice_outcome: int
    bob_outcome: int
    alice_name: str
    bob_name: str
    probability: float
    messages: tuple[ClassicalMessage, ...]
    after_alice: PureState
    charlie_pre_correction: PureState
    correction: UnitaryOp
    charlie_final: PureState
    fidelity: float

    def to_dict(self) -> dict[str, Any]:
        """Return the JSON-ready form of the branch.

        Returns
        -------
        dict[str, Any]
            Branch document.
        """
        return {
            'alice_outcome': self.alice_outcome,
            'alice_name': self.alice_name,
            'bob_outcome': self.bob_outcome,
            'bob_name': self.bob_name,
            'probability': report_module.round_significant(self.probability),
            'messages': [
                {'from': str(msg.sender), 'to': str(msg.receiver), 'bits': msg.bits, 'payload': msg.payload}
                for msg in self.messages
            ],
            'after_alice': report_module.state_to_dict(self.after_alice),
            'charlie_pre_correction': report_module.state_to_dict(self.charlie_pre_correction),
            'correction': {
                'name': self.correction.name,
                'matrix': report_module.matrix_to_list(self.correction.matrix),
            },
            'charlie_final': report_module.state_to_dict(self.charlie_final),
            'fidelity': report_module.round_significant(self.fidelity),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'BranchRecord':
        """Rebuild a branch from :meth:`to_dict` output.

        Returns
        -------
        BranchRecord
            Reconstructed branch.
        """
        correction = data['correction']
        return cls(
            alice_outcome=int(data['alice_outcome']),
            bob_outcome=int(data['bob_outcome']),
            alice_name=str(data['alice_name']),
            bob_name=str(data['bob_name']),
            probability=float(data['probability']),
            messages=tuple(
                ClassicalMessage(Party(msg['from']), Party(msg['to']), int(msg['bits']), int(msg['payload']))
                for msg in data['messages']
            ),
            after_alice=report_module.state_from_dict(data['after_alice']),
            charlie_pre_correction=report_module.state_from_dict(data['charlie_pre_correction']),
            correction=UnitaryOp(report_module.matrix_from_list(correction['matrix']), correction['name']),
            charlie_final=report_module.state_from_dict(data['charlie_final']),
            fidelity=float(data['fidelity']),
        )


@dataclass(frozen=True)
class ProtocolReport:
    """Result of running a protocol on one secret over every branch."""

    protocol: str
    secret: PureState
    branches: tuple[BranchRecord, ...]
    null_outcomes: tuple[NullOutcome, ...]
    cbit_totals: dict[tuple[Party, Party], int]
    tolerance: float = NORM_TOLERANCE
    channel: str = ''
    ownership: dict[str, str] = field(default_factory=dict)

    @property
    def probability_sum(self) -> float:
        """Sum of the branch probabilities."""
        return float(sum(branch.probability for branch in self.branches))

    @property
    def all_fidelities_ok(self) -> bool:
        """Whether every branch recovers the secret within the tolerance."""
        return all(branch.fidelity >= 1.0 - self.tolerance for branch in self.branches)

    def to_dict(self) -> dict[str, Any]:
        """Return the JSON-ready report.

        Returns
        -------
        dict[str, Any]
            Report document with keys in a fixed order.
        """
        return {
            'protocol': self.protocol,
            'channel': self.channel,
            'ownership': dict(self.ownership),
            'secret': report_module.state_to_dict(self.secret),
            'tolerance': self.tolerance,
            'branches': [branch.to_dict() for branch in self.branches],
            'null_outcomes': [
                {
                    'party': str(null.party),
                    'outcome': null.outcome,
                    'name': null.name,
                    'alice_outcome': null.alice_outcome,
                }
                for null in self.null_outcomes
            ],
            'cbit_totals': {f'{sender}->{receiver}': bits for (sender, receiver), bits in self.cbit_totals.items()},
            'probability_sum': report_module.round_significant(self.probability_sum),
            'all_fidelities_ok': self.all_fidelities_ok,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'ProtocolReport':
        """Rebuild a report from :meth:`to_dict` output.

        Returns
        -------
        ProtocolReport
            Reconstructed report.
        """
        totals = {}
        for key, bits in data['cbit_totals'].items():
            sender, receiver = key.split('->')
            totals[Party(sender), Party(receiver)] = int(bits)
        return cls(
            protocol=str(data['protocol']),
            secret=report_module.state_from_dict(data['secret']),
            branches=tuple(BranchRecord.from_dict(branch) for branch in data['branches']),
            null_outcomes=tuple(
                NullOutcome(Party(null['party']), int(null['outcome']), str(null['name']), null['alice_outcome'])
                for null in data['null_outcomes']
            ),
            cbit_totals=totals,
            tolerance=float(data['tolerance']),
            channel=str(data.get('channel', '')),
            ownership=dict(data.get('ownership', {})),
        )


def _messages(walk: BranchWalk) -> tuple[ClassicalMessage, ...]:
    return (
        ClassicalMessage(Party.ALICE, Party.CHARLIE, walk.alice_bits, walk.alice_payload),
        ClassicalMessage(Party.BOB, Party.CHARLIE, walk.bob_bits, walk.bob_payload),
    )


@log_operation('protocol run')
def run_spec(spec: ProtocolSpec, secret: PureState, *, tolerance: float = NORM_TOLERANCE) -> ProtocolReport:
    """Run ``spec`` on ``secret`` over every branch.

    Returns
    -------
    ProtocolReport
        Nonzero branches, zero-probability outcomes and message totals.
    """
    register = spec.build_register(secret)
    target = relabel(secret, spec.charlie_qubits)
    walks, nulls = walk_branches(spec, register)

    branches = []
    for walk in walks:
        charlie_pre = reorder(walk.remaining, spec.charlie_qubits)
        correction = derive_correction(spec, walk.alice.outcome, walk.bob.outcome)
        charlie_final = apply_unitary(charlie_pre, correction, spec.charlie_qubits)
        branches.append(
            BranchRecord(
                alice_outcome=walk.alice.outcome,
                bob_outcome=walk.bob.outcome,
                alice_name=walk.alice.name,
                bob_name=walk.bob.name,
                probability=walk.probability,
                messages=_messages(walk),
                after_alice=walk.after_alice,
                charlie_pre_correction=charlie_pre,
                correction=correction,
                charlie_final=charlie_final,
                fidelity=fidelity(target, charlie_final),
            ),
        )

    records = tuple(branches)
    report = ProtocolReport(
        protocol=spec.protocol_id,
        secret=secret,
        branches=records,
        null_outcomes=tuple(nulls),
        cbit_totals=message_totals(branch.messages for branch in records),
        tolerance=tolerance,
        channel=spec.channel,
        ownership=spec.ownership.as_dict(),
    )
    if abs(report.probability_sum - 1.0) > NORM_TOLERANCE:
        logger.warning('%s branch probabilities sum to %.12g', spec.protocol_id, report.probability_sum)
    if not report.all_fidelities_ok:
        logger.warning('%s did not recover the secret in every branch', spec.protocol_id)
    logger.info('%s: %d branches, %d null outcomes', spec.protocol_id, len(records), len(nulls))
    return report


def run_hbb_ghz(secret: PureState, *, channel_sign: int = 1, tolerance: float = NORM_TOLERANCE) -> ProtocolReport:
    """Split a qubit over the three-qubit GHZ channel with either sign.

    Returns
    -------
    ProtocolReport
        Four Bell outcomes times two Bob outcomes.
    """
    return run_spec(get_protocol_spec('hbb-ghz', channel_sign=channel_sign), secret, tolerance=tolerance)


def run_c4_single(secret: PureState, *, tolerance: float = NORM_TOLERANCE) -> ProtocolReport:
    """Split a qubit over the four-qubit cluster channel.

    Returns
    -------
    ProtocolReport
        Eight nonzero branches; Bob's completed outcomes are null.
    """
    return run_spec(get_protocol_spec('c4-single'), secret, tolerance=tolerance)


def run_c4_entangled(secret: PureState, *, tolerance: float = NORM_TOLERANCE) -> ProtocolReport:
    """Split ``α|00> + β|11>`` over the four-qubit cluster channel.

    Returns
    -------
    ProtocolReport
        Eight nonzero branches.

    Raises
    ------
    PreconditionError
        If the secret has weight on ``|01>`` or ``|10>``.
    """
    return run_spec(get_protocol_spec('c4-entangled'), secret, tolerance=tolerance)


def run_c5_single(secret: PureState, *, tolerance: float = NORM_TOLERANCE) -> ProtocolReport:
    """Split a qubit over the five-qubit cluster channel.

    Returns
    -------
    ProtocolReport
        Sixteen nonzero branches.
    """
    return run_spec(get_protocol_spec('c5-single'), secret, tolerance=tolerance)


def run_c5_arbitrary(secret: PureState, *, tolerance: float = NORM_TOLERANCE) -> ProtocolReport:
    """Split an arbitrary two-qubit state over the five-qubit cluster channel.

    Returns
    -------
    ProtocolReport
        Thirty-two nonzero branches.
    """
    return run_spec(get_protocol_spec('c5-arbitrary'), secret, tolerance=tolerance)


def run_protocol(
    protocol_id: str,
    secret: PureState,
    *,
    channel_sign: int = 1,
    tolerance: float = NORM_TOLERANCE,
) -> ProtocolReport:
    """Dispatch on a protocol identifier.

    ``channel_sign`` selects the GHZ channel of ``hbb-ghz`` and is ignored
    by the cluster protocols.

    Returns
    -------
    ProtocolReport
        Report of the selected protocol.
    """
    return run_spec(get_protocol_spec(protocol_id, channel_sign=channel_sign), secret, tolerance=tolerance)


def sample_branches(report: ProtocolReport, trials: int, rng: np.random.Generator) -> list[BranchRecord]:
    """Draw ``trials`` branches according to their probabilities.

    Returns
    -------
    list[BranchRecord]
        Drawn branches in draw order.
    """
    if trials < 0:
        raise PreconditionError(f'Number of trials must be non-negative, got {trials}')
    weights = np.array([branch.probability for branch in report.branches])
    picks = rng.choice(len(report.branches), size=trials, p=weights / weights.sum())
    return [report.branches[int(index)] for index in picks]


def _frames() -> Iterator[tuple[str, str, UnitaryOp]]:
    for bob_name, charlie_name in itertools.product(PAULI_SET, ('I', 'X')):
        charlie = IDENTITY if charlie_name == 'I' else PAULI_X
        yield bob_name, charlie_name, kron_all([PAULI_SET[bob_name], charlie])


def bob_charlie_frame(state: PureState, secret: PureState) -> tuple[str, str] | None:
    """Find local Paulis ``(U, V)`` with ``state = (U ⊗ V)(α|00> + β|11>)`` up to phase.

    ``state`` is the two-qubit Bob-Charlie state left by Alice's Bell
    measurement in the GHZ protocol, and ``α, β`` are the amplitudes of
    ``secret``.

    Returns
    -------
    tuple[str, str] | None
        Bob's Pauli in {I, X, iY, Z} and Charlie's in {I, X}, or ``None``.
    """
    if state.num_qubits != 2 or secret.num_qubits != 1:
        raise StateError('The frame is defined for a two-qubit state and a one-qubit secret')
    alpha, beta = secret.amplitudes
    reference = from_amplitudes([alpha, 0, 0, beta], state.labels)
    for bob_name, charlie_name, frame in _frames():
        if equal_up_to_global_phase(apply_unitary(reference, frame, state.labels), state):
            return bob_name, charlie_name
    return None
