"""Ancilla-tap eavesdropping on the channel qubits of a splitting protocol."""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from cluster_qis.errors import DerivationError, PreconditionError, StateError, UnknownIdentifierError
from cluster_qis.protocols.corrections import derive_correction
from cluster_qis.protocols.engine import walk_branches
from cluster_qis.protocols.parties import Party
from cluster_qis.protocols.specs import ProtocolSpec, get_protocol_spec
from cluster_qis.qcore import (
    ANCILLA_QUBIT,
    CNOT,
    HADAMARD,
    IDENTITY,
    NORM_TOLERANCE,
    DensityMatrix,
    PureState,
    QubitLabel,
    UnitaryOp,
    apply_unitary,
    basis_state,
    enumerate_measurement,
    fidelity,
    kron_all,
    label_name,
    phase_deviation,
    reduced_density,
    relabel,
    schmidt_rank,
    tensor,
    trace_distance,
)
from cluster_qis.utils import report_module
from cluster_qis.utils.logger_module import log_operation

logger = logging.getLogger(__name__)

# amplitude-wise agreement required of the claimed tapped state
TAPPED_STATE_TOLERANCE = 1e-12

# ancilla controls a NOT on the channel qubit, written on (channel qubit, ancilla)
_REVERSED_CNOT = UnitaryOp(np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]]), 'CNOT(E→q)')

ATTACK_UNITARIES: dict[str, UnitaryOp] = {
    'cnot': CNOT,
    'cnot-reverse': UnitaryOp((_REVERSED_CNOT @ kron_all([IDENTITY, HADAMARD])).matrix, 'CNOT(E→q)·H_E'),
}


def load_attack_unitary(path: str | Path) -> UnitaryOp:
    """Read a 4x4 attack unitary from a ``.json`` or ``.npy`` file.

    JSON entries are numbers or ``[re, im]`` pairs, row by row.

    Returns
    -------
    UnitaryOp
        Gate named after the file stem.

    Raises
    ------
    StateError
        If the file type is not supported or the matrix is not 4x4.
    UnitarityError
        If the matrix is not unitary.
    """
    path = Path(path)
    if path.suffix == '.json':
        matrix = report_module.matrix_from_list(json.loads(path.read_text(encoding='utf-8')))
    elif path.suffix == '.npy':
        matrix = np.asarray(np.load(path), dtype=np.complex128)
    else:
        raise StateError(f'Attack matrices are read from .json or .npy files, got {path.name}')
    if matrix.shape != (4, 4):
        raise StateError(f'An attack acts on (channel qubit, ancilla) and needs a 4x4 matrix, got {matrix.shape}')
    return UnitaryOp(matrix, path.stem)


def resolve_attack(name: str) -> tuple[str, UnitaryOp]:
    """Resolve a built-in attack name or a matrix file path.

    Returns
    -------
    tuple[str, UnitaryOp]
        Attack name for reports and its unitary.

    Raises
    ------
    UnknownIdentifierError
        If ``name`` is neither built in nor an existing file.
    """
    if name in ATTACK_UNITARIES:
        return name, ATTACK_UNITARIES[name]
    if Path(name).is_file():
        return 'custom', load_attack_unitary(name)
    logger.error('Unknown attack: %s.', name)
    raise UnknownIdentifierError(f'Unknown attack {name!r}; expected one of {sorted(ATTACK_UNITARIES)} or a matrix file')


@dataclass(frozen=True)
class AttackSpec:
    """Where Eve entangles her ``|0>`` ancilla and with which two-qubit unitary."""

    protocol: str
    tapped_qubit: QubitLabel
    attack_unitary: UnitaryOp = field(default=CNOT)
    attack_name: str = 'cnot'
    channel_sign: int = 1

    def __post_init__(self) -> None:
        """Check that the tap is a Bob or Charlie qubit and the attack has arity two.

        Raises
        ------
        PreconditionError
            For a tap on Alice's qubits, on a label outside the register, or a
            unitary that does not act on two qubits.
        """
        owner = self.protocol_spec.ownership.owner(self.tapped_qubit)
        if owner not in (Party.BOB, Party.CHARLIE):
            raise PreconditionError(
                f'Eve taps channel qubits held by Bob or Charlie; qubit {label_name(self.tapped_qubit)} belongs to {owner}',
            )
        if self.attack_unitary.arity != 2:
            raise PreconditionError(f'Attack unitaries act on two qubits, got arity {self.attack_unitary.arity}')

    @property
    def protocol_spec(self) -> ProtocolSpec:
        """Spec of the attacked protocol."""
        return get_protocol_spec(self.protocol, channel_sign=self.channel_sign)

    @property
    def key(self) -> tuple[str, QubitLabel, str]:
        """``(protocol, tapped qubit, attack name)``, the key of :data:`CLAIMED_SCENARIOS`."""
        return (self.protocol, self.tapped_qubit, self.attack_name)


@dataclass(frozen=True)
class ClaimedScenario:
    """Attack setting covered by a security statement, with what it states."""

    protocol: str
    tapped_qubit: QubitLabel
    attack_name: str
    statement: str


CLAIMED_SCENARIOS: dict[tuple[str, QubitLabel, str], ClaimedScenario] = {
    (scenario.protocol, scenario.tapped_qubit, scenario.attack_name): scenario
    for scenario in (
        ClaimedScenario(
            'c4-single',
            2,
            'cnot',
            'after Alice the tapped state is α(|0000> + |1101>) + β(|0010> - |1111>) on (2, 3, 4, E); '
            'Bob outcome |00> leaves (α|0> + β|1>)|0>',
        ),
        ClaimedScenario('c4-single', 3, 'cnot', 'Eve ends unentangled and uninformed'),
        ClaimedScenario('c5-single', 4, 'cnot', 'Eve ends in a computational basis state'),
        ClaimedScenario('c5-single', 3, 'cnot-reverse', 'Charlie and Eve factor as (α|0> + β|1>)(|0> ± |1>)/√2'),
    )
}


@dataclass(frozen=True)
class AttackBranch:
    """One branch of an attacked run.

    ``bob_outcome`` is ``None`` when the run stops after Alice. The Schmidt
    rank is taken between Eve and every other unmeasured qubit.
    """

    alice_outcome: int
    alice_name: str
    bob_outcome: int | None
    bob_name: str | None
    probability: float
    eve_rank: int
    eve_state: DensityMatrix
    tapped_intermediate: PureState
    remaining: PureState
    charlie_fidelity: float | None

    def to_dict(self) -> dict[str, Any]:
        """Return the JSON-ready branch.

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
            'eve_rank': self.eve_rank,
            'eve_state': report_module.matrix_to_list(self.eve_state.matrix),
            'tapped_intermediate': report_module.state_to_dict(self.tapped_intermediate),
            'remaining': report_module.state_to_dict(self.remaining),
            'charlie_fidelity': (
                None if self.charlie_fidelity is None else report_module.round_significant(self.charlie_fidelity)
            ),
        }


@dataclass(frozen=True)
class AttackReport:
    """Attacked run of a protocol on one secret."""

    attack: AttackSpec
    secret: PureState
    branches: tuple[AttackBranch, ...]
    truncated: bool = False

    @property
    def claimed(self) -> ClaimedScenario | None:
        """Security statement covering this run, if any."""
        return None if self.truncated else CLAIMED_SCENARIOS.get(self.attack.key)

    @property
    def monogamy_holds(self) -> bool:
        """Whether Eve ends unentangled in every branch."""
        return all(branch.eve_rank == 1 for branch in self.branches)

    @property
    def min_fidelity(self) -> float | None:
        """Worst corrected fidelity over the branches, ``None`` for a truncated run."""
        values = [branch.charlie_fidelity for branch in self.branches if branch.charlie_fidelity is not None]
        return min(values) if values else None

    def to_dict(self) -> dict[str, Any]:
        """Return the JSON-ready report.

        Returns
        -------
        dict[str, Any]
            Report document.
        """
        claimed = self.claimed
        return {
            'protocol': self.attack.protocol,
            'tapped_qubit': label_name(self.attack.tapped_qubit),
            'attack': self.attack.attack_name,
            'attack_matrix': report_module.matrix_to_list(self.attack.attack_unitary.matrix),
            'truncated': self.truncated,
            'claim': claimed.statement if claimed else None,
            'out_of_claim': claimed is None,
            'secret': report_module.state_to_dict(self.secret),
            'monogamy_holds': self.monogamy_holds,
            'min_fidelity': None if self.min_fidelity is None else report_module.round_significant(self.min_fidelity),
            'branches': [branch.to_dict() for branch in self.branches],
        }


def attacked_register(attack: AttackSpec, secret: PureState) -> PureState:
    """Return ``secret ⊗ channel ⊗ |0>_E`` with the attack applied on (tap, E).

    Returns
    -------
    PureState
        Register with the ancilla appended last.
    """
    register = tensor(attack.protocol_spec.build_register(secret), basis_state('0', (ANCILLA_QUBIT,)))
    return apply_unitary(register, attack.attack_unitary, (attack.tapped_qubit, ANCILLA_QUBIT))


def _eve_rank(state: PureState) -> int:
    others = [label for label in state.labels if label != ANCILLA_QUBIT]
    return schmidt_rank(state, ([ANCILLA_QUBIT], others))


def _truncated_branches(spec: ProtocolSpec, register: PureState) -> list[AttackBranch]:
    branches = []
    for branch in enumerate_measurement(register, spec.alice_measurement()):
        if branch.is_null or branch.post_state is None:
            continue
        state = branch.post_state
        branches.append(
            AttackBranch(
                alice_outcome=branch.outcome,
                alice_name=branch.name,
                bob_outcome=None,
                bob_name=None,
                probability=branch.probability,
                eve_rank=_eve_rank(state),
                eve_state=reduced_density(state, [ANCILLA_QUBIT]),
                tapped_intermediate=state,
                remaining=state,
                charlie_fidelity=None,
            ),
        )
    return branches


@log_operation('attack run')
def run_attack(attack: AttackSpec, secret: PureState, *, truncate_after_alice: bool = False) -> AttackReport:
    """Attach Eve's ancilla, apply the attack before any measurement and run the protocol.

    With ``truncate_after_alice`` the run stops after Alice's measurement;
    Bob never measures and Charlie never corrects.

    Returns
    -------
    AttackReport
        One entry per nonzero branch.
    """
    spec = attack.protocol_spec
    register = attacked_register(attack, secret)
    if truncate_after_alice:
        return AttackReport(attack, secret, tuple(_truncated_branches(spec, register)), truncated=True)

    target = relabel(secret, spec.charlie_qubits)
    walks, _ = walk_branches(spec, register)
    branches = []
    for walk in walks:
        remaining = walk.remaining
        try:
            correction = derive_correction(spec, walk.alice.outcome, walk.bob.outcome)
        except DerivationError:
            # outcome pair the honest protocol never produces
            logger.warning('Attack opened branch (%s, %s) which has no correction', walk.alice.name, walk.bob.name)
            charlie_fidelity = None
        else:
            corrected = apply_unitary(remaining, correction, spec.charlie_qubits)
            charlie_fidelity = fidelity(target, reduced_density(corrected, spec.charlie_qubits))
        branches.append(
            AttackBranch(
                alice_outcome=walk.alice.outcome,
                alice_name=walk.alice.name,
                bob_outcome=walk.bob.outcome,
                bob_name=walk.bob.name,
                probability=walk.probability,
                eve_rank=_eve_rank(remaining),
                eve_state=reduced_density(remaining, [ANCILLA_QUBIT]),
                tapped_intermediate=walk.after_alice,
                remaining=remaining,
                charlie_fidelity=charlie_fidelity,
            ),
        )

    report = AttackReport(attack, secret, tuple(branches))
    if report.claimed is None:
        logger.info('%s tap %s with %s is an out-of-claim observation', *attack.key)
    if not report.monogamy_holds:
        logger.info('Eve stays entangled in some branches of %s tap %s', attack.protocol, attack.tapped_qubit)
    return report


def report_distance(report_1: AttackReport, report_2: AttackReport) -> float:
    """Return how well Eve tells two attacked runs apart.

    Eve sees the broadcast outcome pair and keeps her ancilla. Branches are
    matched by their outcome pair and the distance is the larger of

    * the trace distance between Eve's conditioned states on a shared pair,
    * the total variation distance between the two outcome distributions.

    An outcome pair that occurs in one run only identifies that run, so it
    counts as distance 1.

    Returns
    -------
    float
        Distance in ``[0, 1]``.
    """
    branches = [
        {(branch.alice_outcome, branch.bob_outcome): branch for branch in report.branches} for report in (report_1, report_2)
    ]
    one_sided = branches[0].keys() ^ branches[1].keys()
    if one_sided:
        logger.info('%d outcome pairs occur for one secret only', len(one_sided))
        return 1.0
    conditioned = max(
        (trace_distance(branch.eve_state, branches[1][key].eve_state) for key, branch in branches[0].items()),
        default=0.0,
    )
    variation = 0.5 * sum(abs(branch.probability - branches[1][key].probability) for key, branch in branches[0].items())
    if variation > conditioned:
        logger.debug('Outcome distributions differ by %.3g', variation)
    return min(1.0, max(conditioned, variation))


def eve_information(
    attack: AttackSpec,
    secret_1: PureState,
    secret_2: PureState,
    *,
    truncate_after_alice: bool = False,
) -> float:
    """Run the attack on two secrets and return :func:`report_distance` of the runs.

    Returns
    -------
    float
        Distance in ``[0, 1]``; zero means Eve learns nothing about which
        secret was sent.
    """
    reports = [run_attack(attack, secret, truncate_after_alice=truncate_after_alice) for secret in (secret_1, secret_2)]
    distance = report_distance(*reports)
    if distance > NORM_TOLERANCE:
        logger.info('Eve distinguishes the secrets with trace distance %.6g', distance)
    return distance


def claimed_tapped_state(secret: PureState) -> PureState:
    """Return the claimed state after a CNOT tap on qubit 2 of ``c4-single`` and Alice's first Bell outcome.

    The state is ``α(|0000> + |1101>) + β(|0010> - |1111>)`` on ``(2, 3, 4, E)``,
    normalised.

    Raises
    ------
    PreconditionError
        If ``secret`` is not a single qubit.
    """
    if secret.num_qubits != 1:
        raise PreconditionError(f'The tapped state is claimed for a 1-qubit secret, got {secret.num_qubits} qubits')
    alpha, beta = secret.amplitudes
    vector = np.zeros(16, dtype=np.complex128)
    vector[[0b0000, 0b1101]] = alpha
    vector[0b0010] = beta
    vector[0b1111] = -beta
    return PureState((2, 3, 4, ANCILLA_QUBIT), vector / np.linalg.norm(vector))


def tapped_state_deviation(secret: PureState) -> float:
    """Compare the simulated tap-2 state with :func:`claimed_tapped_state`.

    Returns
    -------
    float
        Largest amplitude difference up to a global phase.
    """
    report = run_attack(AttackSpec('c4-single', 2), secret)
    first = next(branch for branch in report.branches if branch.alice_outcome == 0)
    deviation = phase_deviation(claimed_tapped_state(secret), first.tapped_intermediate)
    logger.debug('Tapped state deviates by %.3g from the claimed form', deviation)
    return deviation
