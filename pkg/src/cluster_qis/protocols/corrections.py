"""Derivation of the joint conversion and of Charlie's correction unitaries."""

import itertools
import logging
from dataclasses import dataclass
from functools import cache

import numpy as np

from cluster_qis.errors import DerivationError
from cluster_qis.protocols.specs import ProtocolSpec, get_protocol_spec
from cluster_qis.qcore import (
    NORM_TOLERANCE,
    ZERO_PROBABILITY,
    PureState,
    UnitaryOp,
    apply_unitary,
    complete_isometry,
    fidelity,
    from_amplitudes,
    is_signed_permutation,
    kron_all,
    project,
    reorder,
)
from cluster_qis.qcore.gates import PAULI_SET
from cluster_qis.utils.logger_module import log_operation

logger = logging.getLogger(__name__)

VERIFICATION_SECRETS = 20
VERIFICATION_SEED = 0


@cache
def derive_joint_conversion() -> UnitaryOp:
    """Return the three-qubit unitary Bob and Charlie apply together.

    It maps ``(|000> + |110>)/√2`` to ``|000>`` and ``(|001> - |111>)/√2`` to
    ``|111>`` on qubits (2, 3, 4); both families are completed canonically.

    Returns
    -------
    UnitaryOp
        Fixed conversion ``W``.
    """
    sources = [np.zeros(8, dtype=np.complex128) for _ in range(2)]
    sources[0][[0b000, 0b110]] = (1, 1)
    sources[1][[0b001, 0b111]] = (1, -1)
    sources = [vector / np.sqrt(2) for vector in sources]
    targets = [np.eye(8)[0b000], np.eye(8)[0b111]]
    return UnitaryOp(complete_isometry(sources, targets), 'W')


def _measure_tracked(state: PureState, scale: float, vector: np.ndarray, targets: tuple) -> tuple[PureState | None, float]:
    probability, post = project(state, vector, targets)
    if post is None:
        return None, 0.0
    return post, scale * float(np.sqrt(probability))


def branch_image(spec: ProtocolSpec, secret: np.ndarray, alice_outcome: int, bob_outcome: int) -> np.ndarray:
    """Return Charlie's unnormalised state for one branch, linear in ``secret``.

    The squared norm of the image is the branch probability when ``secret``
    is normalised.

    Returns
    -------
    np.ndarray
        Amplitudes on :attr:`ProtocolSpec.charlie_qubits`; zero when the branch
        has zero probability.
    """
    zero = np.zeros(2 ** len(spec.charlie_qubits), dtype=np.complex128)
    norm = float(np.linalg.norm(secret))
    if norm <= ZERO_PROBABILITY:
        return zero

    register = spec.build_register(from_amplitudes(np.asarray(secret) / norm))
    alice = spec.alice_measurement()
    state, scale = _measure_tracked(register, norm, alice.vectors[alice_outcome], alice.targets)
    if state is None:
        return zero
    if spec.conversion_targets:
        state = apply_unitary(state, derive_joint_conversion(), spec.conversion_targets)

    bob = spec.bob_measurement()
    state, scale = _measure_tracked(state, scale, bob.vectors[bob_outcome], bob.targets)
    if state is None:
        return zero
    return scale * reorder(state, spec.charlie_qubits).amplitudes


def _resolve(protocol: str | ProtocolSpec, channel_sign: int = 1) -> ProtocolSpec:
    if isinstance(protocol, ProtocolSpec):
        return protocol
    return get_protocol_spec(protocol, channel_sign=channel_sign)


def _support_secret(spec: ProtocolSpec, coefficients: np.ndarray) -> np.ndarray:
    vector = np.zeros(spec.secret_dimension, dtype=np.complex128)
    vector[list(spec.support)] = coefficients
    return vector / np.linalg.norm(vector)


def pauli_word(matrix: np.ndarray, tolerance: float = NORM_TOLERANCE) -> str | None:
    """Return the tensor product of I, X, iY, Z equal to ``matrix`` up to global phase.

    Returns
    -------
    str | None
        Word such as ``'Z'`` or ``'X⊗iY'``, or ``None``.
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    num_qubits = int(np.log2(matrix.shape[0]))
    for names in itertools.product(PAULI_SET, repeat=num_qubits):
        word = kron_all([PAULI_SET[name] for name in names])
        if abs(abs(np.trace(word.matrix.conj().T @ matrix)) - matrix.shape[0]) <= tolerance:
            return '⊗'.join(names)
    return None


@cache
def _derive(
    spec: ProtocolSpec,
    alice_outcome: int,
    bob_outcome: int,
    verification_secrets: int,
    seed: int,
    tolerance: float,
) -> UnitaryOp:
    support = spec.support
    basis_secrets = [np.eye(spec.secret_dimension)[index] for index in support]
    images = [branch_image(spec, secret, alice_outcome, bob_outcome) for secret in basis_secrets]
    norms = np.array([np.linalg.norm(image) for image in images])

    where = f'{spec.protocol_id} branch ({alice_outcome}, {bob_outcome})'
    if np.all(norms**2 <= ZERO_PROBABILITY):
        raise DerivationError(f'Cannot derive a correction for zero-probability {where}')
    if np.max(np.abs(norms - norms[0])) > tolerance * max(1.0, norms[0]):
        raise DerivationError(f'Images of the basis secrets have unequal norms in {where}: {norms}')

    sources = [image / norm for image, norm in zip(images, norms, strict=True)]
    gram = np.column_stack(sources).conj().T @ np.column_stack(sources)
    if np.max(np.abs(gram - np.eye(len(sources)))) > np.sqrt(tolerance):
        raise DerivationError(f'Images of the basis secrets are not orthogonal in {where}')

    uniform = _support_secret(spec, np.ones(len(support)))
    expected = sum(images) / np.sqrt(len(support))
    if np.max(np.abs(branch_image(spec, uniform, alice_outcome, bob_outcome) - expected)) > np.sqrt(tolerance):
        raise DerivationError(f'Branch map is not linear in the secret for {where}')

    dimension = 2 ** len(spec.charlie_qubits)
    targets = [np.eye(dimension)[index] for index in support]
    matrix = complete_isometry(sources, targets)
    word = pauli_word(matrix)
    correction = UnitaryOp(matrix, word or f'U[{alice_outcome},{bob_outcome}]')

    rng = np.random.default_rng(seed)
    for _ in range(verification_secrets):
        draw = rng.standard_normal(len(support)) + 1j * rng.standard_normal(len(support))
        secret = _support_secret(spec, draw)
        image = branch_image(spec, secret, alice_outcome, bob_outcome)
        recovered = from_amplitudes(matrix @ image, normalize=True)
        value = fidelity(from_amplitudes(secret), recovered)
        if value < 1.0 - tolerance:
            raise DerivationError(f'Derived correction for {where} only reaches fidelity {value:.12g}')

    logger.debug('Derived correction %s for %s', correction.name, where)
    return correction


def derive_correction(
    protocol: str | ProtocolSpec,
    alice_outcome: int,
    bob_outcome: int,
    *,
    channel_sign: int = 1,
    verification_secrets: int = VERIFICATION_SECRETS,
    seed: int = VERIFICATION_SEED,
    tolerance: float = NORM_TOLERANCE,
) -> UnitaryOp:
    """Derive the unitary Charlie applies after the given outcome pair.

    Each computational basis secret of the protocol's secret space is pushed
    through the branch. The images must have equal norms, be orthogonal and
    combine linearly on a uniform superposition. The unitary maps each
    normalised image back to its basis secret and is completed canonically.
    It is then checked on ``verification_secrets`` seeded random secrets.

    Returns
    -------
    UnitaryOp
        Correction on :attr:`ProtocolSpec.charlie_qubits`, named after its
        Pauli word when it is one.

    Raises
    ------
    DerivationError
        For a zero-probability branch, inconsistent images or a failed
        verification.
    """
    spec = _resolve(protocol, channel_sign)
    return _derive(spec, alice_outcome, bob_outcome, verification_secrets, seed, tolerance)


@dataclass(frozen=True)
class CorrectionEntry:
    """Derived correction for one outcome pair, with its classification."""

    alice_outcome: int
    bob_outcome: int
    alice_name: str
    bob_name: str
    unitary: UnitaryOp
    signed_permutation: bool
    pauli: str | None


@dataclass(frozen=True)
class CorrectionTable:
    """All derived corrections of a protocol, in branch order."""

    protocol_id: str
    entries: tuple[CorrectionEntry, ...]

    @property
    def unitaries(self) -> dict[tuple[int, int], UnitaryOp]:
        """Map from ``(alice_outcome, bob_outcome)`` to the correction."""
        return {(entry.alice_outcome, entry.bob_outcome): entry.unitary for entry in self.entries}

    def lookup(self, alice_outcome: int, bob_outcome: int) -> UnitaryOp:
        """Return the correction for one outcome pair.

        Returns
        -------
        UnitaryOp
            Stored correction.
        """
        return self.unitaries[alice_outcome, bob_outcome]

    def __len__(self) -> int:
        """Return the number of nonzero branches.

        Returns
        -------
        int
            Entry count.
        """
        return len(self.entries)


@log_operation('correction table derivation')
def correction_table(
    protocol: str | ProtocolSpec,
    *,
    channel_sign: int = 1,
    verification_secrets: int = VERIFICATION_SECRETS,
) -> CorrectionTable:
    """Derive and classify the correction of every nonzero branch.

    Returns
    -------
    CorrectionTable
        Entries ordered by Alice's outcome, then Bob's.
    """
    spec = _resolve(protocol, channel_sign)
    alice, bob = spec.alice_measurement(), spec.bob_measurement()
    uniform = _support_secret(spec, np.ones(len(spec.support)))

    entries = []
    for alice_outcome, bob_outcome in itertools.product(range(len(alice)), range(len(bob))):
        image = branch_image(spec, uniform, alice_outcome, bob_outcome)
        if float(np.vdot(image, image).real) <= ZERO_PROBABILITY:
            continue
        unitary = derive_correction(spec, alice_outcome, bob_outcome, verification_secrets=verification_secrets)
        entries.append(
            CorrectionEntry(
                alice_outcome=alice_outcome,
                bob_outcome=bob_outcome,
                alice_name=alice.names[alice_outcome],
                bob_name=bob.names[bob_outcome],
                unitary=unitary,
                signed_permutation=is_signed_permutation(unitary.matrix),
                pauli=pauli_word(unitary.matrix),
            ),
        )
    logger.info('Derived %d corrections for %s', len(entries), spec.protocol_id)
    return CorrectionTable(spec.protocol_id, tuple(entries))


def verify_conversion(tolerance: float = NORM_TOLERANCE) -> bool:
    """Check that ``W`` turns each Alice branch of the entangled protocol into a recoverable state.

    Returns
    -------
    bool
        ``True`` when every nonzero branch is corrected to fidelity one.
    """
    table = correction_table('c4-entangled')
    spec = get_protocol_spec('c4-entangled')
    rng = np.random.default_rng(VERIFICATION_SEED)
    secret = _support_secret(spec, rng.standard_normal(2) + 1j * rng.standard_normal(2))
    target = from_amplitudes(secret)
    for entry in table.entries:
        image = branch_image(spec, secret, entry.alice_outcome, entry.bob_outcome)
        recovered = from_amplitudes(entry.unitary.matrix @ image, normalize=True)
        if fidelity(target, recovered) < 1.0 - tolerance:
            return False
    return True


__all__ = [
    'CorrectionEntry',
    'CorrectionTable',
    'branch_image',
    'correction_table',
    'derive_correction',
    'derive_joint_conversion',
    'pauli_word',
    'verify_conversion',
]
