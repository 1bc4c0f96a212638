"""Unitary operators, their application to registers and isometry completion."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import reduce

import numpy as np

from cluster_qis.errors import StateError, UnitarityError
from cluster_qis.qcore.states import NORM_TOLERANCE, PureState, QubitLabel, label_name

logger = logging.getLogger(__name__)

SQRT_HALF = 1 / np.sqrt(2)


@dataclass(frozen=True, eq=False)
class UnitaryOp:
    """Square unitary acting on ``arity`` qubits.

    Construction is the unitarity gate: a matrix that violates
    ``U†U = I`` beyond the tolerance is rejected.
    """

    matrix: np.ndarray
    name: str = ''

    def __post_init__(self) -> None:
        """Validate shape and unitarity.

        Raises
        ------
        UnitarityError
            If the matrix is not square of size ``2**k`` or not unitary.
        """
        matrix = np.array(self.matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise UnitarityError(f'Gate matrix must be square, got shape {matrix.shape}')
        arity = int(np.log2(matrix.shape[0]))
        if 2**arity != matrix.shape[0] or arity < 1:
            raise UnitarityError(f'Gate dimension {matrix.shape[0]} is not a power of two')

        deviation = float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))))
        if deviation > NORM_TOLERANCE:
            raise UnitarityError(f'Matrix {self.name or "<unnamed>"} is not unitary (max |U†U - I| = {deviation:.3g})')

        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)

    @property
    def arity(self) -> int:
        """Number of qubits the gate acts on."""
        return int(np.log2(self.matrix.shape[0]))

    def dagger(self) -> 'UnitaryOp':
        """Return the inverse gate.

        Returns
        -------
        UnitaryOp
            Conjugate transpose of this gate.
        """
        return UnitaryOp(self.matrix.conj().T, f'{self.name}†' if self.name else '')

    def __matmul__(self, other: 'UnitaryOp') -> 'UnitaryOp':
        """Compose two gates of equal arity (``self`` after ``other``).

        Returns
        -------
        UnitaryOp
            Product gate.
        """
        return UnitaryOp(self.matrix @ other.matrix)

    def __repr__(self) -> str:
        """Return the gate name and arity.

        Returns
        -------
        str
            Short description.
        """
        return f'UnitaryOp({self.name or "custom"}, arity={self.arity})'


IDENTITY = UnitaryOp(np.eye(2), 'I')
PAULI_X = UnitaryOp(np.array([[0, 1], [1, 0]]), 'X')
PAULI_Y = UnitaryOp(np.array([[0, -1j], [1j, 0]]), 'Y')
PAULI_Z = UnitaryOp(np.array([[1, 0], [0, -1]]), 'Z')
I_PAULI_Y = UnitaryOp(np.array([[0, 1], [-1, 0]]), 'iY')
HADAMARD = UnitaryOp(SQRT_HALF * np.array([[1, 1], [1, -1]]), 'H')
PHASE = UnitaryOp(np.array([[1, 0], [0, 1j]]), 'S')
CNOT = UnitaryOp(np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]), 'CNOT')

PAULI_SET = {'I': IDENTITY, 'X': PAULI_X, 'iY': I_PAULI_Y, 'Z': PAULI_Z}


def kron_all(gates: Sequence[UnitaryOp]) -> UnitaryOp:
    """Return the tensor product of ``gates`` in order.

    Returns
    -------
    UnitaryOp
        Gate acting on the combined register.
    """
    matrix = reduce(np.kron, (gate.matrix for gate in gates))
    return UnitaryOp(matrix, '⊗'.join(gate.name or '?' for gate in gates))


def apply_unitary(state: PureState, gate: UnitaryOp, targets: Sequence[QubitLabel]) -> PureState:
    """Apply ``gate`` to the ``targets`` qubits of ``state``, identity elsewhere.

    Returns
    -------
    PureState
        State with the same register order.

    Raises
    ------
    StateError
        On an arity mismatch, repeated targets or unknown labels.
    """
    targets = list(targets)
    if len(targets) != gate.arity:
        raise StateError(f'Gate {gate.name or "custom"} acts on {gate.arity} qubits, got {len(targets)} targets')
    if len(set(targets)) != len(targets):
        raise StateError(f'Target qubits must be distinct, got {[label_name(t) for t in targets]}')

    axes = [state.index_of(target) for target in targets]
    k = gate.arity
    gate_tensor = gate.matrix.reshape((2,) * (2 * k))
    # contracted axes land in front, in target order
    moved = np.tensordot(gate_tensor, state.as_tensor(), axes=(list(range(k, 2 * k)), axes))
    result = np.moveaxis(moved, list(range(k)), axes)
    return PureState(state.labels, result.reshape(-1))


def controlled(gate: UnitaryOp) -> UnitaryOp:
    """Return the gate controlled on an extra leading qubit.

    Returns
    -------
    UnitaryOp
        Block-diagonal ``|0><0| ⊗ I + |1><1| ⊗ gate``.
    """
    dimension = gate.matrix.shape[0]
    matrix = np.eye(2 * dimension, dtype=np.complex128)
    matrix[dimension:, dimension:] = gate.matrix
    return UnitaryOp(matrix, f'C{gate.name}')


def orthonormal_completion(vectors: Sequence[np.ndarray], dimension: int) -> list[np.ndarray]:
    """Complete ``vectors`` to an orthonormal basis of ``C^dimension``.

    The procedure is canonical: computational basis vectors are visited in
    index order, orthogonalised against everything accepted so far (modified
    Gram-Schmidt, applied twice) and kept when the residual norm exceeds the
    tolerance.

    Returns
    -------
    list[np.ndarray]
        The added vectors only, in the order they were accepted.
    """
    accepted = [np.asarray(vector, dtype=np.complex128) for vector in vectors]
    added: list[np.ndarray] = []
    for index in range(dimension):
        if len(accepted) == dimension:
            break
        candidate = np.zeros(dimension, dtype=np.complex128)
        candidate[index] = 1.0
        for _ in range(2):
            for vector in accepted:
                candidate = candidate - np.vdot(vector, candidate) * vector
        norm = np.linalg.norm(candidate)
        if norm > np.sqrt(NORM_TOLERANCE):
            candidate = candidate / norm
            accepted.append(candidate)
            added.append(candidate)
    return added


def complete_isometry(sources: Sequence[np.ndarray], targets: Sequence[np.ndarray]) -> np.ndarray:
    """Return a unitary mapping each source vector onto the matching target.

    Both families must be orthonormal and of equal length. They are completed
    with :func:`orthonormal_completion`, and the completions are paired in order.

    Returns
    -------
    np.ndarray
        Unitary matrix ``W`` with ``W @ sources[i] == targets[i]``.

    Raises
    ------
    UnitarityError
        If the families are not orthonormal or differ in size.
    """
    if len(sources) != len(targets):
        raise UnitarityError(f'Need as many targets as sources, got {len(targets)} and {len(sources)}')
    source_matrix = np.column_stack(sources).astype(np.complex128)
    target_matrix = np.column_stack(targets).astype(np.complex128)
    dimension = source_matrix.shape[0]
    for name, block in (('sources', source_matrix), ('targets', target_matrix)):
        gram = block.conj().T @ block
        if np.max(np.abs(gram - np.eye(gram.shape[0]))) > NORM_TOLERANCE:
            raise UnitarityError(f'Isometry {name} are not orthonormal')

    source_full = np.column_stack([*sources, *orthonormal_completion(sources, dimension)])
    target_full = np.column_stack([*targets, *orthonormal_completion(targets, dimension)])
    return target_full @ source_full.conj().T


def _unit_phase(value: complex, tolerance: float) -> str | None:
    """Return the name of ``value`` when it is one of ±1, ±i.

    Returns
    -------
    str | None
        ``'+1'``, ``'-1'``, ``'+i'``, ``'-i'`` or ``None``.
    """
    for name, phase in (('+1', 1), ('-1', -1), ('+i', 1j), ('-i', -1j)):
        if abs(value - phase) <= tolerance:
            return name
    return None


def is_signed_permutation(matrix: np.ndarray, tolerance: float = NORM_TOLERANCE) -> bool:
    """Return whether each row and column holds exactly one entry in {±1, ±i}.

    The global phase is removed first, using the first nonzero entry.

    Returns
    -------
    bool
        Classification result.
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    flat = matrix.reshape(-1)
    pivot = flat[np.argmax(np.abs(flat) > tolerance)]
    if abs(pivot) <= tolerance:
        return False
    matrix = matrix * (abs(pivot) / pivot)

    support = np.abs(matrix) > tolerance
    if not (np.all(support.sum(axis=0) == 1) and np.all(support.sum(axis=1) == 1)):
        return False
    return all(_unit_phase(complex(value), tolerance) is not None for value in matrix[support])


def pauli_label(matrix: np.ndarray, tolerance: float = NORM_TOLERANCE) -> str | None:
    """Return which of I, X, iY, Z the single-qubit ``matrix`` equals up to global phase.

    Returns
    -------
    str | None
        Pauli name, or ``None`` when the matrix is not a Pauli.
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.shape != (2, 2):
        return None
    for name, pauli in PAULI_SET.items():
        # |tr(P†U)| = 2 iff U = phase · P
        if abs(abs(np.trace(pauli.matrix.conj().T @ matrix)) - 2.0) <= tolerance:
            return name
    return None
