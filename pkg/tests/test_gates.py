"""Tests for unitary gates, their application and isometry completion."""

import sys
from pathlib import Path

import numpy as np
import pytest

try:
    from cluster_qis.errors import StateError, UnitarityError
    from cluster_qis.qcore import (
        CNOT,
        HADAMARD,
        IDENTITY,
        PAULI_X,
        PAULI_Z,
        PHASE,
        PureState,
        UnitaryOp,
        apply_unitary,
        basis_state,
        complete_isometry,
        controlled,
        equal_up_to_global_phase,
        is_signed_permutation,
        kron_all,
        orthonormal_completion,
        pauli_label,
    )
    from cluster_qis.qcore.gates import PAULI_Y
except ModuleNotFoundError:
    SRC_PATH = Path(__file__).resolve().parents[1] / 'src'
    if str(SRC_PATH) not in sys.path:
        sys.path.insert(0, str(SRC_PATH))
    from cluster_qis.errors import StateError, UnitarityError
    from cluster_qis.qcore import (
        CNOT,
        HADAMARD,
        IDENTITY,
        PAULI_X,
        PAULI_Z,
        PHASE,
        PureState,
        UnitaryOp,
        apply_unitary,
        basis_state,
        complete_isometry,
        controlled,
        equal_up_to_global_phase,
        is_signed_permutation,
        kron_all,
        orthonormal_completion,
        pauli_label,
    )
    from cluster_qis.qcore.gates import PAULI_Y


def test_non_unitary_matrix_is_rejected() -> None:
    """Construction checks U†U = I."""
    with pytest.raises(UnitarityError, match='not unitary'):
        UnitaryOp(np.array([[1, 1], [0, 1]]), 'shear')


def test_non_power_of_two_is_rejected() -> None:
    """Gate dimensions must be a power of two."""
    with pytest.raises(UnitarityError):
        UnitaryOp(np.eye(3))


def test_cnot_flips_target_when_control_set() -> None:
    """CNOT acts on the listed targets, control first."""
    assert apply_unitary(basis_state('10'), CNOT, [1, 2]).amplitude('11') == 1
    assert apply_unitary(basis_state('00'), CNOT, [1, 2]).amplitude('00') == 1


def test_target_order_selects_control() -> None:
    """Swapping the targets swaps control and target."""
    result = apply_unitary(basis_state('01'), CNOT, [2, 1])
    assert result.labels == (1, 2)
    assert result.amplitude('11') == 1


def test_apply_unitary_on_middle_qubit() -> None:
    """Single-qubit gates leave other qubits alone."""
    result = apply_unitary(basis_state('000'), PAULI_X, [2])
    assert result.amplitude('010') == 1


def test_apply_unitary_validates_targets() -> None:
    """Arity mismatches and repeated targets are refused."""
    with pytest.raises(StateError):
        apply_unitary(basis_state('00'), CNOT, [1])
    with pytest.raises(StateError):
        apply_unitary(basis_state('00'), CNOT, [1, 1])


def test_dagger_inverts(random_two_qubit: PureState) -> None:
    """U† U leaves any state unchanged."""
    gate = kron_all([HADAMARD, PHASE]) @ CNOT
    restored = apply_unitary(apply_unitary(random_two_qubit, gate, [1, 2]), gate.dagger(), [1, 2])
    assert equal_up_to_global_phase(restored, random_two_qubit)


def test_controlled_x_is_cnot() -> None:
    """controlled(X) reproduces the CNOT matrix."""
    assert np.allclose(controlled(PAULI_X).matrix, CNOT.matrix)


def test_kron_all_names_factors() -> None:
    """The product gate acts on the combined register."""
    gate = kron_all([PAULI_X, IDENTITY, PAULI_Z])
    assert gate.arity == 3
    assert gate.name == 'X⊗I⊗Z'


def test_orthonormal_completion_of_plus_state() -> None:
    """The completion of |+> is |-> up to sign."""
    plus = np.array([1, 1]) / np.sqrt(2)
    (added,) = orthonormal_completion([plus], 2)
    assert abs(np.vdot(plus, added)) < 1e-12
    assert abs(abs(np.vdot(np.array([1, -1]) / np.sqrt(2), added)) - 1) < 1e-12


def test_complete_isometry_maps_sources_to_targets() -> None:
    """The completed matrix is unitary and sends each source to its target."""
    sources = [np.array([1, 0, 0, 0]), np.array([0, 0, 0, 1])]
    targets = [np.array([1, 0, 0, 1]) / np.sqrt(2), np.array([1, 0, 0, -1]) / np.sqrt(2)]
    matrix = complete_isometry(sources, targets)
    assert np.allclose(matrix.conj().T @ matrix, np.eye(4))
    for source, target in zip(sources, targets, strict=True):
        assert np.allclose(matrix @ source, target)


def test_complete_isometry_rejects_non_orthonormal() -> None:
    """Overlapping sources cannot be mapped isometrically."""
    with pytest.raises(UnitarityError):
        complete_isometry([np.array([1, 0]), np.array([1, 1]) / np.sqrt(2)], [np.array([1, 0]), np.array([0, 1])])


@pytest.mark.parametrize(
    ('matrix', 'expected'),
    [
        (CNOT.matrix, True),
        (1j * PAULI_X.matrix, True),
        (kron_all([PAULI_Z, PAULI_X]).matrix, True),
        (HADAMARD.matrix, False),
        (np.diag([1, np.exp(0.3j)]), False),
    ],
)
def test_is_signed_permutation(matrix: np.ndarray, expected: bool) -> None:
    """Signed permutations allow one unit-phase entry per row and column."""
    assert is_signed_permutation(matrix) is expected


@pytest.mark.parametrize(
    ('matrix', 'expected'),
    [
        (IDENTITY.matrix, 'I'),
        (-PAULI_X.matrix, 'X'),
        (PAULI_Y.matrix, 'iY'),
        (1j * PAULI_Z.matrix, 'Z'),
        (HADAMARD.matrix, None),
        (CNOT.matrix, None),
    ],
)
def test_pauli_label_up_to_phase(matrix: np.ndarray, expected: str | None) -> None:
    """Paulis are recognised up to a global phase."""
    assert pauli_label(matrix) == expected
