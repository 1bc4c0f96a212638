"""Tests for the derived corrections and the joint conversion."""

import sys
from pathlib import Path

import numpy as np
import pytest

try:
    from cluster_qis.errors import DerivationError
    from cluster_qis.protocols import (
        PROTOCOL_IDS,
        branch_image,
        correction_table,
        derive_correction,
        derive_joint_conversion,
        get_protocol_spec,
        pauli_word,
        verify_conversion,
    )
    from cluster_qis.qcore import CNOT, HADAMARD, PAULI_X, PAULI_Z, kron_all
except ModuleNotFoundError:
    SRC_PATH = Path(__file__).resolve().parents[1] / 'src'
    if str(SRC_PATH) not in sys.path:
        sys.path.insert(0, str(SRC_PATH))
    from cluster_qis.errors import DerivationError
    from cluster_qis.protocols import (
        PROTOCOL_IDS,
        branch_image,
        correction_table,
        derive_correction,
        derive_joint_conversion,
        get_protocol_spec,
        pauli_word,
        verify_conversion,
    )
    from cluster_qis.qcore import CNOT, HADAMARD, PAULI_X, PAULI_Z, kron_all

BRANCH_COUNTS = {'hbb-ghz': 8, 'c4-single': 8, 'c4-entangled': 8, 'c5-single': 16, 'c5-arbitrary': 32}


@pytest.mark.parametrize('protocol', PROTOCOL_IDS)
def test_corrections_are_signed_permutations(protocol: str) -> None:
    """Every derived correction is a signed permutation, one per nonzero branch."""
    table = correction_table(protocol, verification_secrets=5)
    assert len(table) == BRANCH_COUNTS[protocol]
    assert all(entry.signed_permutation for entry in table.entries)


def test_cz_route_needs_hadamard_type_corrections() -> None:
    """After CZ and two ± measurements Charlie's corrections mix |0> and |1> evenly."""
    table = correction_table('c4-single-split', verification_secrets=5)
    assert len(table) == 8
    for entry in table.entries:
        assert not entry.signed_permutation
        assert np.allclose(np.abs(entry.unitary.matrix), 1 / np.sqrt(2))


def test_split_entangled_route_keeps_signed_permutations() -> None:
    """The Bell-then-± route is corrected like the GHZ measurement."""
    table = correction_table('c4-entangled-split', verification_secrets=5)
    assert len(table) == 16
    assert all(entry.signed_permutation for entry in table.entries)


def test_ghz_corrections_are_paulis() -> None:
    """The GHZ protocol only needs single-qubit Paulis."""
    table = correction_table('hbb-ghz', verification_secrets=5)
    assert {entry.pauli for entry in table.entries} <= {'I', 'X', 'iY', 'Z'}
    assert table.lookup(0, 0).name == 'I'


def test_ghz_corrections_depend_on_channel_sign() -> None:
    """Flipping the channel sign changes at least one correction."""
    plus = correction_table('hbb-ghz', verification_secrets=5)
    minus = correction_table('hbb-ghz', channel_sign=-1, verification_secrets=5)
    assert [entry.pauli for entry in plus.entries] != [entry.pauli for entry in minus.entries]


def test_null_branch_has_no_correction() -> None:
    """A zero-probability outcome pair cannot be corrected."""
    with pytest.raises(DerivationError, match='zero-probability'):
        derive_correction('c4-single', 0, 2)


def test_branch_image_is_linear(rng: np.random.Generator) -> None:
    """Charlie's unnormalised state is linear in the secret amplitudes."""
    spec = get_protocol_spec('c5-single')
    first, second = rng.standard_normal(2) + 0j, rng.standard_normal(2) + 0j
    combined = branch_image(spec, first + second, 1, 2)
    assert np.allclose(combined, branch_image(spec, first, 1, 2) + branch_image(spec, second, 1, 2))


def test_branch_image_norm_is_probability() -> None:
    """For a normalised secret the image norm squared is the branch probability."""
    spec = get_protocol_spec('c4-single')
    image = branch_image(spec, np.array([0.6, 0.8j]), 2, 1)
    assert float(np.vdot(image, image).real) == pytest.approx(1 / 8)


def test_joint_conversion_maps_listed_states() -> None:
    """W sends (|000> + |110>)/√2 to |000> and (|001> - |111>)/√2 to |111>."""
    conversion = derive_joint_conversion().matrix
    ghz_like = np.zeros(8)
    ghz_like[[0b000, 0b110]] = 1 / np.sqrt(2)
    ghz_pair = np.zeros(8)
    ghz_pair[[0b001, 0b111]] = (1 / np.sqrt(2), -1 / np.sqrt(2))
    assert np.allclose(conversion @ ghz_like, np.eye(8)[0b000])
    assert np.allclose(conversion @ ghz_pair, np.eye(8)[0b111])


def test_joint_conversion_is_cached() -> None:
    """The conversion is derived once."""
    assert derive_joint_conversion() is derive_joint_conversion()


def test_verify_conversion() -> None:
    """Each Alice branch of the entangled protocol is recoverable after W."""
    assert verify_conversion()


@pytest.mark.parametrize(
    ('matrix', 'word'),
    [
        (kron_all([PAULI_X, PAULI_Z]).matrix, 'X⊗Z'),
        (-1j * PAULI_Z.matrix, 'Z'),
        (np.eye(4), 'I⊗I'),
        (HADAMARD.matrix, None),
        (CNOT.matrix, None),
    ],
)
def test_pauli_word(matrix: np.ndarray, word: str | None) -> None:
    """Tensor products of Paulis are named; other unitaries are not."""
    assert pauli_word(matrix) == word
