"""Tests for channel states and the protocol measurement bases."""

import sys
from pathlib import Path

import numpy as np
import pytest

try:
    from cluster_qis.channels import (
        BASES,
        PRINTED_ASYMMETRIC_W,
        ChannelSpec,
        four_party_basis,
        make_asymmetric_w,
        make_basis,
        make_channel,
        make_cluster_generic,
        state_from_terms,
    )
    from cluster_qis.errors import StateError, UnknownIdentifierError
    from cluster_qis.qcore import reduced_density, schmidt_rank
except ModuleNotFoundError:
    SRC_PATH = Path(__file__).resolve().parents[1] / 'src'
    if str(SRC_PATH) not in sys.path:
        sys.path.insert(0, str(SRC_PATH))
    from cluster_qis.channels import (
        BASES,
        PRINTED_ASYMMETRIC_W,
        ChannelSpec,
        four_party_basis,
        make_asymmetric_w,
        make_basis,
        make_channel,
        make_cluster_generic,
        state_from_terms,
    )
    from cluster_qis.errors import StateError, UnknownIdentifierError
    from cluster_qis.qcore import reduced_density, schmidt_rank

HALF_ROOT = 1 / np.sqrt(2)


@pytest.mark.parametrize(
    ('name', 'bits', 'amplitude'),
    [
        ('ghz3', '111', HALF_ROOT),
        ('ghz3-', '111', -HALF_ROOT),
        ('ghz4', '1111', HALF_ROOT),
        ('c4', '1111', -0.5),
        ('c4', '0110', 0.5),
        ('c5', '11010', 0.5),
        ('w-asym', '100', HALF_ROOT),
        ('cluster:2', '01', -0.5),
    ],
)
def test_channel_amplitudes(name: str, bits: str, amplitude: float) -> None:
    """Named channels carry the expected coefficients."""
    assert make_channel(name).amplitude(bits) == pytest.approx(amplitude)


def test_c4_has_four_terms() -> None:
    """The four-qubit channel has exactly four nonzero amplitudes."""
    assert np.count_nonzero(np.abs(make_channel('c4').amplitudes) > 1e-12) == 4


@pytest.mark.parametrize('name', ['c4', 'c5', 'cluster:3', 'cluster:6'])
def test_single_qubit_marginals_are_maximally_mixed(name: str) -> None:
    """Every qubit of a cluster-type channel is maximally entangled with the rest."""
    state = make_channel(name)
    for label in state.labels:
        assert np.allclose(reduced_density(state, [label]).matrix, np.eye(2) / 2)


def test_cluster_sign_pattern() -> None:
    """|x> picks up a minus sign for each 0 followed by a 1."""
    state = make_cluster_generic(3)
    assert state.amplitude('010') == pytest.approx(-(2**-1.5))
    assert state.amplitude('101') == pytest.approx(-(2**-1.5))
    assert state.amplitude('011') == pytest.approx(-(2**-1.5))
    assert state.amplitude('110') == pytest.approx(2**-1.5)


@pytest.mark.parametrize('n', [1, 11])
def test_cluster_size_is_bounded(n: int) -> None:
    """Cluster sizes outside [2, 10] are refused."""
    with pytest.raises(StateError):
        make_cluster_generic(n)


def test_four_qubit_cluster_has_rank_four_cut() -> None:
    """The interleaved cut of the linear cluster is maximally entangled, unlike GHZ."""
    assert schmidt_rank(make_channel('cluster:4'), ([1, 3], [2, 4])) == 4
    assert schmidt_rank(make_channel('cluster:4'), ([1, 2], [3, 4])) == 2
    assert schmidt_rank(make_channel('ghz4'), ([1, 3], [2, 4])) == 2


@pytest.mark.parametrize('name', ['ghz', 'cluster:x', 'c6', ''])
def test_unknown_channel(name: str) -> None:
    """Unregistered names raise UnknownIdentifierError."""
    with pytest.raises(UnknownIdentifierError):
        make_channel(name)


def test_channel_spec_relabels() -> None:
    """ChannelSpec carries the register labels into the built state."""
    state = ChannelSpec('ghz3', (7, 8, 9)).build()
    assert state.labels == (7, 8, 9)
    with pytest.raises(StateError):
        ChannelSpec('c4', (1, 2, 3)).build()


def test_state_from_terms_normalises_and_validates() -> None:
    """Terms are summed and normalised; ragged labels are refused."""
    state = state_from_terms({'00': 1, '11': 1j})
    assert state.amplitude('11') == pytest.approx(1j * HALF_ROOT)
    with pytest.raises(StateError):
        state_from_terms({'00': 1, '1': 1})


def test_state_from_terms_rejects_repeated_kets() -> None:
    """A ket listed twice is refused rather than merged."""
    with pytest.raises(StateError, match='listed twice'):
        state_from_terms([('01', 1), ('10', 1), ('01', 1)])
    with pytest.raises(StateError, match='at least one term'):
        state_from_terms({})


def test_printed_asymmetric_w_is_rejected() -> None:
    """The printed form repeats |001>; only the corrected form builds."""
    assert [bits for bits, _ in PRINTED_ASYMMETRIC_W] == ['001', '010', '001']
    with pytest.raises(StateError, match=r'\|001> is listed twice'):
        make_asymmetric_w(PRINTED_ASYMMETRIC_W)

    state = make_asymmetric_w()
    assert state.amplitude('100') == pytest.approx(HALF_ROOT)
    assert state.amplitude('001') == pytest.approx(0.5)


@pytest.mark.parametrize('name', sorted(BASES))
def test_registered_bases_are_complete(name: str) -> None:
    """Every registered basis resolves to a complete orthonormal basis."""
    basis = make_basis(name)
    assert basis.is_complete
    stacked = np.column_stack(basis.vectors)
    assert np.allclose(stacked.conj().T @ stacked, np.eye(len(basis)))


@pytest.mark.parametrize(
    ('name', 'size', 'listed'),
    [
        ('bell', 4, 4),
        ('pm', 2, 2),
        ('bob-c4', 4, 2),
        ('bob-c5', 4, 4),
        ('ghz3-basis', 8, 4),
        ('table5', 16, 16),
        ('cz-pm', 4, 4),
        ('bell-pm', 8, 8),
    ],
)
def test_basis_sizes(name: str, size: int, listed: int) -> None:
    """Partial bases remember how many vectors were listed before completion."""
    basis = make_basis(name)
    assert len(basis) == size
    assert basis.listed == listed


def test_ghz_basis_partner_choice() -> None:
    """The second GHZ pair follows the requested partner label."""
    default = make_basis('ghz3-basis')
    c5 = make_basis('ghz3-basis:c5')
    assert '|001>' in default.names[2]
    assert '|011>' in c5.names[2]
    assert np.allclose(default.vectors[0], c5.vectors[0])

def test_cz_pm_vectors_are_maximally_entangled() -> None:
    """Two ± measurements after a CZ project onto maximally entangled pairs."""
    basis = make_basis('cz-pm')
    assert basis.names == ('CZ|++>', 'CZ|+->', 'CZ|-+>', 'CZ|-->')
    for vector in basis.vectors:
        assert np.allclose(np.linalg.svd(vector.reshape(2, 2), compute_uv=False), [HALF_ROOT, HALF_ROOT])


def test_bell_pm_is_a_product_basis() -> None:
    """The Bell-then-± basis factors into its two measurements."""
    basis = make_basis('bell-pm')
    assert basis.targets == (1, 2, 3)
    assert np.allclose(basis.vectors[1], np.kron(make_basis('bell').vectors[0], make_basis('pm').vectors[1]))
    assert basis.names[1] == '(|00>+|11>)/√2⊗(|0>-|1>)/√2'



def test_four_party_basis_coefficients() -> None:
    """Each vector has four entries of magnitude one half."""
    for vector in four_party_basis().vectors:
        magnitudes = np.abs(vector)
        assert np.count_nonzero(magnitudes > 1e-12) == 4
        assert np.allclose(magnitudes[magnitudes > 1e-12], 0.5)


def test_unknown_basis() -> None:
    """Unregistered basis names raise UnknownIdentifierError."""
    with pytest.raises(UnknownIdentifierError, match='Unknown basis'):
        make_basis('hadamard')
