"""Constructors for the entangled channel states."""

import itertools
import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from cluster_qis.errors import StateError, UnknownIdentifierError
from cluster_qis.qcore import PureState, QubitLabel, from_amplitudes

logger = logging.getLogger(__name__)

CLUSTER_RANGE = (2, 10)
Terms = Mapping[str, complex] | Sequence[tuple[str, complex]]


def state_from_terms(terms: Terms, labels: Sequence[QubitLabel] | None = None) -> PureState:
    """Build a normalised state from ``{bit string: coefficient}`` terms or ``(bit string, coefficient)`` pairs.

    Returns
    -------
    PureState
        State proportional to ``Σ c |bits>``.

    Raises
    ------
    StateError
        For no terms, bit strings of different lengths or a ket listed twice.
    """
    pairs = list(terms.items()) if isinstance(terms, Mapping) else list(terms)
    if not pairs:
        raise StateError('A state needs at least one term')
    num_qubits = len(pairs[0][0])
    vector = np.zeros(2**num_qubits, dtype=np.complex128)
    seen: set[str] = set()
    for bits, coefficient in pairs:
        if len(bits) != num_qubits:
            raise StateError(f'Term {bits!r} does not have {num_qubits} bits')
        if bits in seen:
            raise StateError(f'Ket |{bits}> is listed twice')
        seen.add(bits)
        vector[int(bits, 2)] = coefficient
    return from_amplitudes(vector, labels, normalize=True)



def make_ghz3(sign: int = 1) -> PureState:
    """Return ``(|000> + sign |111>)/√2`` on qubits 1, 2, 3.

    Returns
    -------
    PureState
        Three-qubit GHZ state.
    """
    if sign not in (1, -1):
        raise StateError(f'GHZ sign must be +1 or -1, got {sign}')
    return state_from_terms({'000': 1, '111': sign})


def make_ghz(num_qubits: int) -> PureState:
    """Return ``(|0...0> + |1...1>)/√2`` on ``num_qubits`` qubits.

    Returns
    -------
    PureState
        n-qubit GHZ state.
    """
    return state_from_terms({'0' * num_qubits: 1, '1' * num_qubits: 1})


def make_c4() -> PureState:
    """Return the four-qubit cluster state in the form the protocols use.

    ``½(|0000> + |0110> + |1001> - |1111>)`` on qubits 1..4.

    Returns
    -------
    PureState
        Four-qubit channel.
    """
    return state_from_terms({'0000': 1, '0110': 1, '1001': 1, '1111': -1})


def make_c5() -> PureState:
    """Return ``½(|00000> + |00111> + |11101> + |11010>)`` on qubits 1..5.

    Returns
    -------
    PureState
        Five-qubit channel.
    """
    return state_from_terms({'00000': 1, '00111': 1, '11101': 1, '11010': 1})


def make_cluster_generic(n: int) -> PureState:
    """Expand the product definition of the n-qubit linear cluster literally.

    Each factor is ``|0>_a σ_z^(a+1) + |1>_a``: choosing ``|0>`` on qubit ``a``
    applies ``σ_z`` to qubit ``a + 1``, and ``σ_z`` past the last qubit is the
    identity. The amplitude of ``x`` is therefore ``2^(-n/2)`` times
    ``Π_a (-1)^((1 - x_a) x_(a+1))``.

    Returns
    -------
    PureState
        Cluster state on qubits 1..n.

    Raises
    ------
    StateError
        If ``n`` is outside ``[2, 10]``.
    """
    low, high = CLUSTER_RANGE
    if not low <= n <= high:
        raise StateError(f'Cluster size must lie in [{low}, {high}], got {n}')

    vector = np.empty(2**n, dtype=np.complex128)
    for index, bits in enumerate(itertools.product((0, 1), repeat=n)):
        flips = sum((1 - bits[a]) * bits[a + 1] for a in range(n - 1))
        vector[index] = (-1) ** flips
    return from_amplitudes(vector / 2 ** (n / 2))


# third term as commonly printed, repeating |001>
PRINTED_ASYMMETRIC_W = (('001', 0.5), ('010', 0.5), ('001', 1 / np.sqrt(2)))
ASYMMETRIC_W = (('001', 0.5), ('010', 0.5), ('100', 1 / np.sqrt(2)))


def make_asymmetric_w(terms: Sequence[tuple[str, complex]] = ASYMMETRIC_W) -> PureState:
    """Return ``½|001> + ½|010> + (1/√2)|100>``.

    The commonly printed form (:data:`PRINTED_ASYMMETRIC_W`) repeats ``|001>``
    in its third term and cannot give a three-term state. The third term is
    taken to be ``|100>``.

    Parameters
    ----------
    terms : Sequence[tuple[str, complex]]
        Terms to build from; the default is the corrected form.

    Returns
    -------
    PureState
        Asymmetric W state on qubits 1, 2, 3.

    Raises
    ------
    StateError
        For terms that repeat a ket, such as the printed form.
    """
    return state_from_terms(terms)



@dataclass(frozen=True)
class ChannelSpec:
    """A named channel and the labels its qubits carry."""

    name: str
    qubit_labels: tuple[QubitLabel, ...]

    def build(self) -> PureState:
        """Construct the channel state with :attr:`qubit_labels`.

        Returns
        -------
        PureState
            Channel state.
        """
        state = make_channel(self.name)
        if len(self.qubit_labels) != state.num_qubits:
            raise StateError(f'Channel {self.name} has {state.num_qubits} qubits, got {len(self.qubit_labels)} labels')
        return PureState(self.qubit_labels, state.amplitudes)


def make_channel(name: str) -> PureState:
    """Resolve a stable channel identifier.

    Known names are ``ghz3``, ``ghz3-``, ``ghz<n>``, ``c4``, ``c5``,
    ``cluster:<n>`` and ``w-asym``.

    Returns
    -------
    PureState
        Channel state on qubits ``1..n``.

    Raises
    ------
    UnknownIdentifierError
        If the name is not recognised.
    """
    fixed = {
        'ghz3': lambda: make_ghz3(1),
        'ghz3-': lambda: make_ghz3(-1),
        'c4': make_c4,
        'c5': make_c5,
        'w-asym': make_asymmetric_w,
    }
    if name in fixed:
        return fixed[name]()
    if name.startswith('cluster:') and name.removeprefix('cluster:').isdigit():
        return make_cluster_generic(int(name.removeprefix('cluster:')))
    if name.startswith('ghz') and name.removeprefix('ghz').isdigit():
        return make_ghz(int(name.removeprefix('ghz')))

    logger.error('Unknown channel: %s.', name)
    raise UnknownIdentifierError(f'Unknown channel {name!r}; expected one of {sorted(fixed)}, ghz<n> or cluster:<n>')
