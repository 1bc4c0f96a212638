"""Dense pure states over labelled qubit registers."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from cluster_qis.errors import StateError

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-10
ZERO_PROBABILITY = 1e-12
RANK_TOLERANCE = 1e-9
MAX_QUBITS = 12

# Channel qubits keep their subscripts; these never collide with them.
SECRET_QUBIT = 101
SECRET_QUBIT_PRIME = 102
ANCILLA_QUBIT = 201

_LABEL_NAMES = {SECRET_QUBIT: 'a', SECRET_QUBIT_PRIME: "a'", ANCILLA_QUBIT: 'E'}

QubitLabel = int


def label_name(label: QubitLabel) -> str:
    """Return the printable name of a qubit label.

    Returns
    -------
    str
        ``a``, ``a'`` and ``E`` for the reserved labels, the subscript otherwise.
    """
    return _LABEL_NAMES.get(label, str(label))


def parse_label(text: str) -> QubitLabel:
    """Inverse of :func:`label_name`.

    Returns
    -------
    QubitLabel
        Integer label.

    Raises
    ------
    StateError
        If the text is neither a reserved name nor an integer.
    """
    for label, name in _LABEL_NAMES.items():
        if text == name:
            return label
    try:
        return int(text)
    except ValueError as exc:
        raise StateError(f'Unknown qubit label: {text!r}') from exc


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalised amplitude vector indexed big-endian in register order.

    Parameters
    ----------
    labels : tuple[int, ...]
        Qubit labels in register order. The first label is the most significant bit.
    amplitudes : np.ndarray
        Complex amplitudes of length ``2**len(labels)``.
    """

    labels: tuple[QubitLabel, ...]
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        """Validate and freeze the amplitude vector.

        Raises
        ------
        StateError
            If the register is empty, labels repeat, the length is wrong,
            an amplitude is not finite or the norm differs from one.
        """
        labels = tuple(int(label) for label in self.labels)
        amplitudes = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)

        if not labels:
            raise StateError('A pure state needs at least one qubit')
        if len(labels) > MAX_QUBITS:
            raise StateError(f'{len(labels)} qubits exceed the supported maximum of {MAX_QUBITS}')
        if len(set(labels)) != len(labels):
            raise StateError(f'Qubit labels must be unique, got {labels}')
        if amplitudes.size != 2 ** len(labels):
            raise StateError(f'Expected {2 ** len(labels)} amplitudes for {len(labels)} qubits, got {amplitudes.size}')
        if not np.all(np.isfinite(amplitudes)):
            raise StateError('Amplitudes must be finite')

        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise StateError(f'State is not normalised: squared norm {norm:.12g}')

        amplitudes.setflags(write=False)
        object.__setattr__(self, 'labels', labels)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @property
    def num_qubits(self) -> int:
        """Number of qubits in the register."""
        return len(self.labels)

    def amplitude(self, bits: str) -> complex:
        """Return the amplitude of a basis label written as a bit string.

        Returns
        -------
        complex
            Amplitude at ``bits`` (register order).
        """
        if len(bits) != self.num_qubits:
            raise StateError(f'Basis label {bits!r} does not have {self.num_qubits} bits')
        return complex(self.amplitudes[int(bits, 2)])

    def as_tensor(self) -> np.ndarray:
        """Return the amplitudes reshaped to one axis per qubit.

        Returns
        -------
        np.ndarray
            Array of shape ``(2,) * num_qubits``.
        """
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def index_of(self, label: QubitLabel) -> int:
        """Return the register position of ``label``.

        Returns
        -------
        int
            Zero based position in :attr:`labels`.
        """
        try:
            return self.labels.index(label)
        except ValueError as exc:
            raise StateError(f'Qubit {label_name(label)} is not part of register {self.label_names()}') from exc

    def label_names(self) -> list[str]:
        """Return the printable label order.

        Returns
        -------
        list[str]
            Names of the labels in register order.
        """
        return [label_name(label) for label in self.labels]

    def __repr__(self) -> str:
        """Return a compact listing of the nonzero amplitudes.

        Returns
        -------
        str
            Representation such as ``PureState(1,2: 0.707|00> + 0.707|11>)``.
        """
        terms = [
            f'{amp:.3g}|{index:0{self.num_qubits}b}>'
            for index, amp in enumerate(self.amplitudes)
            if abs(amp) > ZERO_PROBABILITY
        ]
        return f'PureState({",".join(self.label_names())}: {" + ".join(terms)})'


def from_amplitudes(
    amplitudes: Iterable[complex],
    labels: Sequence[QubitLabel] | None = None,
    *,
    normalize: bool = False,
) -> PureState:
    """Build a state from raw amplitudes, optionally rescaling it to unit norm.

    Returns
    -------
    PureState
        State with the given labels, or labels ``1..n`` when omitted.
    """
    vector = np.array(list(amplitudes), dtype=np.complex128)
    num_qubits = int(np.log2(max(vector.size, 1)))
    if 2**num_qubits != vector.size:
        raise StateError(f'Amplitude count {vector.size} is not a power of two')

    if normalize:
        norm = float(np.linalg.norm(vector))
        if norm <= ZERO_PROBABILITY:
            raise StateError('Cannot normalise the zero vector')
        vector = vector / norm

    if labels is None:
        labels = range(1, num_qubits + 1)
    return PureState(tuple(labels), vector)


def basis_state(bits: str, labels: Sequence[QubitLabel] | None = None) -> PureState:
    """Return the computational basis state ``|bits>``.

    Returns
    -------
    PureState
        Basis state on ``len(bits)`` qubits.
    """
    vector = np.zeros(2 ** len(bits), dtype=np.complex128)
    vector[int(bits, 2)] = 1.0
    return from_amplitudes(vector, labels)


def relabel(state: PureState, labels: Sequence[QubitLabel]) -> PureState:
    """Return the same amplitudes under new labels.

    Returns
    -------
    PureState
        State whose register positions carry ``labels``.
    """
    if len(labels) != state.num_qubits:
        raise StateError(f'Expected {state.num_qubits} labels, got {len(labels)}')
    return PureState(tuple(labels), state.amplitudes)


def reorder(state: PureState, labels: Sequence[QubitLabel]) -> PureState:
    """Permute the register so that qubits appear in the order of ``labels``.

    Returns
    -------
    PureState
        Physically identical state with a different register order.
    """
    if sorted(labels) != sorted(state.labels):
        raise StateError(f'Cannot reorder {state.label_names()} to {[label_name(lbl) for lbl in labels]}')
    axes = [state.index_of(label) for label in labels]
    tensor_form = np.transpose(state.as_tensor(), axes)
    return PureState(tuple(labels), tensor_form.reshape(-1))


def tensor(a: PureState, b: PureState) -> PureState:
    """Return ``a ⊗ b`` with the qubits of ``b`` appended after those of ``a``.

    If the two registers share labels, the labels of ``b`` are shifted past
    the largest label of ``a``.

    Returns
    -------
    PureState
        Product state on ``a.num_qubits + b.num_qubits`` qubits.
    """
    b_labels = b.labels
    if set(a.labels) & set(b_labels):
        offset = max(a.labels)
        b_labels = tuple(offset + position + 1 for position in range(b.num_qubits))
        logger.debug('Relabelled right factor of tensor product to %s', b_labels)

    return PureState(a.labels + b_labels, np.kron(a.amplitudes, b.amplitudes))


def overlap(a: PureState, b: PureState) -> complex:
    """Return ``<a|b>``, aligning ``b`` to the register order of ``a`` when needed.

    Returns
    -------
    complex
        Inner product.
    """
    if a.num_qubits != b.num_qubits:
        raise StateError(f'Dimension mismatch: {a.num_qubits} vs {b.num_qubits} qubits')
    if set(a.labels) == set(b.labels) and a.labels != b.labels:
        b = reorder(b, a.labels)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def equal_up_to_global_phase(a: PureState, b: PureState, tolerance: float = NORM_TOLERANCE) -> bool:
    """Return whether ``|<a|b>| >= 1 - tolerance``.

    Returns
    -------
    bool
        ``True`` when the two states differ at most by a global phase.
    """
    return abs(overlap(a, b)) >= 1.0 - tolerance


def phase_deviation(reference: PureState, state: PureState) -> float:
    """Return the largest amplitude difference once the global phase of ``state`` is aligned to ``reference``.

    Returns
    -------
    float
        ``max |state - e^{i phi} reference|`` over the amplitudes; ``inf`` for
        orthogonal states.

    Raises
    ------
    StateError
        If the registers have different sizes.
    """
    if reference.num_qubits != state.num_qubits:
        raise StateError(f'Dimension mismatch: {reference.num_qubits} vs {state.num_qubits} qubits')
    if set(reference.labels) == set(state.labels) and reference.labels != state.labels:
        state = reorder(state, reference.labels)
    phase = np.vdot(reference.amplitudes, state.amplitudes)
    if abs(phase) == 0:
        return float('inf')
    return float(np.max(np.abs(state.amplitudes - reference.amplitudes * phase / abs(phase))))


def random_state(
    num_qubits: int,
    rng: np.random.Generator,
    labels: Sequence[QubitLabel] | None = None,
) -> PureState:
    """Draw a state uniformly from the complex unit sphere.

    Real and imaginary parts are independent standard normals, then the vector
    is normalised.

    Returns
    -------
    PureState
        Random normalised state.
    """
    dimension = 2**num_qubits
    vector = rng.standard_normal(dimension) + 1j * rng.standard_normal(dimension)
    return from_amplitudes(vector, labels, normalize=True)
