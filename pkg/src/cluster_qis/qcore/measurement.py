"""Projective measurement with exhaustive branch enumeration."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from cluster_qis.errors import BasisError, StateError
from cluster_qis.qcore.gates import orthonormal_completion
from cluster_qis.qcore.states import (
    NORM_TOLERANCE,
    ZERO_PROBABILITY,
    PureState,
    QubitLabel,
    label_name,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """Orthonormal vectors on an ordered set of target qubits.

    Parameters
    ----------
    targets : tuple[int, ...]
        Qubits the basis acts on, in the order the vectors are written.
    vectors : tuple[np.ndarray, ...]
        Basis vectors of length ``2**len(targets)``.
    names : tuple[str, ...]
        Display name per vector.
    listed : int
        Number of vectors given explicitly; the rest come from completion.
    """

    targets: tuple[QubitLabel, ...]
    vectors: tuple[np.ndarray, ...]
    names: tuple[str, ...] = field(default=())
    listed: int = -1

    def __post_init__(self) -> None:
        """Validate orthonormality and freeze the vectors.

        Raises
        ------
        BasisError
            If vectors have the wrong length, are too many, or are not orthonormal.
        """
        dimension = 2 ** len(self.targets)
        vectors = tuple(np.array(vector, dtype=np.complex128).reshape(-1) for vector in self.vectors)
        if not vectors:
            raise BasisError('A measurement basis needs at least one vector')
        if any(vector.size != dimension for vector in vectors):
            raise BasisError(f'Basis vectors on {len(self.targets)} qubits must have {dimension} entries')
        if len(vectors) > dimension:
            raise BasisError(f'{len(vectors)} vectors cannot be orthonormal in dimension {dimension}')

        stacked = np.column_stack(vectors)
        deviation = float(np.max(np.abs(stacked.conj().T @ stacked - np.eye(len(vectors)))))
        if deviation > NORM_TOLERANCE:
            raise BasisError(f'Basis vectors are not orthonormal (max Gram deviation {deviation:.3g})')

        for vector in vectors:
            vector.setflags(write=False)
        names = self.names or tuple(f'v{index}' for index in range(len(vectors)))
        if len(names) != len(vectors):
            raise BasisError(f'Expected {len(vectors)} names, got {len(names)}')

        object.__setattr__(self, 'targets', tuple(int(t) for t in self.targets))
        object.__setattr__(self, 'vectors', vectors)
        object.__setattr__(self, 'names', tuple(names))
        object.__setattr__(self, 'listed', len(vectors) if self.listed < 0 else self.listed)

    @property
    def is_complete(self) -> bool:
        """Whether the vectors span the full target space."""
        return len(self.vectors) == 2 ** len(self.targets)

    def __len__(self) -> int:
        """Return the number of vectors.

        Returns
        -------
        int
            Vector count.
        """
        return len(self.vectors)

    def on(self, targets: Sequence[QubitLabel]) -> 'MeasurementBasis':
        """Return the same vectors bound to other target qubits.

        Returns
        -------
        MeasurementBasis
            Re-targeted copy.
        """
        return MeasurementBasis(tuple(targets), self.vectors, self.names, self.listed)


def complete_basis(basis: MeasurementBasis) -> MeasurementBasis:
    """Append the canonical orthonormal completion to a partial basis.

    Listed vectors keep their positions; completion vectors are named ``+e<index>``
    after the computational basis vector they grew out of.

    Returns
    -------
    MeasurementBasis
        Complete basis (``basis`` itself if already complete).
    """
    if basis.is_complete:
        return basis
    dimension = 2 ** len(basis.targets)
    added = orthonormal_completion(basis.vectors, dimension)
    names = [
        f'+|{int(np.argmax(np.abs(vector))):0{len(basis.targets)}b}>' for vector in added
    ]
    logger.debug('Completed basis on %s with %d vectors', basis.targets, len(added))
    return MeasurementBasis(basis.targets, basis.vectors + tuple(added), basis.names + tuple(names), basis.listed)


def _partial_inner_product(state: PureState, vector: np.ndarray, targets: Sequence[QubitLabel]) -> np.ndarray:
    """Contract ``<vector|`` against the target qubits of ``state``.

    Returns
    -------
    np.ndarray
        Unnormalised residual tensor on the remaining qubits.
    """
    axes = [state.index_of(target) for target in targets]
    bra = np.conj(vector).reshape((2,) * len(targets))
    return np.tensordot(bra, state.as_tensor(), axes=(list(range(len(targets))), axes))


def project(
    state: PureState,
    basis_vector: np.ndarray | PureState,
    targets: Sequence[QubitLabel],
) -> tuple[float, PureState | None]:
    """Project the ``targets`` of ``state`` onto ``basis_vector``.

    A :class:`PureState` has at least one qubit, so the empty register left by
    projecting every qubit is returned as ``None``; only the probability is
    meaningful then.

    Returns
    -------
    tuple[float, PureState | None]
        Outcome probability and the renormalised residual state on the
        non-target qubits. The residual is ``None`` when the probability is at
        most the zero threshold or when no qubit remains.

    Raises
    ------
    StateError
        On a dimension mismatch or repeated target labels.
    """
    vector = basis_vector.amplitudes if isinstance(basis_vector, PureState) else np.asarray(basis_vector)
    targets = list(targets)
    if len(set(targets)) != len(targets):
        raise StateError(f'Target qubits must be distinct, got {[label_name(t) for t in targets]}')
    if vector.size != 2 ** len(targets):
        raise StateError(f'Basis vector of length {vector.size} does not match {len(targets)} target qubits')

    residual = _partial_inner_product(state, vector, targets)
    probability = float(np.vdot(residual, residual).real)
    remaining = tuple(label for label in state.labels if label not in targets)
    if probability <= ZERO_PROBABILITY or not remaining:
        return probability, None
    return probability, PureState(remaining, residual.reshape(-1) / np.sqrt(probability))


def residual(state: PureState, basis_vector: np.ndarray, targets: Sequence[QubitLabel]) -> np.ndarray:
    """Return the unnormalised residual vector of a projection.

    The map from ``state`` to this vector is linear, which the correction
    derivation relies on.

    Returns
    -------
    np.ndarray
        Flattened residual amplitudes on the non-target qubits.
    """
    return _partial_inner_product(state, np.asarray(basis_vector), list(targets)).reshape(-1)


@dataclass(frozen=True)
class Branch:
    """One outcome of a measurement."""

    outcome: int
    name: str
    probability: float
    post_state: PureState | None

    @property
    def is_null(self) -> bool:
        """Whether the outcome has zero probability."""
        return self.probability <= ZERO_PROBABILITY


def enumerate_measurement(state: PureState, basis: MeasurementBasis) -> list[Branch]:
    """Return every outcome of measuring ``state`` in a complete ``basis``.

    Zero-probability outcomes are kept and flagged through :attr:`Branch.is_null`.

    Returns
    -------
    list[Branch]
        One branch per basis vector in basis order.

    Raises
    ------
    BasisError
        If the basis is partial or the probabilities do not sum to one.
    """
    if not basis.is_complete:
        size = 2 ** len(basis.targets)
        raise BasisError(f'Basis on {list(basis.targets)} has {len(basis)} of {size} vectors; complete it first')

    branches = []
    for index, (vector, name) in enumerate(zip(basis.vectors, basis.names, strict=True)):
        probability, post_state = project(state, vector, basis.targets)
        branches.append(Branch(index, name, probability, post_state))

    total = sum(branch.probability for branch in branches)
    if abs(total - 1.0) > NORM_TOLERANCE:
        raise BasisError(f'Branch probabilities sum to {total:.12g}')
    return branches
