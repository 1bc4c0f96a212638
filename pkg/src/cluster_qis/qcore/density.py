"""Reduced density matrices, Schmidt ranks and distinguishability measures."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from cluster_qis.errors import StateError
from cluster_qis.qcore.states import NORM_TOLERANCE, RANK_TOLERANCE, PureState, QubitLabel, label_name


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator on labelled qubits."""

    labels: tuple[QubitLabel, ...]
    matrix: np.ndarray

    def __post_init__(self) -> None:
        """Validate the density matrix invariants.

        Raises
        ------
        StateError
            If the matrix has the wrong shape, is not Hermitian, has trace other
            than one or a significantly negative eigenvalue.
        """
        matrix = np.array(self.matrix, dtype=np.complex128)
        dimension = 2 ** len(self.labels)
        if matrix.shape != (dimension, dimension):
            raise StateError(f'Density matrix on {len(self.labels)} qubits must be {dimension}x{dimension}')
        if np.max(np.abs(matrix - matrix.conj().T)) > NORM_TOLERANCE:
            raise StateError('Density matrix is not Hermitian')
        trace = complex(np.trace(matrix))
        if abs(trace - 1.0) > NORM_TOLERANCE:
            raise StateError(f'Density matrix trace is {trace.real:.12g}, expected 1')
        if np.min(np.linalg.eigvalsh(matrix)) < -RANK_TOLERANCE:
            raise StateError('Density matrix is not positive semidefinite')

        matrix.setflags(write=False)
        object.__setattr__(self, 'labels', tuple(int(label) for label in self.labels))
        object.__setattr__(self, 'matrix', matrix)

    @property
    def num_qubits(self) -> int:
        """Number of qubits the operator acts on."""
        return len(self.labels)

    @classmethod
    def from_state(cls, state: PureState) -> 'DensityMatrix':
        """Return ``|ψ><ψ|``.

        Returns
        -------
        DensityMatrix
            Rank-one projector onto ``state``.
        """
        return cls(state.labels, np.outer(state.amplitudes, state.amplitudes.conj()))

    @classmethod
    def mixture(cls, weighted: Sequence[tuple[float, 'DensityMatrix']]) -> 'DensityMatrix':
        """Return the probability-weighted sum of density matrices on the same labels.

        Returns
        -------
        DensityMatrix
            Mixed state ``Σ p_k ρ_k`` renormalised to unit trace.
        """
        labels = weighted[0][1].labels
        total = sum(weight for weight, _ in weighted)
        matrix = sum(weight * rho.matrix for weight, rho in weighted) / total
        return cls(labels, matrix)


def reduced_density(state: PureState, keep: Sequence[QubitLabel]) -> DensityMatrix:
    """Trace out every qubit of ``state`` that is not in ``keep``.

    Returns
    -------
    DensityMatrix
        Marginal on ``keep``, in the order given.

    Raises
    ------
    StateError
        If ``keep`` is empty, repeats labels or names qubits outside the register.
    """
    keep = list(keep)
    if not keep:
        raise StateError('Cannot reduce onto an empty set of qubits')
    if len(set(keep)) != len(keep):
        raise StateError(f'Repeated labels in keep set {[label_name(label) for label in keep]}')

    kept_axes = [state.index_of(label) for label in keep]
    traced_axes = [axis for axis in range(state.num_qubits) if axis not in kept_axes]
    # rows are kept qubits, columns everything traced
    amplitude_matrix = np.transpose(state.as_tensor(), kept_axes + traced_axes).reshape(2 ** len(keep), -1)
    return DensityMatrix(tuple(keep), amplitude_matrix @ amplitude_matrix.conj().T)


def reduce_density(rho: DensityMatrix, keep: Sequence[QubitLabel]) -> DensityMatrix:
    """Partial trace of a density matrix onto ``keep``.

    Returns
    -------
    DensityMatrix
        Marginal of ``rho``.
    """
    keep = list(keep)
    if not keep or any(label not in rho.labels for label in keep):
        raise StateError(f'Invalid keep set {[label_name(label) for label in keep]} for {list(rho.labels)}')
    n = rho.num_qubits
    kept_axes = [rho.labels.index(label) for label in keep]
    traced_axes = [axis for axis in range(n) if axis not in kept_axes]
    tensor_form = rho.matrix.reshape((2,) * (2 * n))
    order = kept_axes + traced_axes + [n + axis for axis in kept_axes] + [n + axis for axis in traced_axes]
    dim_keep, dim_trace = 2 ** len(keep), 2 ** len(traced_axes)
    blocks = np.transpose(tensor_form, order).reshape(dim_keep, dim_trace, dim_keep, dim_trace)
    return DensityMatrix(tuple(keep), np.trace(blocks, axis1=1, axis2=3))


def schmidt_coefficients(state: PureState, side: Sequence[QubitLabel]) -> np.ndarray:
    """Return the singular values of the amplitude matrix across ``side`` | rest.

    Returns
    -------
    np.ndarray
        Singular values in decreasing order.
    """
    side = list(side)
    other = [label for label in state.labels if label not in side]
    if not side or not other or any(label not in state.labels for label in side):
        raise StateError(f'Invalid bipartition {[label_name(label) for label in side]} of {state.label_names()}')
    axes = [state.index_of(label) for label in side] + [state.index_of(label) for label in other]
    amplitude_matrix = np.transpose(state.as_tensor(), axes).reshape(2 ** len(side), -1)
    return np.linalg.svd(amplitude_matrix, compute_uv=False)


def schmidt_rank(state: PureState, cut: tuple[Sequence[QubitLabel], Sequence[QubitLabel]]) -> int:
    """Return the number of singular values above the rank threshold across ``cut``.

    Returns
    -------
    int
        Schmidt rank; one exactly for product states.

    Raises
    ------
    StateError
        If the two sides are empty, overlap or do not cover the register.
    """
    left, right = list(cut[0]), list(cut[1])
    if not left or not right or set(left) & set(right) or sorted(left + right) != sorted(state.labels):
        raise StateError(
            f'Invalid partition {[label_name(x) for x in left]} | {[label_name(x) for x in right]} '
            f'of {state.label_names()}',
        )
    return int(np.sum(schmidt_coefficients(state, left) > RANK_TOLERANCE))


def trace_distance(p: DensityMatrix, q: DensityMatrix) -> float:
    """Return ``½ Σ |eig(p - q)|``.

    Returns
    -------
    float
        Distance in ``[0, 1]``.
    """
    if p.matrix.shape != q.matrix.shape:
        raise StateError(f'Dimension mismatch: {p.num_qubits} vs {q.num_qubits} qubits')
    eigenvalues = np.linalg.eigvalsh(p.matrix - q.matrix)
    return float(min(1.0, 0.5 * np.sum(np.abs(eigenvalues))))


def fidelity(target: PureState, rho: DensityMatrix | PureState) -> float:
    """Return ``<ψ|ρ|ψ>`` (or ``|<ψ|φ>|²`` for a pure ``rho``).

    Returns
    -------
    float
        Fidelity in ``[0, 1]``.
    """
    if isinstance(rho, PureState):
        rho = DensityMatrix.from_state(rho)
    if rho.num_qubits != target.num_qubits:
        raise StateError(f'Dimension mismatch: {rho.num_qubits} vs {target.num_qubits} qubits')
    value = np.vdot(target.amplitudes, rho.matrix @ target.amplitudes).real
    return float(min(1.0, max(0.0, value)))
