"""Local Clifford equivalence of small pure states."""

import itertools
import logging
from functools import cache

import numpy as np

from cluster_qis.errors import SearchBudgetError, StateError
from cluster_qis.qcore import (
    HADAMARD,
    IDENTITY,
    NORM_TOLERANCE,
    PHASE,
    PureState,
    QubitLabel,
    UnitaryOp,
    label_name,
    schmidt_rank,
)
from cluster_qis.utils.logger_module import log_operation

logger = logging.getLogger(__name__)

MAX_SEARCH_QUBITS = 6
CLIFFORD_ORDER = 24
_CHUNK_ROWS = 512


def _phase_key(matrix: np.ndarray) -> bytes:
    """Return a hashable key identifying ``matrix`` up to global phase.

    Returns
    -------
    bytes
        Rounded matrix with the phase of its first nonzero entry removed.
    """
    flat = matrix.reshape(-1)
    pivot = flat[np.argmax(np.abs(flat) > 1e-8)]
    canonical = np.round(matrix * (abs(pivot) / pivot), 8)
    # adding 0.0 folds -0.0 into 0.0
    return np.concatenate([canonical.real + 0.0, canonical.imag + 0.0]).tobytes()


@cache
def clifford_group() -> tuple[UnitaryOp, ...]:
    """Return the 24 single-qubit Cliffords modulo global phase.

    The group is closed breadth-first from the identity under right
    multiplication by H and S, so the identity comes first.

    Returns
    -------
    tuple[UnitaryOp, ...]
        Group elements in discovery order.
    """
    elements = [IDENTITY.matrix]
    seen = {_phase_key(IDENTITY.matrix)}
    frontier = [IDENTITY.matrix]
    while frontier:
        next_frontier = []
        for matrix in frontier:
            for generator in (HADAMARD.matrix, PHASE.matrix):
                product = matrix @ generator
                key = _phase_key(product)
                if key not in seen:
                    seen.add(key)
                    elements.append(product)
                    next_frontier.append(product)
        frontier = next_frontier

    if len(elements) != CLIFFORD_ORDER:
        raise RuntimeError(f'Clifford closure produced {len(elements)} elements')
    return tuple(UnitaryOp(matrix, f'C{index}' if index else 'I') for index, matrix in enumerate(elements))


def _product_stack(num_qubits: int) -> np.ndarray:
    """Return every ``num_qubits``-fold tensor product of Cliffords.

    Products are ordered like ``itertools.product(range(24), repeat=n)``.

    Returns
    -------
    np.ndarray
        Array of shape ``(24**n, 2**n, 2**n)``.
    """
    group = np.stack([element.matrix for element in clifford_group()])
    stack = np.ones((1, 1, 1), dtype=np.complex128)
    for _ in range(num_qubits):
        count, dim = stack.shape[0], stack.shape[1]
        stack = np.einsum('aij,ckl->acikjl', stack, group).reshape(count * CLIFFORD_ORDER, 2 * dim, 2 * dim)
    return stack


@log_operation('local Clifford equivalence search')
def local_equivalence_search(
    a: PureState,
    b: PureState,
    tolerance: float = NORM_TOLERANCE,
) -> list[UnitaryOp] | None:
    """Look for single-qubit Cliffords ``C_k`` with ``(⊗ C_k)|a> = phase · |b>``.

    Qubits are matched by register position. The n-fold product group is
    split into a left and a right half; the overlaps ``<b|L ⊗ R|a>`` are then a
    matrix product between the two precomputed halves, evaluated in chunks.

    Returns
    -------
    list[UnitaryOp] | None
        One Clifford per qubit (the identity list when ``a == b``), or ``None``
        when no local Clifford maps ``a`` onto ``b``.

    Raises
    ------
    StateError
        If the qubit counts differ.
    SearchBudgetError
        If the states have more than six qubits.
    """
    n = a.num_qubits
    if b.num_qubits != n:
        raise StateError(f'Dimension mismatch: {n} vs {b.num_qubits} qubits')
    if n > MAX_SEARCH_QUBITS:
        raise SearchBudgetError(f'Local equivalence search supports at most {MAX_SEARCH_QUBITS} qubits, got {n}')

    n_left = (n + 1) // 2
    n_right = n - n_left
    dim_left, dim_right = 2**n_left, 2**n_right
    source = a.amplitudes.reshape(dim_left, dim_right)
    target = b.amplitudes.reshape(dim_left, dim_right)

    left = _product_stack(n_left)
    right = _product_stack(n_right).reshape(-1, dim_right * dim_right)

    # folded[l, j, m] = Σ_i conj(target[i, j]) (L_l source)[i, m]
    folded = np.einsum('ij,lim->ljm', target.conj(), left @ source).reshape(left.shape[0], -1)
    group = clifford_group()
    for start in range(0, folded.shape[0], _CHUNK_ROWS):
        overlaps = np.abs(folded[start : start + _CHUNK_ROWS] @ right.T)
        hits = np.argwhere(overlaps >= 1.0 - tolerance)
        if hits.size:
            row, column = hits[0]
            left_word = np.unravel_index(start + row, (CLIFFORD_ORDER,) * n_left) if n_left else ()
            right_word = np.unravel_index(column, (CLIFFORD_ORDER,) * n_right) if n_right else ()
            word = [int(index) for index in (*left_word, *right_word)]
            logger.debug('Found local Clifford word %s', word)
            return [group[index] for index in word]

    logger.debug('No local Clifford relates the two %d-qubit states', n)
    return None


def schmidt_profile(state: PureState) -> dict[tuple[QubitLabel, ...], int]:
    """Return the Schmidt rank of every cut ``side | rest`` with ``|side| <= n/2``.

    Returns
    -------
    dict[tuple[int, ...], int]
        Rank per side, keyed by the labels on that side.
    """
    profile = {}
    for size in range(1, state.num_qubits // 2 + 1):
        for side in itertools.combinations(state.labels, size):
            rest = [label for label in state.labels if label not in side]
            profile[side] = schmidt_rank(state, (side, rest))
    return profile


@log_operation('relabeled equivalence search')
def relabeled_equivalence_search(
    a: PureState,
    b: PureState,
    tolerance: float = NORM_TOLERANCE,
) -> tuple[tuple[QubitLabel, ...], list[UnitaryOp]] | None:
    """Search qubit permutations combined with local Cliffords relating ``a`` to ``b``.

    Permutations whose Schmidt-rank profile differs from that of ``a`` are
    skipped, since local unitaries cannot change a Schmidt rank.

    Returns
    -------
    tuple[tuple[int, ...], list[UnitaryOp]] | None
        ``(matched, cliffords)`` where qubit ``a.labels[k]`` corresponds to
        ``matched[k]`` of ``b`` and ``cliffords[k]`` acts on it; ``None`` when
        nothing is found.
    """
    if a.num_qubits != b.num_qubits:
        raise StateError(f'Dimension mismatch: {a.num_qubits} vs {b.num_qubits} qubits')

    target_profile = schmidt_profile(a)
    skipped = 0
    for order in itertools.permutations(range(b.num_qubits)):
        permuted = PureState(a.labels, np.transpose(b.as_tensor(), order).reshape(-1))
        if schmidt_profile(permuted) != target_profile:
            skipped += 1
            continue
        cliffords = local_equivalence_search(a, permuted, tolerance)
        if cliffords is not None:
            matched = tuple(b.labels[position] for position in order)
            logger.info(
                'Matched qubits %s to %s after skipping %d permutations',
                a.label_names(),
                [label_name(label) for label in matched],
                skipped,
            )
            return matched, cliffords

    logger.info('No relabeling relates the two states (%d permutations skipped by profile)', skipped)
    return None
