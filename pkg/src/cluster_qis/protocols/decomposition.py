"""Bell-times-qubit factorisation of Alice's four-party measurement vectors."""

import itertools
import logging
from dataclasses import dataclass
from functools import reduce

import numpy as np

from cluster_qis.channels import bell_basis, four_party_basis, pm_basis
from cluster_qis.errors import PreconditionError
from cluster_qis.qcore import NORM_TOLERANCE
from cluster_qis.utils.logger_module import log_operation

logger = logging.getLogger(__name__)

# names used in the factorised expansion, in the order they are assigned
BELL_SYMBOLS = ('ψ+', 'ψ-', 'φ+', 'φ-')
BELL_NAMES = ('Φ+', 'Φ-', 'Ψ+', 'Ψ-')


@dataclass(frozen=True)
class DecompositionResult:
    """Outcome of the sign-convention search for one four-party vector."""

    row: int
    satisfied: bool
    assignment: dict[str, str]
    signs: tuple[int, ...]
    overlap: float
    norm_before: float
    plain_convention_found: bool
    searched: int


def _expansion(bell: dict[str, np.ndarray]) -> np.ndarray:
    """Evaluate ``(ψ+|+> + ψ-|->)|0> + (φ-|-> + φ+|+>)|1>`` on (a, a', 1, 5)."""
    plus, minus = pm_basis().vectors[:2]
    zero, one = np.eye(2)
    return (
        reduce(np.kron, (bell['ψ+'], plus, zero))
        + reduce(np.kron, (bell['ψ-'], minus, zero))
        + reduce(np.kron, (bell['φ-'], minus, one))
        + reduce(np.kron, (bell['φ+'], plus, one))
    )


@log_operation('factorised decomposition search')
def verify_factorized_decomposition(row: int = 0, *, tolerance: float = NORM_TOLERANCE) -> DecompositionResult:
    """Search Bell labellings under which the expansion reproduces a measurement vector.

    Every assignment of the four Bell vectors to the symbols ψ±, φ± is tried
    with every choice of overall signs, in ``itertools`` order. The expansion
    is normalised before it is compared with the ``row``-th vector of the
    four-party basis.

    Parameters
    ----------
    row : int
        Index of the four-party vector, 0 to 15.
    tolerance : float
        Maximum entrywise deviation accepted.

    Returns
    -------
    DecompositionResult
        First satisfying assignment, or the best overlap found when none works.
    """
    basis = four_party_basis()
    if not 0 <= row < len(basis):
        raise PreconditionError(f'Row must lie in 0..{len(basis) - 1}, got {row}')
    target = basis.vectors[row]
    bell_vectors = bell_basis().vectors

    best: tuple[float, dict[str, str], tuple[int, ...]] = (-1.0, {}, ())
    hit: tuple[dict[str, str], tuple[int, ...], float, float] | None = None
    plain_found = False
    searched = 0
    for order, signs in itertools.product(itertools.permutations(range(4)), itertools.product((1, -1), repeat=4)):
        searched += 1
        bell = {
            symbol: sign * bell_vectors[index] for symbol, index, sign in zip(BELL_SYMBOLS, order, signs, strict=True)
        }
        expansion = _expansion(bell)
        norm = float(np.linalg.norm(expansion))
        overlap = float(abs(np.vdot(target, expansion / norm)))
        assignment = {symbol: BELL_NAMES[index] for symbol, index in zip(BELL_SYMBOLS, order, strict=True)}
        if overlap > best[0]:
            best = (overlap, assignment, signs)
        if np.max(np.abs(expansion / norm - target)) > tolerance:
            continue
        if all(sign > 0 for sign in signs):
            plain_found = True
        if hit is None:
            hit = (assignment, signs, overlap, norm)

    if hit is None:
        logger.info('No Bell labelling reproduces four-party vector %d (best overlap %.6g)', row, best[0])
        return DecompositionResult(row, False, best[1], best[2], best[0], float('nan'), plain_found, searched)

    assignment, signs, overlap, norm = hit
    logger.info('Vector %d factorises with %s and signs %s', row, assignment, signs)
    return DecompositionResult(row, True, assignment, signs, overlap, norm, plain_found, searched)
