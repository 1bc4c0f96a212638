"""Measurement bases used by the splitting protocols."""

import itertools
import logging
from collections.abc import Sequence

import numpy as np

from cluster_qis.errors import UnknownIdentifierError
from cluster_qis.qcore import MeasurementBasis, complete_basis

logger = logging.getLogger(__name__)

# groups of four labels and the sign rows shared by the four-party basis
FOUR_PARTY_GROUPS = (
    ('0000', '1001', '0111', '1110'),
    ('0001', '1000', '0110', '1111'),
    ('0011', '1010', '0100', '1101'),
    ('0010', '1011', '0101', '1100'),
)
FOUR_PARTY_SIGNS = ((1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1))


def _vector(terms: Sequence[tuple[str, float]]) -> np.ndarray:
    """Return the normalised vector ``Σ sign |bits>``.

    Returns
    -------
    np.ndarray
        Unit vector.
    """
    dimension = 2 ** len(terms[0][0])
    vector = np.zeros(dimension, dtype=np.complex128)
    for bits, sign in terms:
        vector[int(bits, 2)] += sign
    return vector / np.linalg.norm(vector)


def _pair_name(first: str, second: str, sign: int) -> str:
    return f'(|{first}>{"+" if sign > 0 else "-"}|{second}>)/√2'


def _pair_basis(pairs: Sequence[tuple[str, str]], targets: Sequence[int]) -> MeasurementBasis:
    """Return the basis ``(|p> ± |q>)/√2`` for each ``(p, q)`` in order, then complete it.

    Returns
    -------
    MeasurementBasis
        Completed basis.
    """
    vectors, names = [], []
    for first, second in pairs:
        for sign in (1, -1):
            vectors.append(_vector(((first, 1), (second, sign))))
            names.append(_pair_name(first, second, sign))
    return complete_basis(MeasurementBasis(tuple(targets), tuple(vectors), tuple(names)))


def computational_basis(num_qubits: int = 1) -> MeasurementBasis:
    """Return ``{|0...0>, ..., |1...1>}``.

    Returns
    -------
    MeasurementBasis
        Computational basis on qubits ``1..n``.
    """
    dimension = 2**num_qubits
    names = tuple(f'|{index:0{num_qubits}b}>' for index in range(dimension))
    return MeasurementBasis(tuple(range(1, num_qubits + 1)), tuple(np.eye(dimension)), names)


def bell_basis() -> MeasurementBasis:
    """Return the Bell basis ``(|00>±|11>)/√2, (|01>±|10>)/√2`` in that order.

    Returns
    -------
    MeasurementBasis
        Two-qubit basis on qubits 1, 2.
    """
    return _pair_basis((('00', '11'), ('01', '10')), (1, 2))


def ghz3_basis(partner: str = '001') -> MeasurementBasis:
    """Return ``(|000>±|111>)/√2`` and ``(|p>±|p̄>)/√2`` completed to eight vectors.

    Parameters
    ----------
    partner : str
        The three-bit label ``p`` of the second listed GHZ pair; ``p̄`` is its
        bitwise complement. The C4 two-qubit protocol lists ``001`` and the C5
        single-qubit protocol lists ``011``.

    Returns
    -------
    MeasurementBasis
        Basis on qubits 1, 2, 3 with four listed and four completed vectors.
    """
    complement = ''.join('1' if bit == '0' else '0' for bit in partner)
    return _pair_basis((('000', '111'), (partner, complement)), (1, 2, 3))


def pm_basis() -> MeasurementBasis:
    """Return ``(|0>±|1>)/√2``.

    Returns
    -------
    MeasurementBasis
        Single-qubit basis on qubit 1.
    """
    return _pair_basis((('0', '1'),), (1,))


def bob_c4_partial_basis() -> MeasurementBasis:
    """Return ``{|00>, |11>}`` completed with ``|01>`` and ``|10>``.

    Returns
    -------
    MeasurementBasis
        Two-qubit basis on qubits 1, 2; only the first two vectors are listed.
    """
    listed = MeasurementBasis((1, 2), (_vector((('00', 1),)), _vector((('11', 1),))), ('|00>', '|11>'))
    return complete_basis(listed)


def bob_c5_basis() -> MeasurementBasis:
    """Return ``(|00>±|10>)/√2, (|01>±|11>)/√2``, a product of X and Z measurements.

    Returns
    -------
    MeasurementBasis
        Complete two-qubit basis on qubits 1, 2.
    """
    return _pair_basis((('00', '10'), ('01', '11')), (1, 2))


def four_party_basis() -> MeasurementBasis:
    """Return the sixteen four-qubit vectors Alice measures in the C5 two-qubit protocol.

    Each group of four labels carries the four Hadamard sign rows, with
    coefficient ½.

    Returns
    -------
    MeasurementBasis
        Complete basis on qubits 1..4.
    """
    vectors, names = [], []
    for group in FOUR_PARTY_GROUPS:
        for signs in FOUR_PARTY_SIGNS:
            vectors.append(_vector(tuple(zip(group, signs, strict=True))))
            terms = ''.join(
                f'{"+" if sign > 0 else "-"}|{bits}>' for bits, sign in zip(group, signs, strict=True)
            )
            names.append(f'½({terms.removeprefix("+")})')
    return MeasurementBasis((1, 2, 3, 4), tuple(vectors), tuple(names))


def cz_pm_basis() -> MeasurementBasis:
    """Return ``CZ(|±> ⊗ |±>)``, two single-qubit ± measurements after a CZ.

    Returns
    -------
    MeasurementBasis
        Complete two-qubit basis on qubits 1, 2, ordered ``++, +-, -+, --``.
    """
    signs = {'+': np.array([1, 1]) / np.sqrt(2), '-': np.array([1, -1]) / np.sqrt(2)}
    vectors, names = [], []
    for first, second in itertools.product(signs, repeat=2):
        vector = np.kron(signs[first], signs[second]).astype(np.complex128)
        vector[0b11] *= -1
        vectors.append(vector)
        names.append(f'CZ|{first}{second}>')
    return MeasurementBasis((1, 2), tuple(vectors), tuple(names))


def bell_pm_basis() -> MeasurementBasis:
    """Return a Bell measurement on qubits 1, 2 followed by a ± measurement of qubit 3.

    Returns
    -------
    MeasurementBasis
        Complete product basis on qubits 1, 2, 3 in Bell-major order.
    """
    bell, pm = bell_basis(), pm_basis()
    vectors = tuple(np.kron(first, second) for first in bell.vectors for second in pm.vectors)
    names = tuple(f'{first}⊗{second}' for first in bell.names for second in pm.names)
    return MeasurementBasis((1, 2, 3), vectors, names)


BASES = {
    'bell': bell_basis,
    'ghz3-basis': ghz3_basis,
    'ghz3-basis:c5': lambda: ghz3_basis('011'),
    'pm': pm_basis,
    'computational': computational_basis,
    'bob-c4': bob_c4_partial_basis,
    'bob-c5': bob_c5_basis,
    'table5': four_party_basis,
    'cz-pm': cz_pm_basis,
    'bell-pm': bell_pm_basis,
}


def make_basis(name: str) -> MeasurementBasis:
    """Resolve a stable basis identifier.

    Returns
    -------
    MeasurementBasis
        Completed basis.

    Raises
    ------
    UnknownIdentifierError
        If the name is not registered.
    """
    try:
        return BASES[name]()
    except KeyError:
        logger.error('Unknown basis: %s.', name)
        raise UnknownIdentifierError(f'Unknown basis {name!r}; expected one of {sorted(BASES)}') from None
