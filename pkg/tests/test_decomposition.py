"""Tests for the Bell-pair factorisation of the four-party measurement vectors."""

import sys
from pathlib import Path

import pytest

try:
    from cluster_qis.errors import PreconditionError
    from cluster_qis.protocols import verify_factorized_decomposition
except ModuleNotFoundError:
    SRC_PATH = Path(__file__).resolve().parents[1] / 'src'
    if str(SRC_PATH) not in sys.path:
        sys.path.insert(0, str(SRC_PATH))
    from cluster_qis.errors import PreconditionError
    from cluster_qis.protocols import verify_factorized_decomposition


def test_first_vector_factorises_with_one_sign_flip() -> None:
    """The first labelling found is the natural one with φ- negated."""
    result = verify_factorized_decomposition(0)
    assert result.satisfied
    assert result.assignment == {'ψ+': 'Φ+', 'ψ-': 'Φ-', 'φ+': 'Ψ+', 'φ-': 'Ψ-'}
    assert result.signs == (1, 1, 1, -1)
    assert result.overlap == pytest.approx(1.0)
    assert result.norm_before == pytest.approx(2.0)


def test_no_all_positive_labelling_exists() -> None:
    """Without a sign flip no assignment reproduces the vector."""
    assert not verify_factorized_decomposition(0).plain_convention_found


def test_search_is_exhaustive() -> None:
    """All 24 assignments times 16 sign patterns are visited."""
    assert verify_factorized_decomposition(0).searched == 24 * 16


@pytest.mark.parametrize('row', [-1, 16])
def test_row_out_of_range(row: int) -> None:
    """Only rows 0 to 15 exist."""
    with pytest.raises(PreconditionError):
        verify_factorized_decomposition(row)
