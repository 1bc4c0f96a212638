"""Tests for the printed outcome tables and their verification."""

import dataclasses
import sys
from pathlib import Path

import numpy as np
import pytest

try:
    from cluster_qis.errors import UnknownIdentifierError
    from cluster_qis.protocols import REFERENCE_TABLES, TABLE_ALIASES, get_reference_table, verify_reference_tables, verify_rows
    from cluster_qis.protocols.reference_tables import expected_state, format_terms
except ModuleNotFoundError:
    SRC_PATH = Path(__file__).resolve().parents[1] / 'src'
    if str(SRC_PATH) not in sys.path:
        sys.path.insert(0, str(SRC_PATH))
    from cluster_qis.errors import UnknownIdentifierError
    from cluster_qis.protocols import REFERENCE_TABLES, TABLE_ALIASES, get_reference_table, verify_reference_tables, verify_rows
    from cluster_qis.protocols.reference_tables import expected_state, format_terms


@pytest.mark.parametrize('table_id', sorted(REFERENCE_TABLES))
def test_every_row_matches_the_engine(table_id: str) -> None:
    """Each registered row agrees with the computed post-measurement state."""
    verdicts = verify_reference_tables(table_id)
    assert len(verdicts) == len(REFERENCE_TABLES[table_id].rows)
    assert all(verdict.match for verdict in verdicts)


def test_entangled_table_only_matches_in_reading_order() -> None:
    """Taken literally in its printed qubit order, the entangled table disagrees on every row."""
    verdicts = verify_reference_tables('c4-entangled')
    assert not any(verdict.printed_match for verdict in verdicts)


def test_c5_single_erratum_is_flagged() -> None:
    """Row 1 of the five-qubit single-qubit table only matches after its correction."""
    verdicts = verify_reference_tables('c5-single')
    row = verdicts[1]
    assert row.erratum
    assert row.match
    assert not row.printed_match
    assert all(verdict.printed_match for position, verdict in enumerate(verdicts) if position != 1)


def test_all_tables() -> None:
    """'all' verifies every registered table in order."""
    verdicts = verify_reference_tables('all')
    assert [verdict.table for verdict in verdicts][0] == next(iter(REFERENCE_TABLES))
    assert len(verdicts) == sum(len(table.rows) for table in REFERENCE_TABLES.values())


def test_four_party_table_has_sixteen_rows() -> None:
    """The two-qubit five-qubit-channel table lists every Alice outcome."""
    assert len(get_reference_table('c5-arbitrary').rows) == 16


def test_corrupted_row_is_caught() -> None:
    """Flipping the sign of one secret component breaks the match."""
    table = get_reference_table('c4-single')
    row = table.rows[0]
    flipped = {ket: -sign for ket, sign in row.terms['1'].items()}
    corrupted = dataclasses.replace(row, terms={**row.terms, '1': flipped})
    (verdict,) = verify_rows(table, [corrupted])
    assert not verdict.match
    assert verdict.max_deviation > 0.01


@pytest.mark.parametrize(('number', 'table_id'), sorted(TABLE_ALIASES.items()))
def test_printed_numbers_resolve_to_tables(number: str, table_id: str) -> None:
    """Roman table numbers name the registered tables."""
    assert get_reference_table(number) is REFERENCE_TABLES[table_id]
    assert [verdict.table for verdict in verify_reference_tables(number)] == [table_id] * len(REFERENCE_TABLES[table_id].rows)


def test_unknown_table() -> None:
    """Unregistered table ids raise UnknownIdentifierError."""
    with pytest.raises(UnknownIdentifierError, match='Unknown table'):
        verify_reference_tables('c6-single')

    with pytest.raises(UnknownIdentifierError, match='VI'):
        get_reference_table('VI')


def test_format_terms() -> None:
    """Terms print with the secret symbols and signs."""
    text = format_terms({'0': {'000': 1, '110': 1}, '1': {'001': 1, '111': -1}})
    assert text == 'α(|000> + |110>) + β(|001> - |111>)'
    assert format_terms({'0': {'1': -1}, '1': {'0': 1}}) == '-α|1> + β|0>'


def test_expected_state_evaluates_terms() -> None:
    """Each ket receives the sign times its secret amplitude."""
    vector = expected_state({'0': {'00': 1}, '1': {'11': -1}}, np.array([0.6, 0.8]), (1, 2))
    assert np.allclose(vector, [0.6, 0, 0, -0.8])


def test_measured_names_follow_the_basis() -> None:
    """Verdicts name the measurement vector of the row's outcome."""
    verdicts = verify_reference_tables('c4-single')
    assert verdicts[0].measured.startswith('(|00>+|11>)')
