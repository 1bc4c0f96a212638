"""Published outcome tables and their verification against the engine."""

import itertools
import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from cluster_qis.channels import make_basis
from cluster_qis.errors import UnknownIdentifierError
from cluster_qis.protocols.engine import ProtocolReport, run_spec
from cluster_qis.protocols.specs import get_protocol_spec
from cluster_qis.qcore import NORM_TOLERANCE, PureState, QubitLabel, from_amplitudes, phase_deviation, reorder
from cluster_qis.utils.logger_module import log_operation

logger = logging.getLogger(__name__)

# secret component -> {ket: sign}, kets written in the table's qubit order
Terms = Mapping[str, Mapping[str, int]]

SYMBOLS = {'0': 'α', '1': 'β', '00': 'α', '10': 'μ', '01': 'γ', '11': 'β'}
TABLE_SECRETS = 3
TABLE_SEED = 7


@dataclass(frozen=True)
class ReferenceRow:
    """One printed row: Alice's (or Bob's) outcome and the state left behind."""

    outcome: int
    terms: Terms
    erratum: str = ''
    corrected_terms: Terms = field(default_factory=dict)

    @property
    def reading(self) -> Terms:
        """Terms the engine must reproduce (the corrected ones for an erratum)."""
        return self.corrected_terms if self.erratum else self.terms


@dataclass(frozen=True)
class ReferenceTable:
    """Printed outcome table of one protocol stage.

    ``printed_order`` is the qubit order written under the kets;
    ``reading_order`` is the order in which they match the computation.
    """

    table_id: str
    protocol: str
    stage: str
    reading_order: tuple[QubitLabel, ...]
    printed_order: tuple[QubitLabel, ...]
    rows: tuple[ReferenceRow, ...]
    alice_outcome: int = 0


@dataclass(frozen=True)
class RowVerification:
    """Comparison of one printed row with the computed state."""

    table: str
    row: int
    measured: str
    expected: str
    match: bool
    max_deviation: float
    printed_match: bool
    printed_deviation: float
    erratum: str = ''


def _row(outcome: int, terms: Terms, **kwargs: object) -> ReferenceRow:
    return ReferenceRow(outcome, terms, **kwargs)  # type: ignore[arg-type]


def _four_party_rows() -> tuple[ReferenceRow, ...]:
    # kets carried by (α, μ, γ, β) in each group of four measurement vectors
    groups = (
        ('000', '011', '110', '101'),
        ('011', '000', '101', '110'),
        ('110', '101', '000', '011'),
        ('101', '110', '011', '000'),
    )
    signs = ((1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1))
    rows = []
    for outcome, (kets, row_signs) in enumerate(itertools.product(groups, signs)):
        components = ('00', '10', '01', '11')
        rows.append(_row(outcome, {comp: {ket: sign} for comp, ket, sign in zip(components, kets, row_signs, strict=True)}))
    return tuple(rows)


GHZ_LIKE = {'000': 1, '110': 1}
GHZ_PAIR = {'001': 1, '111': -1}


def _negate(terms: Mapping[str, int]) -> dict[str, int]:
    return {ket: -sign for ket, sign in terms.items()}


def _bell_rows(zero: str, one: str) -> tuple[ReferenceRow, ...]:
    return (
        _row(0, {zero: GHZ_LIKE, one: GHZ_PAIR}),
        _row(1, {zero: GHZ_LIKE, one: _negate(GHZ_PAIR)}),
        _row(2, {zero: GHZ_PAIR, one: GHZ_LIKE}),
        _row(3, {zero: GHZ_PAIR, one: _negate(GHZ_LIKE)}),
    )


REFERENCE_TABLES: dict[str, ReferenceTable] = {
    'c4-single': ReferenceTable('c4-single', 'c4-single', 'alice', (2, 3, 4), (2, 3, 4), _bell_rows('0', '1')),
    'c4-entangled': ReferenceTable('c4-entangled', 'c4-entangled', 'alice', (2, 3, 4), (4, 2, 3), _bell_rows('00', '11')),
    'c5-single': ReferenceTable(
        'c5-single',
        'c5-single',
        'alice',
        (3, 4, 5),
        (3, 4, 5),
        (
            _row(0, {'0': {'000': 1, '111': 1}, '1': {'101': 1, '010': 1}}),
            _row(
                1,
                {'0': {'000': 1, '111': 1}, '1': {'101': -1, '010': 1}},
                erratum='printed -β(|101> - |010>); the projection gives -β(|101> + |010>)',
                corrected_terms={'0': {'000': 1, '111': 1}, '1': {'101': -1, '010': -1}},
            ),
            _row(2, {'0': {'101': 1, '010': 1}, '1': {'000': 1, '111': 1}}),
            _row(3, {'0': {'101': 1, '010': 1}, '1': {'000': -1, '111': -1}}),
        ),
    ),
    'c5-single-bob': ReferenceTable(
        'c5-single-bob',
        'c5-single',
        'bob',
        (5,),
        (5,),
        (
            _row(0, {'0': {'0': 1}, '1': {'1': 1}}),
            _row(1, {'0': {'0': 1}, '1': {'1': -1}}),
            _row(2, {'0': {'1': 1}, '1': {'0': 1}}),
            _row(3, {'0': {'1': -1}, '1': {'0': 1}}),
        ),
        alice_outcome=0,
    ),
    'c5-arbitrary': ReferenceTable('c5-arbitrary', 'c5-arbitrary', 'alice', (2, 3, 4), (2, 3, 4), _four_party_rows()),
}


# printed table numbers
TABLE_ALIASES = {'I': 'c4-single', 'II': 'c4-entangled', 'III': 'c5-single', 'IV': 'c5-single-bob', 'V': 'c5-arbitrary'}


def get_reference_table(table_id: str) -> ReferenceTable:
    """Resolve a table identifier or its printed number (``I`` to ``V``).

    Returns
    -------
    ReferenceTable
        Registered table.

    Raises
    ------
    UnknownIdentifierError
        If the identifier is unknown.
    """
    try:
        return REFERENCE_TABLES[TABLE_ALIASES.get(table_id, table_id)]
    except KeyError:
        logger.error('Unknown table: %s.', table_id)
        known = [*REFERENCE_TABLES, *TABLE_ALIASES]
        raise UnknownIdentifierError(f'Unknown table {table_id!r}; expected one of {known} or all') from None


def format_terms(terms: Terms) -> str:
    """Return terms as ``α(|000> + |110>) + β(|001> - |111>)``.

    Returns
    -------
    str
        Printable expansion.
    """
    parts = []
    for component, kets in terms.items():
        symbol = SYMBOLS[component]
        if len(kets) == 1:
            ((ket, sign),) = kets.items()
            parts.append(f'{"+" if sign > 0 else "-"} {symbol}|{ket}>')
            continue
        inner = _signed_join(f'{"+" if sign > 0 else "-"} |{ket}>' for ket, sign in kets.items())
        parts.append(f'+ {symbol}({inner})')
    return _signed_join(parts)


def _signed_join(terms: Iterable[str]) -> str:
    text = ' '.join(terms)
    return '-' + text[2:] if text.startswith('- ') else text.removeprefix('+ ')


def expected_state(terms: Terms, secret: np.ndarray, labels: Sequence[QubitLabel]) -> np.ndarray:
    """Evaluate ``terms`` for a secret amplitude vector.

    Returns
    -------
    np.ndarray
        Unnormalised amplitudes on ``labels``.
    """
    width = len(next(iter(terms)))
    vector = np.zeros(2 ** len(labels), dtype=np.complex128)
    for component, kets in terms.items():
        if len(component) != width:
            raise ValueError(f'Mixed secret components in {terms}')
        for ket, sign in kets.items():
            vector[int(ket, 2)] += sign * secret[int(component, 2)]
    return vector


def _deviation(computed: PureState | None, expected: np.ndarray, labels: tuple[QubitLabel, ...]) -> float:
    norm = float(np.linalg.norm(expected))
    if computed is None or norm == 0:
        return float('inf')
    return phase_deviation(PureState(labels, expected / norm), computed)


def _computed_state(report: ProtocolReport, table: ReferenceTable, row: ReferenceRow) -> PureState | None:
    for branch in report.branches:
        if table.stage == 'alice' and branch.alice_outcome == row.outcome:
            return branch.after_alice
        if table.stage == 'bob' and (branch.alice_outcome, branch.bob_outcome) == (table.alice_outcome, row.outcome):
            return branch.charlie_pre_correction
    return None


def _printed_vector(terms: Terms, secret: np.ndarray, table: ReferenceTable) -> np.ndarray:
    vector = expected_state(terms, secret, table.printed_order)
    if table.printed_order == table.reading_order or not np.any(vector):
        return vector
    literal = from_amplitudes(vector, table.printed_order, normalize=True)
    return reorder(literal, table.reading_order).amplitudes


def verify_rows(
    table: ReferenceTable,
    rows: Sequence[ReferenceRow] | None = None,
    *,
    tolerance: float = NORM_TOLERANCE,
    secrets: int = TABLE_SECRETS,
    seed: int = TABLE_SEED,
) -> list[RowVerification]:
    """Compare rows of ``table`` with the engine on seeded random secrets.

    Returns
    -------
    list[RowVerification]
        One verdict per row; the deviation is the worst over the secrets.
    """
    spec = get_protocol_spec(table.protocol)
    rows = table.rows if rows is None else rows
    basis = make_basis(spec.alice_basis if table.stage == 'alice' else spec.bob_basis)
    rng = np.random.default_rng(seed)

    deviations = np.zeros((len(rows), 2))
    for _ in range(secrets):
        secret = spec.random_secret(rng)
        amplitudes = secret.amplitudes
        report = run_spec(spec, secret)
        for position, row in enumerate(rows):
            computed = _computed_state(report, table, row)
            reading = _deviation(computed, expected_state(row.reading, amplitudes, table.reading_order), table.reading_order)
            printed = _deviation(computed, _printed_vector(row.terms, amplitudes, table), table.reading_order)
            deviations[position] = np.maximum(deviations[position], (reading, printed))

    return [
        RowVerification(
            table=table.table_id,
            row=position,
            measured=basis.names[row.outcome],
            expected=format_terms(row.terms),
            match=bool(deviations[position, 0] <= tolerance),
            max_deviation=float(deviations[position, 0]),
            printed_match=bool(deviations[position, 1] <= tolerance),
            printed_deviation=float(deviations[position, 1]),
            erratum=row.erratum,
        )
        for position, row in enumerate(rows)
    ]


@log_operation('reference table verification')
def verify_reference_tables(table_id: str = 'all', *, tolerance: float = NORM_TOLERANCE) -> list[RowVerification]:
    """Verify one registered table, or all of them for ``'all'``.

    Returns
    -------
    list[RowVerification]
        Verdicts in table then row order.
    """
    table_ids = list(REFERENCE_TABLES) if table_id == 'all' else [get_reference_table(table_id).table_id]
    results = []
    for name in table_ids:
        verdicts = verify_rows(REFERENCE_TABLES[name], tolerance=tolerance)
        for verdict in verdicts:
            if verdict.match and not verdict.printed_match:
                logger.info('%s row %d matches only under the corrected reading', name, verdict.row)
            elif not verdict.match:
                logger.warning('%s row %d deviates by %.3g', name, verdict.row, verdict.max_deviation)
        results.extend(verdicts)
    return results
