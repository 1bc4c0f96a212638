"""Classical communication totals per protocol."""

import logging

from cluster_qis.protocols.engine import ProtocolReport
from cluster_qis.protocols.parties import Party, message_totals

logger = logging.getLogger(__name__)

Channel = tuple[Party, Party]
ALICE_TO_CHARLIE: Channel = (Party.ALICE, Party.CHARLIE)
BOB_TO_CHARLIE: Channel = (Party.BOB, Party.CHARLIE)

# (Alice->Charlie, Bob->Charlie) bits each protocol is announced with
EXPECTED_CBITS: dict[str, tuple[int, int]] = {
    'hbb-ghz': (2, 1),
    'c4-single': (2, 1),
    'c4-entangled': (2, 1),
    'c5-single': (2, 2),
    'c5-arbitrary': (4, 1),
    'c4-single-split': (2, 1),
    'c4-entangled-split': (3, 1),
}


def cbit_account(report: ProtocolReport) -> dict[Channel, int]:
    """Return the classical bits sent along each directed pair of parties.

    A pair's total is the largest number of bits any branch sends on it, so
    it is the fixed-length message size the protocol needs.

    Returns
    -------
    dict[tuple[Party, Party], int]
        Bits per ``(sender, receiver)``.
    """
    return message_totals(branch.messages for branch in report.branches)


def matches_expected(report: ProtocolReport) -> bool:
    """Whether the totals equal the announced counts of ``report.protocol``.

    Returns
    -------
    bool
        ``True`` for a match; protocols without announced counts never match.
    """
    expected = EXPECTED_CBITS.get(report.protocol)
    totals = cbit_account(report)
    found = (totals.get(ALICE_TO_CHARLIE, 0), totals.get(BOB_TO_CHARLIE, 0))
    if expected != found:
        logger.warning('%s sends %s cbits, expected %s', report.protocol, found, expected)
        return False
    return True
