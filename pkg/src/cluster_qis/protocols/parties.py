"""Parties, qubit ownership and classical messages."""

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import StrEnum

from cluster_qis.errors import PreconditionError
from cluster_qis.qcore import QubitLabel, label_name


class Party(StrEnum):
    """Participants of a splitting protocol; Eve only appears in attack scenarios."""

    ALICE = 'Alice'
    BOB = 'Bob'
    CHARLIE = 'Charlie'
    EVE = 'Eve'


@dataclass(frozen=True)
class Ownership:
    """Which party holds each qubit of the register."""

    owners: tuple[tuple[QubitLabel, Party], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[QubitLabel, Party]) -> 'Ownership':
        """Build an ownership from ``{label: party}``.

        Returns
        -------
        Ownership
            Ownership with entries sorted by label.
        """
        return cls(tuple(sorted(mapping.items())))

    def owner(self, label: QubitLabel) -> Party:
        """Return the party holding ``label``.

        Returns
        -------
        Party
            Owner of the qubit.

        Raises
        ------
        PreconditionError
            If nobody holds the qubit.
        """
        for qubit, party in self.owners:
            if qubit == label:
                return party
        raise PreconditionError(f'Qubit {label_name(label)} has no owner')

    def qubits_of(self, party: Party) -> tuple[QubitLabel, ...]:
        """Return the labels held by ``party`` in label order.

        Returns
        -------
        tuple[int, ...]
            Held qubits.
        """
        return tuple(qubit for qubit, holder in self.owners if holder == party)

    def covers(self, labels: Iterable[QubitLabel]) -> bool:
        """Whether every label in ``labels`` has exactly one owner.

        Returns
        -------
        bool
            ``True`` when the ownership is total over ``labels``.
        """
        held = [qubit for qubit, _ in self.owners]
        return sorted(held) == sorted(set(held)) and set(labels) <= set(held)

    def as_dict(self) -> dict[str, str]:
        """Return ``{label name: party}``.

        Returns
        -------
        dict[str, str]
            Printable ownership.
        """
        return {label_name(qubit): str(party) for qubit, party in self.owners}


def message_bits(outcome_count: int) -> int:
    """Return ``ceil(log2(k))`` bits for ``k`` possible outcomes, at least one.

    Returns
    -------
    int
        Message width.
    """
    if outcome_count < 1:
        raise PreconditionError(f'A measurement needs at least one possible outcome, got {outcome_count}')
    return max(1, math.ceil(math.log2(outcome_count)))


@dataclass(frozen=True)
class ClassicalMessage:
    """Measurement outcome sent over a classical channel."""

    sender: Party
    receiver: Party
    bits: int
    payload: int

    def __post_init__(self) -> None:
        """Validate the message width.

        Raises
        ------
        PreconditionError
            If the message has fewer than one bit or a payload that does not fit.
        """
        if self.bits < 1:
            raise PreconditionError(f'Messages carry at least one bit, got {self.bits}')
        if not 0 <= self.payload < 2**self.bits:
            raise PreconditionError(f'Payload {self.payload} does not fit in {self.bits} bits')


def message_totals(per_branch: Iterable[Iterable[ClassicalMessage]]) -> dict[tuple[Party, Party], int]:
    """Return the widest total each directed pair sends in any one branch.

    Returns
    -------
    dict[tuple[Party, Party], int]
        Bits per ``(sender, receiver)`` in first-seen order.
    """
    totals: dict[tuple[Party, Party], int] = {}
    for messages in per_branch:
        branch: dict[tuple[Party, Party], int] = {}
        for message in messages:
            key = (message.sender, message.receiver)
            branch[key] = branch.get(key, 0) + message.bits
        for key, bits in branch.items():
            totals[key] = max(totals.get(key, 0), bits)
    return totals
