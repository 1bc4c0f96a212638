"""Declarative descriptions of the splitting protocols and their alternative measurement routes."""

import logging
from dataclasses import dataclass

import numpy as np

from cluster_qis.channels import make_basis, make_channel
from cluster_qis.errors import PreconditionError, UnknownIdentifierError
from cluster_qis.protocols.parties import Ownership, Party
from cluster_qis.qcore import (
    NORM_TOLERANCE,
    SECRET_QUBIT,
    SECRET_QUBIT_PRIME,
    MeasurementBasis,
    PureState,
    QubitLabel,
    from_amplitudes,
    relabel,
    tensor,
)

logger = logging.getLogger(__name__)

ALICE, BOB, CHARLIE = Party.ALICE, Party.BOB, Party.CHARLIE
PROTOCOL_IDS = ('hbb-ghz', 'c4-single', 'c4-entangled', 'c5-single', 'c5-arbitrary')
# same channels and receivers, Alice splits her joint measurement
VARIANT_IDS = ('c4-single-split', 'c4-entangled-split')


@dataclass(frozen=True)
class ProtocolSpec:
    """Everything the engine needs to run one protocol.

    The register is the secret qubits followed by the channel qubits in
    subscript order. Alice measures first, an optional fixed joint
    conversion acts on the Bob and Charlie qubits, then Bob measures and
    Charlie corrects.
    """

    protocol_id: str
    channel: str
    secret_labels: tuple[QubitLabel, ...]
    channel_labels: tuple[QubitLabel, ...]
    alice_basis: str
    alice_targets: tuple[QubitLabel, ...]
    bob_basis: str
    bob_targets: tuple[QubitLabel, ...]
    charlie_qubits: tuple[QubitLabel, ...]
    owners: tuple[tuple[QubitLabel, Party], ...]
    conversion_targets: tuple[QubitLabel, ...] = ()
    # computational basis indices a secret may occupy; empty means all
    secret_support: tuple[int, ...] = ()

    @property
    def ownership(self) -> Ownership:
        """Qubit ownership over the whole register."""
        return Ownership(self.owners)

    @property
    def secret_dimension(self) -> int:
        """Dimension of the secret space."""
        return 2 ** len(self.secret_labels)

    @property
    def support(self) -> tuple[int, ...]:
        """Computational basis indices spanning the accepted secrets."""
        return self.secret_support or tuple(range(self.secret_dimension))

    @property
    def register_labels(self) -> tuple[QubitLabel, ...]:
        """Register order: secret qubits, then channel qubits."""
        return self.secret_labels + self.channel_labels

    def alice_measurement(self) -> MeasurementBasis:
        """Return Alice's completed basis bound to her targets.

        Returns
        -------
        MeasurementBasis
            Basis on :attr:`alice_targets`.
        """
        return make_basis(self.alice_basis).on(self.alice_targets)

    def bob_measurement(self) -> MeasurementBasis:
        """Return Bob's completed basis bound to his targets.

        Returns
        -------
        MeasurementBasis
            Basis on :attr:`bob_targets`.
        """
        return make_basis(self.bob_basis).on(self.bob_targets)

    def check_secret(self, secret: PureState) -> PureState:
        """Validate a secret and move it onto the secret labels.

        Returns
        -------
        PureState
            Secret carrying :attr:`secret_labels`.

        Raises
        ------
        PreconditionError
            If the secret has the wrong number of qubits or weight outside
            :attr:`support`.
        """
        if secret.num_qubits != len(self.secret_labels):
            raise PreconditionError(
                f'{self.protocol_id} splits a {len(self.secret_labels)}-qubit secret, got {secret.num_qubits} qubits',
            )
        outside = [index for index in range(self.secret_dimension) if index not in self.support]
        leak = float(np.max(np.abs(secret.amplitudes[outside]))) if outside else 0.0
        if leak > NORM_TOLERANCE:
            labels = ', '.join(f'|{index:0{secret.num_qubits}b}>' for index in outside)
            raise PreconditionError(
                f'{self.protocol_id} only splits secrets of the form α|00> + β|11>; '
                f'found amplitude {leak:.3g} on {labels}',
            )
        return relabel(secret, self.secret_labels)

    def random_secret(self, rng: np.random.Generator) -> PureState:
        """Draw a secret uniformly from the supported subspace.

        Returns
        -------
        PureState
            Normalised secret on qubits ``1..k``.
        """
        draw = rng.standard_normal(len(self.support)) + 1j * rng.standard_normal(len(self.support))
        amplitudes = np.zeros(self.secret_dimension, dtype=np.complex128)
        amplitudes[list(self.support)] = draw
        return from_amplitudes(amplitudes, normalize=True)

    def build_register(self, secret: PureState) -> PureState:
        """Return ``secret ⊗ channel`` in register order.

        Returns
        -------
        PureState
            Initial state of the protocol.
        """
        channel = relabel(make_channel(self.channel), self.channel_labels)
        return tensor(self.check_secret(secret), channel)


def _owners(**groups: tuple[QubitLabel, ...]) -> tuple[tuple[QubitLabel, Party], ...]:
    parties = {'alice': ALICE, 'bob': BOB, 'charlie': CHARLIE}
    return tuple(sorted((label, parties[name]) for name, labels in groups.items() for label in labels))


def hbb_spec(channel_sign: int = 1) -> ProtocolSpec:
    """Return the GHZ protocol over ``(|000> ± |111>)/√2``.

    Returns
    -------
    ProtocolSpec
        Alice Bell-measures (a, 1), Bob measures 2 in the ± basis, Charlie holds 3.
    """
    if channel_sign not in (1, -1):
        raise PreconditionError(f'GHZ channel sign must be +1 or -1, got {channel_sign}')
    return ProtocolSpec(
        protocol_id='hbb-ghz',
        channel='ghz3' if channel_sign > 0 else 'ghz3-',
        secret_labels=(SECRET_QUBIT,),
        channel_labels=(1, 2, 3),
        alice_basis='bell',
        alice_targets=(SECRET_QUBIT, 1),
        bob_basis='pm',
        bob_targets=(2,),
        charlie_qubits=(3,),
        owners=_owners(alice=(SECRET_QUBIT, 1), bob=(2,), charlie=(3,)),
    )


PROTOCOL_SPECS: dict[str, ProtocolSpec] = {
    'hbb-ghz': hbb_spec(),
    'c4-single': ProtocolSpec(
        protocol_id='c4-single',
        channel='c4',
        secret_labels=(SECRET_QUBIT,),
        channel_labels=(1, 2, 3, 4),
        alice_basis='bell',
        alice_targets=(SECRET_QUBIT, 1),
        bob_basis='bob-c4',
        bob_targets=(2, 3),
        charlie_qubits=(4,),
        owners=_owners(alice=(SECRET_QUBIT, 1), bob=(2, 3), charlie=(4,)),
    ),
    'c4-entangled': ProtocolSpec(
        protocol_id='c4-entangled',
        channel='c4',
        secret_labels=(SECRET_QUBIT, SECRET_QUBIT_PRIME),
        channel_labels=(1, 2, 3, 4),
        alice_basis='ghz3-basis',
        alice_targets=(SECRET_QUBIT, SECRET_QUBIT_PRIME, 1),
        bob_basis='pm',
        bob_targets=(4,),
        charlie_qubits=(2, 3),
        owners=_owners(alice=(SECRET_QUBIT, SECRET_QUBIT_PRIME, 1), bob=(4,), charlie=(2, 3)),
        conversion_targets=(2, 3, 4),
        secret_support=(0, 3),
    ),
    'c5-single': ProtocolSpec(
        protocol_id='c5-single',
        channel='c5',
        secret_labels=(SECRET_QUBIT,),
        channel_labels=(1, 2, 3, 4, 5),
        alice_basis='ghz3-basis:c5',
        alice_targets=(SECRET_QUBIT, 1, 2),
        bob_basis='bob-c5',
        bob_targets=(3, 4),
        charlie_qubits=(5,),
        owners=_owners(alice=(SECRET_QUBIT, 1, 2), bob=(3, 4), charlie=(5,)),
    ),
    'c5-arbitrary': ProtocolSpec(
        protocol_id='c5-arbitrary',
        channel='c5',
        secret_labels=(SECRET_QUBIT, SECRET_QUBIT_PRIME),
        channel_labels=(1, 2, 3, 4, 5),
        alice_basis='table5',
        alice_targets=(SECRET_QUBIT, SECRET_QUBIT_PRIME, 1, 5),
        bob_basis='pm',
        bob_targets=(2,),
        charlie_qubits=(3, 4),
        owners=_owners(alice=(SECRET_QUBIT, SECRET_QUBIT_PRIME, 1, 5), bob=(2,), charlie=(3, 4)),
    ),
    'c4-single-split': ProtocolSpec(
        protocol_id='c4-single-split',
        channel='c4',
        secret_labels=(SECRET_QUBIT,),
        channel_labels=(1, 2, 3, 4),
        alice_basis='cz-pm',
        alice_targets=(SECRET_QUBIT, 1),
        bob_basis='bob-c4',
        bob_targets=(2, 3),
        charlie_qubits=(4,),
        owners=_owners(alice=(SECRET_QUBIT, 1), bob=(2, 3), charlie=(4,)),
    ),
    'c4-entangled-split': ProtocolSpec(
        protocol_id='c4-entangled-split',
        channel='c4',
        secret_labels=(SECRET_QUBIT, SECRET_QUBIT_PRIME),
        channel_labels=(1, 2, 3, 4),
        alice_basis='bell-pm',
        alice_targets=(SECRET_QUBIT, 1, SECRET_QUBIT_PRIME),
        bob_basis='pm',
        bob_targets=(4,),
        charlie_qubits=(2, 3),
        owners=_owners(alice=(SECRET_QUBIT, SECRET_QUBIT_PRIME, 1), bob=(4,), charlie=(2, 3)),
        conversion_targets=(2, 3, 4),
        secret_support=(0, 3),
    ),
}


def get_protocol_spec(protocol_id: str, *, channel_sign: int = 1) -> ProtocolSpec:
    """Resolve a protocol identifier.

    Returns
    -------
    ProtocolSpec
        Registered spec; ``channel_sign`` only affects ``hbb-ghz``.

    Raises
    ------
    UnknownIdentifierError
        If the identifier is not registered.
    """
    if protocol_id == 'hbb-ghz':
        return hbb_spec(channel_sign)
    try:
        return PROTOCOL_SPECS[protocol_id]
    except KeyError:
        logger.error('Unknown protocol: %s.', protocol_id)
        raise UnknownIdentifierError(f'Unknown protocol {protocol_id!r}; expected one of {list(PROTOCOL_SPECS)}') from None
