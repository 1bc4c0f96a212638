"""What Bob or Charlie alone can learn about the secret from their own qubits."""

import logging

from cluster_qis.errors import PreconditionError
from cluster_qis.protocols.engine import walk_branches
from cluster_qis.protocols.parties import Party
from cluster_qis.protocols.specs import ProtocolSpec, get_protocol_spec
from cluster_qis.qcore import (
    DensityMatrix,
    PureState,
    enumerate_measurement,
    reduced_density,
    trace_distance,
)

logger = logging.getLogger(__name__)

STAGES = ('alice', 'bob')


def party_state(spec: ProtocolSpec, party: Party, secret: PureState, *, stage: str = 'alice') -> DensityMatrix:
    """Return the party's unconditional state after the given stage.

    The state is the probability-weighted mixture, over every outcome measured
    so far, of the reduced state on the party's unmeasured qubits.

    Returns
    -------
    DensityMatrix
        Mixture on the party's remaining qubits.

    Raises
    ------
    PreconditionError
        For an unknown stage or when the party has no qubits left.
    """
    if stage not in STAGES:
        raise PreconditionError(f'Stage must be one of {STAGES}, got {stage!r}')
    register = spec.build_register(secret)
    if stage == 'alice':
        outcomes = [
            (branch.probability, branch.post_state)
            for branch in enumerate_measurement(register, spec.alice_measurement())
            if not branch.is_null and branch.post_state is not None
        ]
    else:
        walks, _ = walk_branches(spec, register)
        outcomes = [(walk.probability, walk.remaining) for walk in walks]

    remaining = set(outcomes[0][1].labels)
    held = [label for label in spec.ownership.qubits_of(party) if label in remaining]
    if not held:
        raise PreconditionError(f'{party} holds no unmeasured qubits after the {stage} stage of {spec.protocol_id}')
    return DensityMatrix.mixture([(probability, reduced_density(state, held)) for probability, state in outcomes])


def party_blindness(
    protocol: str,
    party: Party,
    secret_1: PureState,
    secret_2: PureState,
    *,
    stage: str = 'alice',
) -> float:
    """Return how well ``party`` could tell two secrets apart before the final messages.

    Returns
    -------
    float
        Trace distance between the party's unconditional states.

    Raises
    ------
    PreconditionError
        If ``party`` is not Bob or Charlie, or holds nothing at ``stage``.
    """
    if party not in (Party.BOB, Party.CHARLIE):
        raise PreconditionError(f'Blindness is checked for Bob or Charlie, got {party}')
    spec = get_protocol_spec(protocol)
    distance = trace_distance(
        party_state(spec, party, secret_1, stage=stage),
        party_state(spec, party, secret_2, stage=stage),
    )
    logger.debug('%s blindness of %s after %s: %.3g', protocol, party, stage, distance)
    return distance
