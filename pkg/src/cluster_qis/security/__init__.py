"""Eavesdropping scenarios and dishonest-party blindness checks."""

from cluster_qis.security.attacks import (
    ATTACK_UNITARIES,
    CLAIMED_SCENARIOS,
    TAPPED_STATE_TOLERANCE,
    AttackBranch,
    AttackReport,
    AttackSpec,
    ClaimedScenario,
    attacked_register,
    claimed_tapped_state,
    eve_information,
    load_attack_unitary,
    report_distance,
    resolve_attack,
    run_attack,
    tapped_state_deviation,
)
from cluster_qis.security.blindness import STAGES, party_blindness, party_state

__all__ = [
    'ATTACK_UNITARIES',
    'CLAIMED_SCENARIOS',
    'STAGES',
    'TAPPED_STATE_TOLERANCE',
    'AttackBranch',
    'AttackReport',
    'AttackSpec',
    'ClaimedScenario',
    'attacked_register',
    'claimed_tapped_state',
    'eve_information',
    'load_attack_unitary',
    'party_blindness',
    'party_state',
    'report_distance',
    'resolve_attack',
    'run_attack',
    'tapped_state_deviation',
]
