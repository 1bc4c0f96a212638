"""Channel states, measurement bases and local equivalence checks."""

from cluster_qis.channels.bases import (
    BASES,
    bell_basis,
    bell_pm_basis,
    bob_c4_partial_basis,
    bob_c5_basis,
    computational_basis,
    cz_pm_basis,
    four_party_basis,
    ghz3_basis,
    make_basis,
    pm_basis,
)
from cluster_qis.channels.equivalence import (
    MAX_SEARCH_QUBITS,
    clifford_group,
    local_equivalence_search,
    relabeled_equivalence_search,
    schmidt_profile,
)
from cluster_qis.channels.states import (
    ASYMMETRIC_W,
    PRINTED_ASYMMETRIC_W,
    ChannelSpec,
    make_asymmetric_w,
    make_c4,
    make_c5,
    make_channel,
    make_cluster_generic,
    make_ghz,
    make_ghz3,
    state_from_terms,
)

__all__ = [
    'ASYMMETRIC_W',
    'BASES',
    'MAX_SEARCH_QUBITS',
    'PRINTED_ASYMMETRIC_W',
    'ChannelSpec',
    'bell_basis',
    'bell_pm_basis',
    'bob_c4_partial_basis',
    'bob_c5_basis',
    'clifford_group',
    'computational_basis',
    'cz_pm_basis',
    'four_party_basis',
    'ghz3_basis',
    'local_equivalence_search',
    'make_asymmetric_w',
    'make_basis',
    'make_c4',
    'make_c5',
    'make_channel',
    'make_cluster_generic',
    'make_ghz',
    'make_ghz3',
    'pm_basis',
    'relabeled_equivalence_search',
    'schmidt_profile',
    'state_from_terms',
]
