"""Quantum information splitting protocols over GHZ and cluster channels."""

from cluster_qis.protocols.accounting import EXPECTED_CBITS, cbit_account, matches_expected
from cluster_qis.protocols.corrections import (
    CorrectionEntry,
    CorrectionTable,
    branch_image,
    correction_table,
    derive_correction,
    derive_joint_conversion,
    pauli_word,
    verify_conversion,
)
from cluster_qis.protocols.decomposition import DecompositionResult, verify_factorized_decomposition
from cluster_qis.protocols.engine import (
    BranchRecord,
    BranchWalk,
    NullOutcome,
    ProtocolReport,
    bob_charlie_frame,
    run_c4_entangled,
    run_c4_single,
    run_c5_arbitrary,
    run_c5_single,
    run_hbb_ghz,
    run_protocol,
    run_spec,
    sample_branches,
    walk_branches,
)
from cluster_qis.protocols.parties import ClassicalMessage, Ownership, Party, message_bits, message_totals
from cluster_qis.protocols.reference_tables import (
    REFERENCE_TABLES,
    TABLE_ALIASES,
    ReferenceRow,
    ReferenceTable,
    RowVerification,
    get_reference_table,
    verify_reference_tables,
    verify_rows,
)
from cluster_qis.protocols.specs import PROTOCOL_IDS, PROTOCOL_SPECS, VARIANT_IDS, ProtocolSpec, get_protocol_spec, hbb_spec

__all__ = [
    'EXPECTED_CBITS',
    'PROTOCOL_IDS',
    'PROTOCOL_SPECS',
    'REFERENCE_TABLES',
    'TABLE_ALIASES',
    'VARIANT_IDS',
    'BranchRecord',
    'BranchWalk',
    'ClassicalMessage',
    'CorrectionEntry',
    'CorrectionTable',
    'DecompositionResult',
    'NullOutcome',
    'Ownership',
    'Party',
    'ProtocolReport',
    'ProtocolSpec',
    'ReferenceRow',
    'ReferenceTable',
    'RowVerification',
    'bob_charlie_frame',
    'branch_image',
    'cbit_account',
    'correction_table',
    'derive_correction',
    'derive_joint_conversion',
    'get_protocol_spec',
    'get_reference_table',
    'hbb_spec',
    'matches_expected',
    'message_bits',
    'message_totals',
    'pauli_word',
    'run_c4_entangled',
    'run_c4_single',
    'run_c5_arbitrary',
    'run_c5_single',
    'run_hbb_ghz',
    'run_protocol',
    'run_spec',
    'sample_branches',
    'verify_conversion',
    'verify_factorized_decomposition',
    'verify_reference_tables',
    'verify_rows',
    'walk_branches',
]
