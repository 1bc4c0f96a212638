"""Dense linear algebra over multi-qubit pure states."""

from cluster_qis.qcore.density import (
    DensityMatrix,
    fidelity,
    reduce_density,
    reduced_density,
    schmidt_coefficients,
    schmidt_rank,
    trace_distance,
)
from cluster_qis.qcore.gates import (
    CNOT,
    HADAMARD,
    I_PAULI_Y,
    IDENTITY,
    PAULI_X,
    PAULI_Z,
    PHASE,
    UnitaryOp,
    apply_unitary,
    complete_isometry,
    controlled,
    is_signed_permutation,
    kron_all,
    orthonormal_completion,
    pauli_label,
)
from cluster_qis.qcore.measurement import (
    Branch,
    MeasurementBasis,
    complete_basis,
    enumerate_measurement,
    project,
    residual,
)
from cluster_qis.qcore.states import (
    ANCILLA_QUBIT,
    NORM_TOLERANCE,
    RANK_TOLERANCE,
    SECRET_QUBIT,
    SECRET_QUBIT_PRIME,
    ZERO_PROBABILITY,
    PureState,
    QubitLabel,
    basis_state,
    equal_up_to_global_phase,
    from_amplitudes,
    label_name,
    overlap,
    parse_label,
    phase_deviation,
    random_state,
    relabel,
    reorder,
    tensor,
)

__all__ = [
    'ANCILLA_QUBIT',
    'CNOT',
    'HADAMARD',
    'IDENTITY',
    'I_PAULI_Y',
    'NORM_TOLERANCE',
    'PAULI_X',
    'PAULI_Z',
    'PHASE',
    'RANK_TOLERANCE',
    'SECRET_QUBIT',
    'SECRET_QUBIT_PRIME',
    'ZERO_PROBABILITY',
    'Branch',
    'DensityMatrix',
    'MeasurementBasis',
    'PureState',
    'QubitLabel',
    'UnitaryOp',
    'apply_unitary',
    'basis_state',
    'complete_basis',
    'complete_isometry',
    'controlled',
    'enumerate_measurement',
    'equal_up_to_global_phase',
    'fidelity',
    'from_amplitudes',
    'is_signed_permutation',
    'kron_all',
    'label_name',
    'orthonormal_completion',
    'overlap',
    'parse_label',
    'pauli_label',
    'phase_deviation',
    'project',
    'random_state',
    'reduce_density',
    'reduced_density',
    'relabel',
    'reorder',
    'residual',
    'schmidt_coefficients',
    'schmidt_rank',
    'tensor',
    'trace_distance',
]
