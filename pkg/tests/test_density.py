"""Tests for density matrices, Schmidt ranks and distance measures."""

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

try:
    from cluster_qis.errors import StateError
    from cluster_qis.qcore import (
        DensityMatrix,
        basis_state,
        fidelity,
        from_amplitudes,
        random_state,
        reduce_density,
        reduced_density,
        schmidt_rank,
        trace_distance,
    )
except ModuleNotFoundError:
    SRC_PATH = Path(__file__).resolve().parents[1] / 'src'
    if str(SRC_PATH) not in sys.path:
        sys.path.insert(0, str(SRC_PATH))
    from cluster_qis.errors import StateError
    from cluster_qis.qcore import (
        DensityMatrix,
        basis_state,
        fidelity,
        from_amplitudes,
        random_state,
        reduce_density,
        reduced_density,
        schmidt_rank,
        trace_distance,
    )

BELL = from_amplitudes([1, 0, 0, 1], normalize=True)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_bell_marginal_is_maximally_mixed() -> None:
    """Either half of a Bell pair is I/2."""
    assert np.allclose(reduced_density(BELL, [1]).matrix, np.eye(2) / 2)
    assert np.allclose(reduce_density(DensityMatrix.from_state(BELL), [2]).matrix, np.eye(2) / 2)


def test_reduced_density_follows_keep_order() -> None:
    """The kept labels define the register order of the marginal."""
    state = basis_state('011')
    rho = reduced_density(state, [3, 1])
    assert rho.labels == (3, 1)
    assert rho.matrix[2, 2] == pytest.approx(1.0)


def test_reduced_density_validates_keep_set() -> None:
    """Empty or repeated keep sets raise StateError."""
    with pytest.raises(StateError):
        reduced_density(BELL, [])
    with pytest.raises(StateError):
        reduced_density(BELL, [1, 1])


def test_schmidt_rank_separates_product_from_entangled() -> None:
    """Product states have rank one, a Bell pair rank two."""
    assert schmidt_rank(BELL, ([1], [2])) == 2
    assert schmidt_rank(basis_state('01'), ([1], [2])) == 1


def test_schmidt_rank_needs_a_partition() -> None:
    """Both sides must be nonempty and cover the register."""
    with pytest.raises(StateError, match='Invalid partition'):
        schmidt_rank(basis_state('000'), ([1], [2]))


def test_orthogonal_states_are_perfectly_distinguishable() -> None:
    """|0> and |1> sit at trace distance one."""
    zero = DensityMatrix.from_state(basis_state('0'))
    one = DensityMatrix.from_state(basis_state('1'))
    assert trace_distance(zero, one) == pytest.approx(1.0)
    assert trace_distance(zero, DensityMatrix.mixture([(0.5, zero), (0.5, one)])) == pytest.approx(0.5)


def test_fidelity_against_pure_and_mixed() -> None:
    """Fidelity is |<ψ|φ>|² for pure states and <ψ|ρ|ψ> for mixtures."""
    plus = from_amplitudes([1, 1], normalize=True)
    assert fidelity(plus, basis_state('0')) == pytest.approx(0.5)
    assert fidelity(plus, reduced_density(BELL, [1])) == pytest.approx(0.5)


def test_invalid_density_matrices_are_rejected() -> None:
    """Trace, Hermiticity and positivity are enforced."""
    with pytest.raises(StateError, match='trace'):
        DensityMatrix((1,), np.eye(2))
    with pytest.raises(StateError, match='Hermitian'):
        DensityMatrix((1,), np.array([[0.5, 0.5], [0, 0.5]]))
    with pytest.raises(StateError, match='positive'):
        DensityMatrix((1,), np.diag([1.5, -0.5]))


@settings(max_examples=50, deadline=None)
@given(seeds, seeds)
def test_trace_distance_is_a_bounded_symmetric_measure(seed_1: int, seed_2: int) -> None:
    """Trace distance lies in [0, 1], is symmetric and vanishes on equal inputs."""
    rho = reduced_density(random_state(3, np.random.default_rng(seed_1)), [1, 2])
    sigma = reduced_density(random_state(3, np.random.default_rng(seed_2)), [1, 2])
    distance = trace_distance(rho, sigma)
    assert 0.0 <= distance <= 1.0
    assert distance == pytest.approx(trace_distance(sigma, rho), abs=1e-12)
    assert trace_distance(rho, rho) == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_partial_traces_compose(seed: int) -> None:
    """Tracing out in two steps equals tracing out at once."""
    state = random_state(4, np.random.default_rng(seed))
    direct = reduced_density(state, [2, 4])
    stepwise = reduce_density(reduced_density(state, [1, 2, 4]), [2, 4])
    assert np.allclose(direct.matrix, stepwise.matrix, atol=1e-12)
    assert np.trace(direct.matrix).real == pytest.approx(1.0)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_pure_fidelity_is_squared_overlap(seed: int) -> None:
    """For pure arguments fidelity equals the squared overlap."""
    rng = np.random.default_rng(seed)
    psi, phi = random_state(2, rng), random_state(2, rng)
    expected = abs(np.vdot(psi.amplitudes, phi.amplitudes)) ** 2
    assert fidelity(psi, phi) == pytest.approx(expected, abs=1e-12)
