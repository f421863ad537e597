import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qconc.errors import InvalidState, NotAState, NotNormalized
from qconc.qstate import (
    AXES,
    PAULI,
    BlochDecomposition,
    DensityOperator,
    LocalUnitary,
    PureState,
    apply_local,
    assemble,
    bell_state,
    decompose,
    haar_unitary2,
    maximally_mixed,
    pauli_pair,
    random_pure,
    random_rank_k,
    rank_of,
    werner_state,
)


class TestDensityOperator:
    def test_accepts_valid_state(self):
        rho = DensityOperator(np.eye(4) / 4.0)
        assert rho.purity() == pytest.approx(0.25)

    def test_rejects_wrong_shape(self):
        with pytest.raises(InvalidState):
            DensityOperator(np.eye(3) / 3.0)

    def test_rejects_non_hermitian(self):
        m = np.eye(4, dtype=complex) / 4.0
        m[0, 1] = 0.2
        with pytest.raises(InvalidState):
            DensityOperator(m)

    def test_rejects_wrong_trace(self):
        with pytest.raises(InvalidState):
            DensityOperator(np.eye(4) / 2.0)

    def test_rejects_negative_eigenvalue(self):
        m = np.diag([0.6, 0.5, 0.0, -0.1]).astype(complex)
        with pytest.raises(InvalidState):
            DensityOperator(m)

    def test_matrix_is_immutable(self):
        rho = maximally_mixed()
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0


class TestPureState:
    def test_norm_enforced(self):
        with pytest.raises(NotNormalized):
            PureState(np.array([1.0, 1.0, 0.0, 0.0]))

    def test_normalized_constructor(self):
        psi = PureState.normalized([1.0, 1.0, 0.0, 0.0])
        assert np.vdot(psi.amplitudes, psi.amplitudes).real == pytest.approx(1.0)

    def test_zero_vector_rejected(self):
        with pytest.raises(NotNormalized):
            PureState.normalized(np.zeros(4))

    def test_density_is_projector(self):
        rho = bell_state("psi-").density()
        assert rho.purity() == pytest.approx(1.0)


def test_pauli_pair_matches_kron():
    for i in ("0",) + AXES:
        for j in ("0",) + AXES:
            np.testing.assert_allclose(pauli_pair(i, j), np.kron(PAULI[i], PAULI[j]))


def test_decompose_assemble_roundtrip_named_states():
    for rho in (maximally_mixed(), werner_state(0.7), bell_state("phi-").density()):
        back = assemble(decompose(rho))
        np.testing.assert_allclose(back.matrix, rho.matrix, atol=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.integers(min_value=1, max_value=4))
def test_decompose_assemble_roundtrip_random(seed, k):
    """The Pauli expansion is exact: assemble(decompose(rho)) == rho."""
    rho = random_rank_k(k, seed)
    back = assemble(decompose(rho))
    assert np.abs(back.matrix - rho.matrix).max() < 1e-13


def test_decompose_rejects_unphysical_matrix():
    with pytest.raises(InvalidState):
        decompose(np.diag([1.2, 0.0, 0.0, -0.2]).astype(complex))


def test_assemble_rejects_unphysical_bloch():
    # correlation matrix far outside the tetrahedron of physical states
    bad = BlochDecomposition(p=np.zeros(3), s=np.zeros(3), pi=2.0 * np.eye(3))
    with pytest.raises(NotAState):
        assemble(bad)


def test_rank_of_exact_ranks():
    for k in (1, 2, 3, 4):
        assert rank_of(random_rank_k(k, seed=k)) == k


def test_rank_of_named_states():
    assert rank_of(bell_state("phi+").density()) == 1
    assert rank_of(maximally_mixed()) == 4
    assert rank_of(werner_state(1.0)) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_haar_unitary_is_unitary(seed):
    u = haar_unitary2(np.random.default_rng(seed))
    np.testing.assert_allclose(u @ u.conj().T, np.eye(2), atol=1e-12)


class TestLocalUnitary:
    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError):
            LocalUnitary(np.ones((2, 2)), np.eye(2))

    def test_matrix_is_kron(self):
        lu = LocalUnitary.random(3)
        np.testing.assert_allclose(lu.matrix(), np.kron(lu.u_a, lu.u_b))

    def test_rotations_are_proper(self):
        ra, rb = LocalUnitary.random(9).rotations()
        for r in (ra, rb):
            np.testing.assert_allclose(r @ r.T, np.eye(3), atol=1e-12)
            assert np.linalg.det(r) == pytest.approx(1.0)

    def test_rotations_transform_bloch_fields(self):
        """decompose(u rho u+) must equal the rotated Bloch fields of rho."""
        lu = LocalUnitary.random(21)
        rho = random_rank_k(3, seed=5)
        ra, rb = lu.rotations()
        before = decompose(rho)
        after = decompose(apply_local(rho, lu))
        np.testing.assert_allclose(after.p, ra @ before.p, atol=1e-12)
        np.testing.assert_allclose(after.s, rb @ before.s, atol=1e-12)
        np.testing.assert_allclose(after.pi, ra @ before.pi @ rb.T, atol=1e-12)


def test_apply_local_preserves_spectrum():
    rho = random_rank_k(4, seed=11)
    rotated = apply_local(rho, LocalUnitary.random(12))
    np.testing.assert_allclose(
        rotated.eigenvalues(), rho.eigenvalues(), atol=1e-12
    )


def test_random_pure_is_deterministic_by_seed():
    a = random_pure(42).amplitudes
    b = random_pure(42).amplitudes
    c = random_pure(43).amplitudes
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_random_rank_k_validates_rank_argument():
    with pytest.raises(ValueError):
        random_rank_k(5, seed=0)


def test_bell_state_unknown_kind():
    with pytest.raises(ValueError):
        bell_state("sigma+")


def test_werner_weight_range():
    with pytest.raises(ValueError):
        werner_state(1.5)


def test_werner_interpolates_purity():
    assert werner_state(0.0).purity() == pytest.approx(0.25)
    assert werner_state(1.0).purity() == pytest.approx(1.0)
