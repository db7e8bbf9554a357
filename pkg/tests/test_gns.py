import numpy as np
import pytest
import scipy.linalg as sl
from hypothesis import given, settings
from hypothesis import strategies as st

from qigeo import (
    CommutantOperator,
    GnsSpace,
    check_cyclic_separating,
    commutant_apply,
    omega_vector,
    pi_apply,
    prime_map,
    represent_state,
)
from qigeo.gns import vector_state

from conftest import cmat, diag_state, herm, state
from oracles import Kron


def test_omega_examples():
    np.testing.assert_allclose(omega_vector(GnsSpace(diag_state(0.5, 0.5))).coords, np.eye(2) / np.sqrt(2))
    np.testing.assert_allclose(
        omega_vector(GnsSpace(diag_state(0.75, 0.25))).coords.diagonal(), [0.5, np.sqrt(3) / 2]
    )


def test_omega_norm_and_state(rng):
    for seed in range(10):
        space = GnsSpace(state(seed, 4))
        omega = omega_vector(space)
        assert omega.norm() ** 2 == pytest.approx(1.0, abs=1e-14)
        A = herm(rng, 4)
        assert pi_apply(space, A, omega).inner(omega) == pytest.approx(
            np.trace(space.reference.matrix @ A), abs=1e-11
        )


def test_coordinates_match_kronecker_model(rng):
    rho = state(3, 3)
    space, kr = GnsSpace(rho), Kron(rho.matrix)
    # same eigenvectors up to phase; fix the oracle to the library's basis
    kr.U = space.basis.eigenvectors
    kr.omega = sum(np.sqrt(kr.p[k]) * np.kron(kr.U[:, k], kr.U[:, k]) for k in range(3))
    np.testing.assert_allclose(kr.vector_from_coords(omega_vector(space).coords), kr.omega, atol=1e-14)
    A, B = cmat(rng, 3), herm(rng, 3)
    v = space.vector(cmat(rng, 3))
    x = kr.vector_from_coords(v.coords)
    np.testing.assert_allclose(kr.vector_from_coords(pi_apply(space, A, v).coords), kr.pi(A) @ x, atol=1e-13)
    K = CommutantOperator(space, B)
    C = kr.C_from_B(B)
    np.testing.assert_allclose(kr.vector_from_coords(K.apply(v).coords), kr.commutant(C) @ x, atol=1e-13)
    assert v.inner(K.apply(v)) == pytest.approx(kr.inner(x, kr.commutant(C) @ x), abs=1e-12)


def test_pi_identity_and_gns_property(rng):
    space = GnsSpace(state(5, 3))
    omega = omega_vector(space)
    v = space.vector(cmat(rng, 3))
    np.testing.assert_allclose(pi_apply(space, np.eye(3), v).coords, v.coords, atol=1e-14)
    A = cmat(rng, 3)
    lhs = pi_apply(space, A, omega).norm() ** 2
    assert lhs == pytest.approx(np.trace(space.reference.matrix @ A.conj().T @ A).real, rel=1e-12)


def test_pi_is_homomorphism(rng):
    space = GnsSpace(state(6, 4))
    A, B = cmat(rng, 4), cmat(rng, 4)
    v = space.vector(cmat(rng, 4))
    lhs = pi_apply(space, A @ B, v)
    rhs = pi_apply(space, A, pi_apply(space, B, v))
    assert (lhs - rhs).norm() < 1e-12 * np.linalg.norm(A) * np.linalg.norm(B) * v.norm()


def test_commutant_identity_and_commutation(rng):
    space = GnsSpace(state(7, 3))
    v = space.vector(cmat(rng, 3))
    np.testing.assert_array_equal(commutant_apply(CommutantOperator(space, np.eye(3)), v).coords, v.coords)
    for _ in range(100):
        A, B = cmat(rng, 3), herm(rng, 3)
        K = CommutantOperator(space, B)
        w = space.vector(cmat(rng, 3))
        diff = pi_apply(space, A, K.apply(w)) - K.apply(pi_apply(space, A, w))
        assert diff.norm() < 1e-11 * np.linalg.norm(A, 2) * np.linalg.norm(B, 2) * w.norm()


def test_commutant_expectation(rng):
    space = GnsSpace(state(8, 4))
    K = CommutantOperator(space, herm(rng, 4))
    omega = omega_vector(space)
    assert K.apply(omega).inner(omega) == pytest.approx(np.trace(np.diag(space.p) @ K.B.T), abs=1e-13)
    assert K.expectation() == pytest.approx(K.apply(omega).inner(omega), abs=1e-13)
    assert K.is_self_adjoint()
    assert not CommutantOperator(space, cmat(rng, 4)).is_self_adjoint()


def test_commutant_arithmetic_requires_same_space(rng):
    s1, s2 = GnsSpace(state(1, 2)), GnsSpace(state(2, 2))
    with pytest.raises(ValueError):
        CommutantOperator(s1, np.eye(2)) + CommutantOperator(s2, np.eye(2))


def test_prime_map_examples(rng):
    space = GnsSpace(diag_state(0.7, 0.3))
    S = np.array([[1.0, 2.0], [2.0, -1.0]])
    # a real symmetric matrix stays real in this (real) eigenbasis
    np.testing.assert_allclose(prime_map(space, S), space.to_eigenbasis(S))
    gen = GnsSpace(state(3, 3))
    A = cmat(rng, 3)
    Ap = prime_map(gen, A)
    np.testing.assert_allclose(np.conj(Ap), gen.to_eigenbasis(A), atol=1e-14)
    np.testing.assert_allclose(prime_map(gen, gen.from_eigenbasis(np.conj(Ap))), Ap, atol=1e-13)
    # ‖A'ψ_n‖ = ‖Aψ_n‖
    At = gen.to_eigenbasis(A)
    np.testing.assert_allclose(np.linalg.norm(Ap, axis=0), np.linalg.norm(At, axis=0), rtol=1e-13)


def test_prime_map_pauli_y_in_eigenbasis():
    space = GnsSpace(diag_state(0.25, 0.75))  # eigenbasis is the standard basis
    Y = np.array([[0, -1j], [1j, 0]])
    np.testing.assert_allclose(prime_map(space, Y), np.array([[0, 1j], [-1j, 0]]))


def test_represent_state_examples():
    rho = state(9, 3)
    space = GnsSpace(rho)
    np.testing.assert_allclose(represent_state(space, rho).B, np.eye(3), atol=1e-13)
    d_rho, d_sig = diag_state(0.2, 0.3, 0.5), diag_state(0.5, 0.25, 0.25)
    X = represent_state(GnsSpace(d_rho), d_sig)
    np.testing.assert_allclose(np.diag(X.B).real, [0.5 / 0.2, 0.25 / 0.3, 0.25 / 0.5], rtol=1e-14)


@pytest.mark.parametrize("dim", [2, 3, 4, 5])
def test_represent_state_reconstruction_kronecker(rng, dim):
    rho, sigma = state(dim, dim), state(dim + 40, dim)
    space, kr = GnsSpace(rho), Kron(rho.matrix)
    kr.U = space.basis.eigenvectors
    kr.omega = kr.vector_from_coords(np.diag(np.sqrt(kr.p)))
    X = represent_state(space, sigma)
    C = kr.C_from_B(X.B)
    assert np.linalg.eigvalsh(C)[0] > 0
    root = kr.commutant(sl.sqrtm(C))
    v = root @ kr.omega
    for _ in range(50):
        A = herm(rng, dim)
        assert abs(np.trace(sigma.matrix @ A) - kr.inner(kr.pi(A) @ v, v)) < 1e-10
    # vector state of X^{1/2}Ω read back through the library
    w, U = np.linalg.eigh(X.right_factor)
    root_vec = space.vector(np.diag(space.sqrt_p) @ ((U * np.sqrt(w)) @ U.conj().T))
    np.testing.assert_allclose(vector_state(space, root_vec), sigma.matrix, atol=1e-12)


def test_cyclic_separating_examples():
    r = check_cyclic_separating(GnsSpace(diag_state(0.5, 0.5)))
    assert r.rank == 4 and r.ok
    r = check_cyclic_separating(GnsSpace(diag_state(0.75, 0.25)))
    assert r.rank == 4
    assert r.min_singular_value == pytest.approx(0.5, abs=1e-14)
    assert check_cyclic_separating(GnsSpace(state(1, 5))).rank == 25


def test_near_singular_state_rejected_before_gns():
    with pytest.raises(ValueError, match="not strictly positive"):
        GnsSpace(np.diag([1 - 1e-12, 1e-12]))


def test_commutant_span_fills_space(rng):
    space = GnsSpace(state(12, 3))
    omega = omega_vector(space)
    cols = []
    for i in range(3):
        for j in range(3):
            E = np.zeros((3, 3), dtype=complex)
            E[i, j] = 1
            cols.append(CommutantOperator(space, E).apply(omega).coords.ravel())
    assert np.linalg.matrix_rank(np.array(cols)) == 9


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**40), st.integers(2, 5))
def test_state_readout_roundtrip(seed, dim):
    rho, sigma = state(seed, dim), state(seed + 1, dim)
    space = GnsSpace(rho)
    X = represent_state(space, sigma)
    # σ̃ = ρ̃^{1/2} Bᵀ ρ̃^{1/2} inverts the closed form
    back = space.from_eigenbasis(np.diag(space.sqrt_p) @ X.right_factor @ np.diag(space.sqrt_p))
    assert np.linalg.norm(back - sigma.matrix) < 1e-10
