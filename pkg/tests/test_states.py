import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opalg import (DomainError, State, evaluate, is_product_state, is_pure, make_algebra, mix, product_state,
                   random_product_state, random_pure_state, random_state, reduced_state, tensor_product,
                   vector_state)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
BELL = np.array([1, 0, 0, 1]) / np.sqrt(2)

small_dims = st.lists(st.integers(1, 3), min_size=1, max_size=2)


def bell_pair():
    M2 = make_algebra([2])
    T = tensor_product(M2, M2)
    return T, vector_state(T, 0, BELL)


def test_tensor_block_layout():
    assert tensor_product(make_algebra([1, 1]), make_algebra([2])).product.block_dims == (2, 2)
    assert tensor_product(make_algebra([2]), make_algebra([2])).product.block_dims == (4,)
    T = tensor_product(make_algebra([1, 2]), make_algebra([2, 1]))
    assert T.product.block_dims == (2, 1, 4, 2)
    assert T.pairs == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_kron_matches_dense_kron_on_blocks():
    T = tensor_product(make_algebra([1, 2]), make_algebra([2]))
    x, y = T.left.random_element(seed=1), T.right.random_element(seed=2)
    z = T.kron(x, y)
    for pos, (i, j) in enumerate(T.pairs):
        np.testing.assert_allclose(z.blocks[pos], np.kron(x.blocks[i], y.blocks[j]))


def test_evaluate_examples():
    M2 = make_algebra([2])
    omega = vector_state(M2, 0, [1, 0])
    assert evaluate(omega, M2.identity()) == pytest.approx(1)
    assert evaluate(omega, M2.from_dense(X)) == pytest.approx(0)
    assert evaluate(omega, M2.from_dense(Z)) == pytest.approx(1)


def test_evaluate_rejects_foreign_element():
    omega = random_state(make_algebra([2]), seed=0)
    with pytest.raises(DomainError):
        evaluate(omega, make_algebra([1, 1]).identity())


def test_vector_state_examples():
    omega = vector_state(make_algebra([2]), 0, [1, 0])
    np.testing.assert_allclose(omega.weights, [1])
    np.testing.assert_allclose(omega.densities[0], np.diag([1, 0]))
    T, bell = bell_pair()
    assert np.linalg.matrix_rank(bell.densities[0]) == 1


def test_vector_state_norm_handling():
    M2 = make_algebra([2])
    with pytest.warns(UserWarning):
        omega = vector_state(M2, 0, [1 + 5e-7, 0])
    assert np.trace(omega.densities[0]).real == pytest.approx(1, abs=1e-14)
    with pytest.raises(DomainError):
        vector_state(M2, 0, [2, 0])
    with pytest.raises(DomainError):
        vector_state(M2, 0, [1, 0, 0])


def test_state_validation():
    A = make_algebra([1, 1])
    with pytest.raises(DomainError):
        State(A, np.array([0.7, 0.7]), (np.eye(1), np.eye(1)))
    with pytest.raises(DomainError):
        State(make_algebra([2]), np.array([1.0]), (np.diag([1.5, -0.5]),))
    with pytest.raises(DomainError):
        State(A, np.array([0.5, 0.5]), (np.eye(1), None))


@pytest.mark.parametrize("c1sq", [0.36, 0.5, 0.9])
def test_superposition_reduces_to_mixture(c1sq):
    # psi1, phi1 orthonormal in C^2; psi2, phi2 orthonormal in C^3
    psi1, phi1 = np.array([1, 1j]) / np.sqrt(2), np.array([1, -1j]) / np.sqrt(2)
    psi2, phi2 = np.array([1, 0, 0]), np.array([0, 1, 1]) / np.sqrt(2)
    c1, c2 = np.sqrt(c1sq), np.sqrt(1 - c1sq) * np.exp(0.3j)
    T = tensor_product(make_algebra([2]), make_algebra([3]))
    omega = vector_state(T, 0, c1 * np.kron(psi1, psi2) + c2 * np.kron(phi1, phi2))
    expected = c1sq * np.outer(psi1, psi1.conj()) + (1 - c1sq) * np.outer(phi1, phi1.conj())
    np.testing.assert_allclose(reduced_state(omega, T, "left").densities[0], expected, atol=1e-12)


def test_reduced_state_examples():
    T = tensor_product(make_algebra([2]), make_algebra([2]))
    u, v = np.array([0.6, 0.8j]), np.array([1, 1]) / np.sqrt(2)
    left = reduced_state(vector_state(T, 0, np.kron(u, v)), T, "left")
    np.testing.assert_allclose(left.densities[0], np.outer(u, u.conj()), atol=1e-12)
    _, bell = bell_pair()
    for side in ("left", "right"):
        np.testing.assert_allclose(reduced_state(bell, T, side).densities[0], np.eye(2) / 2, atol=1e-12)


def test_is_pure_examples():
    M2 = make_algebra([2])
    assert is_pure(vector_state(M2, 0, [0.6, 0.8]))
    assert not is_pure(State(M2, np.array([1.0]), (np.eye(2) / 2,)))
    C2 = make_algebra([1, 1])
    assert not is_pure(State(C2, np.array([0.5, 0.5]), (np.eye(1), np.eye(1))))


def test_is_product_state_examples():
    T, bell = bell_pair()
    assert is_product_state(vector_state(T, 0, np.kron([1, 0], [0.6, 0.8])), T)
    assert not is_product_state(bell, T)
    # X (x) X correlation of the Bell vector against zero marginals
    XX = T.kron(T.left.from_dense(X), T.right.from_dense(X))
    assert evaluate(bell, XX).real == pytest.approx(1)
    assert evaluate(bell, T.embed_left(T.left.from_dense(X))).real == pytest.approx(0)


def test_pure_states_on_commutative_factor_are_products():
    T = tensor_product(make_algebra([1, 1]), make_algebra([2]))
    rng = np.random.default_rng(5)
    for _ in range(500):
        assert is_product_state(random_pure_state(T.product, seed=rng), T)


@settings(max_examples=30, deadline=None)
@given(small_dims, small_dims, st.integers(0, 2**31))
def test_pure_product_has_pure_marginals(d1, d2, seed):
    T = tensor_product(make_algebra(d1), make_algebra(d2))
    rng = np.random.default_rng(seed)
    left, right = random_pure_state(T.left, seed=rng), random_pure_state(T.right, seed=rng)
    omega = product_state(T, left, right)
    assert is_pure(omega)
    assert is_product_state(omega, T)
    assert is_pure(reduced_state(omega, T, "left"))
    assert is_pure(reduced_state(omega, T, "right"))


def test_reduction_consistency_on_basis():
    rng = np.random.default_rng(17)
    for _ in range(100):
        d1 = list(rng.integers(1, 4, size=rng.integers(1, 3)))
        d2 = list(rng.integers(1, 4, size=rng.integers(1, 3)))
        T = tensor_product(make_algebra(d1), make_algebra(d2))
        if T.product.ambient_dim > 12:
            continue
        omega = random_state(T.product, seed=rng)
        for side, factor, embed in (("left", T.left, T.embed_left), ("right", T.right, T.embed_right)):
            red = reduced_state(omega, T, side)
            for E in factor.basis_matrices():
                x = factor.from_dense(E)
                assert abs(evaluate(red, x) - evaluate(omega, embed(x))) <= 1e-9


@settings(max_examples=30, deadline=None)
@given(small_dims, st.integers(0, 2**31))
def test_random_states_are_valid(dims, seed):
    A = make_algebra(dims)
    omega = random_state(A, seed=seed)
    assert evaluate(omega, A.identity()) == pytest.approx(1)
    rho = omega.ambient_density()
    assert np.linalg.eigvalsh(rho)[0] >= -1e-12
    assert is_pure(random_pure_state(A, seed=seed))


def test_random_product_state_is_product():
    T = tensor_product(make_algebra([1, 2]), make_algebra([3]))
    for seed in range(20):
        assert is_product_state(random_product_state(T, seed=seed), T)


@pytest.mark.parametrize("sampler", [random_state, random_pure_state])
def test_sampler_mean_on_traceless_element_vanishes(sampler):
    A = make_algebra([3])
    x = A.from_dense(np.diag([1.0, -1.0, 0.0]))
    rng = np.random.default_rng(2024)
    vals = np.array([evaluate(sampler(A, seed=rng), x).real for _ in range(10_000)])
    assert abs(vals.mean()) <= 5 * vals.std() / np.sqrt(vals.size)


def test_mix_is_convex_combination():
    A = make_algebra([1, 2])
    s1, s2 = random_state(A, seed=1), random_state(A, seed=2)
    m = mix([s1, s2], [0.25, 0.75])
    np.testing.assert_allclose(m.ambient_density(), 0.25 * s1.ambient_density() + 0.75 * s2.ambient_density(),
                               atol=1e-14)
