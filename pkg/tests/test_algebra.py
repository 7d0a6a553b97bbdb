import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opalg import (InvalidPresentationError, canonical_form, commutant, conditional_expectation,
                   find_noncommuting_projections, generated_star_algebra, is_commutative, make_algebra, op_norm,
                   subalgebra, wedderburn_decompose)
from opalg.algebra import same_algebra


def haar_unitary(n, seed):
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


def test_make_algebra_dimensions():
    assert make_algebra([1, 1]).dim == 2
    assert is_commutative(make_algebra([1, 1]))
    assert make_algebra([2]).dim == 4
    A = make_algebra([1, 2])
    assert A.dim == 5
    assert A.ambient_dim == 3
    assert A.label == "C+M2"


@pytest.mark.parametrize("dims", [[], [0], [2, -1]])
def test_make_algebra_rejects_bad_blocks(dims):
    with pytest.raises(InvalidPresentationError):
        make_algebra(dims)


def test_op_norm_examples():
    assert op_norm(make_algebra([3]).identity()) == pytest.approx(1.0)
    C2 = make_algebra([1, 1])
    assert op_norm(C2.element([[[3]], [[-4]]])) == pytest.approx(4.0)
    M2 = make_algebra([2])
    assert op_norm(M2.element([[[0, 1], [0, 0]]])) == pytest.approx(1.0)


def test_is_commutative_examples():
    assert is_commutative(make_algebra([1, 1, 1]))
    assert not is_commutative(make_algebra([2]))
    assert not is_commutative(make_algebra([1, 2]))


def test_generated_star_algebra_examples():
    assert generated_star_algebra(3, []).dim == 1
    A = generated_star_algebra(2, [X])
    assert A.dim == 2
    assert is_commutative(A)
    assert generated_star_algebra(2, [X, Z]).dim == 4


def test_commutant_examples():
    assert commutant(generated_star_algebra(2, [X, Z])).dim == 1
    diag = subalgebra(2, [np.diag([1.0, 0]), np.diag([0, 1.0])])
    D = commutant(diag)
    assert D.dim == 2
    assert same_algebra(D, diag)
    assert commutant(generated_star_algebra(4, [])).dim == 16


def test_conditional_expectation_examples():
    diag = subalgebra(2, [np.diag([1.0, 0]), np.diag([0, 1.0])])
    m = np.array([[1, 2], [3, 4]], dtype=complex)
    np.testing.assert_allclose(conditional_expectation(m, diag).dense(), np.diag([1, 4]), atol=1e-12)
    A = make_algebra([1, 2])
    x = A.random_element(seed=1)
    np.testing.assert_allclose(conditional_expectation(x.dense(), A).dense(), x.dense(), atol=1e-12)
    scalars = generated_star_algebra(2, [])
    np.testing.assert_allclose(conditional_expectation(X, scalars).dense(), 0, atol=1e-12)


def test_wedderburn_examples():
    A = generated_star_algebra(3, [np.diag([1.0, 1.0, 0.0])])
    wd = wedderburn_decompose(A, seed=0)
    assert wd.block_dims == (1, 1)
    assert wd.multiplicities == (2, 1)
    wd = wedderburn_decompose(generated_star_algebra(2, [X, Z]), seed=0)
    assert wd.block_dims == (2,)
    assert wd.multiplicities == (1,)


def _conjugated(block_dims, seed):
    A = make_algebra(block_dims)
    U = haar_unitary(A.ambient_dim, seed)
    return subalgebra(A.ambient_dim, [U @ b @ U.conj().T for b in A.basis_matrices()])


def test_wedderburn_recovers_conjugated_c_plus_m2():
    wd = wedderburn_decompose(_conjugated([1, 2], seed=7), seed=0)
    assert wd.block_dims == (2, 1)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(0, 2**31))
def test_wedderburn_recovers_block_multiset(dims, seed):
    B = _conjugated(dims, seed)
    canon, wd = canonical_form(B, seed=seed)
    assert sorted(canon.block_dims) == sorted(dims)
    # the change of basis carries elements to block form and back
    x = B.random_element(seed=seed)
    np.testing.assert_allclose(wd.from_canonical(wd.to_canonical(x)).dense(), x.dense(), atol=1e-8)


def test_wedderburn_with_multiplicity():
    # M2 (x) 1_2 (+) C inside M5
    mats = [np.kron(m, np.eye(2)) for m in make_algebra([2]).basis_matrices()]
    mats = [np.pad(m, ((0, 1), (0, 1))) for m in mats] + [np.diag([0, 0, 0, 0, 1.0])]
    wd = wedderburn_decompose(subalgebra(5, mats), seed=3)
    assert wd.block_dims == (2, 1)
    assert wd.multiplicities == (2, 1)
    U = wd.change_of_basis
    np.testing.assert_allclose(U.conj().T @ U, np.eye(5), atol=1e-10)


def test_wedderburn_rejects_non_closed_span():
    with pytest.raises(InvalidPresentationError):
        wedderburn_decompose(subalgebra(2, [np.eye(2), np.array([[0, 1.0], [0, 0]])]), seed=0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(0, 2**31))
def test_c_star_identity(dims, seed):
    A = make_algebra(dims)
    x = A.random_element(seed=seed)
    nx = op_norm(x)
    assert abs(op_norm(x.H @ x) - nx**2) <= 1e-9 * nx**2


def test_c_star_identity_200_elements():
    rng = np.random.default_rng(11)
    for _ in range(200):
        A = make_algebra(list(rng.integers(1, 4, size=rng.integers(1, 4))))
        x = A.random_element(seed=rng)
        nx = op_norm(x)
        assert abs(op_norm(x.H @ x) - nx**2) <= 1e-9 * nx**2


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6), st.integers(0, 3), st.integers(0, 2**31))
def test_double_commutant_equals_generated(n, k, seed):
    rng = np.random.default_rng(seed)
    gens = []
    for _ in range(k):
        # sparse-ish generators so that proper subalgebras also occur
        g = rng.standard_normal((n, n)) * (rng.random((n, n)) < 0.3)
        gens.append(g)
    A = generated_star_algebra(n, gens)
    assert same_algebra(A, commutant(commutant(A)))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(0, 2**31))
def test_conditional_expectation_is_trace_orthogonal(dims, seed):
    A = make_algebra(dims)
    rng = np.random.default_rng(seed)
    n = A.ambient_dim
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Ex = conditional_expectation(x, A).dense()
    for a in A.basis_matrices():
        assert abs(np.trace(a.conj().T @ x) - np.trace(a.conj().T @ Ex)) <= 1e-10


def test_find_noncommuting_projections_examples():
    assert find_noncommuting_projections(make_algebra([1, 1])) is None
    P, Q = find_noncommuting_projections(make_algebra([2]))
    np.testing.assert_allclose(P.dense(), np.diag([1.0, 0]), atol=1e-12)
    np.testing.assert_allclose(Q.dense(), np.full((2, 2), 0.5), atol=1e-12)
    comm = P.dense() @ Q.dense() - Q.dense() @ P.dense()
    assert np.linalg.norm(comm, 2) == pytest.approx(0.5)
    P, Q = find_noncommuting_projections(make_algebra([1, 3]))
    assert P.blocks[0][0, 0] == 0 and Q.blocks[0][0, 0] == 0
    assert np.trace(P.blocks[1]).real == pytest.approx(1.0)


@pytest.mark.parametrize("dims", [list(d) for r in (1, 2, 3) for d in itertools.product([1, 2, 3], repeat=r)])
def test_noncommuting_projections_iff_noncommutative(dims):
    A = make_algebra(dims)
    pair = find_noncommuting_projections(A)
    assert (pair is None) == is_commutative(A)
    if pair is not None:
        P, Q = (p.dense() for p in pair)
        assert np.linalg.norm(P @ Q - Q @ P) > 1e-3
