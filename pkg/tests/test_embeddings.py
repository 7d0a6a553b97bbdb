import itertools

import numpy as np
import pytest

from opalg import (TSIRELSON, NoEmbeddingError, ProjectionPairError, bohm_bell_state, chsh_value, embed_m2,
                   find_noncommuting_projections, generated_star_algebra, is_commutative, is_product_state,
                   is_separated, make_algebra, op_norm, random_pure_state, tensor_product, tsirelson_observables,
                   two_projection_units)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


def _block_lists(max_ambient):
    out = []
    for r in (1, 2, 3):
        for d in itertools.product([1, 2, 3, 4], repeat=r):
            if sum(d) <= max_ambient:
                out.append(list(d))
    return out


NONCOMMUTATIVE = [d for d in _block_lists(4) if max(d) > 1]


def _random_projection(n, rank, rng):
    q, _ = np.linalg.qr(rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank)))
    return q @ q.conj().T


def test_embed_m2_canonical_units():
    U = embed_m2(make_algebra([2]))
    for k, l in itertools.product((1, 2), repeat=2):
        e = np.zeros((2, 2))
        e[k - 1, l - 1] = 1
        np.testing.assert_allclose(U.unit(k, l).dense(), e, atol=1e-12)


def test_embed_m2_rejects_commutative():
    with pytest.raises(NoEmbeddingError):
        embed_m2(make_algebra([1, 1, 1]))


def test_embed_m2_corner_of_three_block():
    A = make_algebra([1, 3])
    U = embed_m2(A)
    assert U.relations_defect() <= 1e-12
    for k, l in itertools.product((1, 2), repeat=2):
        assert np.all(U.unit(k, l).blocks[0] == 0)


def test_embed_m2_subalgebra_form():
    A = generated_star_algebra(4, [np.kron(X, np.eye(2)), np.kron(Z, np.eye(2))])
    U = embed_m2(A, seed=0)
    U.check()
    assert np.trace(U.e11.dense()).real == pytest.approx(2)


def test_two_projection_units_basic_pair():
    M2 = make_algebra([2])
    P = M2.from_dense(np.diag([1.0, 0]))
    Q = M2.from_dense(np.full((2, 2), 0.5))
    U = two_projection_units(P, Q)
    U.check()
    # e11 is the eigenprojection of PQP at 1/2, which is P itself here
    np.testing.assert_allclose(U.e11.dense(), P.dense(), atol=1e-12)
    span = np.array([U.unit(k, l).dense().ravel() for k, l in itertools.product((1, 2), repeat=2)])
    assert np.linalg.matrix_rank(span) == 4


def test_two_projection_units_rejects_commuting_pair():
    C = make_algebra([1, 1, 1])
    P, Q = C.from_dense(np.diag([1.0, 0, 0])), C.from_dense(np.diag([1.0, 1, 0]))
    with pytest.raises(ProjectionPairError):
        two_projection_units(P, Q)


def test_two_projection_units_rejects_non_projection():
    M2 = make_algebra([2])
    with pytest.raises(ProjectionPairError):
        two_projection_units(M2.from_dense(np.diag([2.0, 0])), M2.from_dense(np.full((2, 2), 0.5)))


@pytest.mark.parametrize("seed", range(10))
def test_two_projection_units_random_pairs(seed):
    rng = np.random.default_rng(seed)
    M4 = make_algebra([4])
    P = M4.from_dense(_random_projection(4, 2, rng))
    Q = M4.from_dense(_random_projection(4, rng.integers(1, 4), rng))
    U = two_projection_units(P, Q)
    assert U.relations_defect() <= 1e-9


def _word_traces(U):
    units = [U.unit(k, l).dense() for k, l in itertools.product((1, 2), repeat=2)]
    out = []
    for r in (1, 2, 3):
        for word in itertools.product(range(4), repeat=r):
            m = np.eye(units[0].shape[0])
            for w in word:
                m = m @ units[w]
            out.append(np.trace(m))
    return np.array(out)


@pytest.mark.parametrize("dims", [[2], [1, 2], [2, 2], [1, 3], [3]])
def test_two_routes_give_equivalent_units(dims):
    A = make_algebra(dims)
    P, Q = find_noncommuting_projections(A)
    np.testing.assert_allclose(_word_traces(two_projection_units(P, Q)), _word_traces(embed_m2(A)), atol=1e-9)


def test_tsirelson_observables_properties():
    T = tensor_product(make_algebra([2]), make_algebra([2]))
    L, R = embed_m2(T.left), embed_m2(T.right)
    obs = tsirelson_observables(L, R)
    for x in (obs.a, obs.a_prime, obs.b, obs.b_prime):
        assert op_norm(x) == pytest.approx(1)
        assert x.is_self_adjoint()
    np.testing.assert_allclose((obs.b @ obs.b + obs.b_prime @ obs.b_prime).dense(),
                               2 * (R.e11 + R.e22).dense(), atol=1e-12)


def test_bohm_bell_state_on_two_qubits():
    T = tensor_product(make_algebra([2]), make_algebra([2]))
    L, R = embed_m2(T.left), embed_m2(T.right)
    omega = bohm_bell_state(T, L, R)
    singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
    np.testing.assert_allclose(omega.densities[0], np.outer(singlet, singlet), atol=1e-12)
    obs = tsirelson_observables(L, R)
    value = chsh_value(omega, T, obs)
    # independent oracle: singlet expectation of the dense operators, then the dense top eigenvalue
    dense = [x.dense() for x in (obs.a, obs.a_prime, obs.b, obs.b_prime)]
    e1 = singlet @ np.kron(dense[0], dense[2] - dense[3]) @ singlet
    e2 = singlet @ np.kron(dense[1], dense[2] + dense[3]) @ singlet
    assert value == pytest.approx(abs(e1) + abs(e2), abs=1e-12)
    top = max(np.linalg.eigvalsh(s1 * np.kron(dense[0], dense[2] - dense[3])
                                 + s2 * np.kron(dense[1], dense[2] + dense[3]))[-1]
              for s1 in (1, -1) for s2 in (1, -1))
    assert value == pytest.approx(top, abs=1e-9)
    assert value == pytest.approx(2 * np.sqrt(2), abs=1e-9)
    assert not is_product_state(omega, T)


@pytest.mark.parametrize("left, right", list(itertools.product(NONCOMMUTATIVE, repeat=2)))
def test_witness_attains_tsirelson_on_all_small_pairs(left, right):
    T = tensor_product(make_algebra(left), make_algebra(right))
    L, R = embed_m2(T.left), embed_m2(T.right)
    assert L.relations_defect() <= 1e-9 and R.relations_defect() <= 1e-9
    value = chsh_value(bohm_bell_state(T, L, R), T, tsirelson_observables(L, R))
    assert abs(value - TSIRELSON) <= 1e-9


def test_is_separated_examples():
    v = is_separated(make_algebra([1, 1]), make_algebra([3]))
    assert v.separated and v.left_commutative and not v.right_commutative
    assert v.witness is None
    v = is_separated(make_algebra([2]), make_algebra([2]))
    assert not v.separated
    assert v.witness.value == pytest.approx(TSIRELSON, abs=1e-9)
    v = is_separated(make_algebra([1, 2]), make_algebra([2, 1]))
    assert not v.separated
    T = v.witness.tensor
    # the witness lives in the block pairing the two M2 summands
    (pos,) = v.witness.state.support()
    assert T.pairs[pos] == (1, 0)
    assert v.witness.value == pytest.approx(TSIRELSON, abs=1e-9)


def test_is_separated_accepts_subalgebra_form():
    A = generated_star_algebra(3, [np.diag([1.0, 1.0, 0.0])])
    B = generated_star_algebra(2, [X, Z])
    assert is_separated(A, B).separated
    assert not is_separated(B, B).separated


def test_separated_agrees_with_pure_state_sampling():
    T = tensor_product(make_algebra([1, 1, 1]), make_algebra([1, 3]))
    rng = np.random.default_rng(8)
    assert all(is_product_state(random_pure_state(T.product, seed=rng), T) for _ in range(1000))
    for left, right in [([2], [2]), ([1, 2], [3])]:
        v = is_separated(make_algebra(left), make_algebra(right))
        assert not v.separated
        assert not is_product_state(v.witness.state, v.witness.tensor)


def test_verdict_matches_commutativity():
    for left, right in itertools.product(_block_lists(3), repeat=2):
        A, B = make_algebra(left), make_algebra(right)
        assert is_separated(A, B).separated == (is_commutative(A) or is_commutative(B))
