import numpy as np
import pytest

from eqcmm import (Capacity, DomainError, EnergyError, MemoryMatrix, ShapeError, TrainingPair,
                   ZeroVectorError, capacity_check, crosstalk_matrix, crosstalk_noise,
                   decompose_recall, make_pairs, recall, train_batch, train_step)

import oracles
from conftest import haar_matrix, orthonormal_keys

SQ = 1 / np.sqrt(2)
E0, E1 = np.array([1, 0]), np.array([0, 1])
MIXED = [TrainingPair(E0, E0), TrainingPair(np.array([SQ, SQ]), E1)]


def test_train_batch_examples():
    np.testing.assert_array_equal(train_batch([TrainingPair(E0, E1)]).M, [[0, 0], [1, 0]])
    swap = train_batch([TrainingPair(E0, E1), TrainingPair(E1, E0)])
    np.testing.assert_array_equal(swap.M, [[0, 1], [1, 0]])
    assert swap.pairs_trained == 2
    np.testing.assert_allclose(train_batch(MIXED).M, [[1, 0], [SQ, SQ]], atol=1e-16)


def test_train_step_examples():
    one = train_step(MemoryMatrix.zeros(2), TrainingPair(E0, E1))
    np.testing.assert_array_equal(one.M, [[0, 0], [1, 0]])
    x, y = np.array([0.6, 0.8j]), np.array([1j, 2])
    twice = train_step(train_step(MemoryMatrix.zeros(2), (x, y)), (x, y))
    np.testing.assert_allclose(twice.M, 2 * np.outer(y, x.conj()), atol=1e-15)
    assert twice.pairs_trained == 2


def test_train_step_returns_new_value():
    seed = MemoryMatrix.zeros(2)
    train_step(seed, TrainingPair(E0, E1))
    assert not seed.M.any() and seed.pairs_trained == 0


def test_recursion_equals_batch_bitwise(rng):
    for _ in range(100):
        m, q = rng.integers(1, 10, size=2)
        pairs = make_pairs(haar_matrix(rng, m, q), haar_matrix(rng, m, q))
        folded = MemoryMatrix.zeros(m)
        for p in pairs:
            folded = train_step(folded, p)
        assert folded.M.tobytes() == train_batch(pairs).M.tobytes()


def test_training_errors():
    with pytest.raises(DomainError):
        train_batch([])
    with pytest.raises(ShapeError):
        train_batch([TrainingPair(E0, E1), TrainingPair(np.ones(3), E1)])
    with pytest.raises(EnergyError):
        train_batch([TrainingPair(np.array([2, 0]), E1)], require_unit_energy=True)
    assert train_batch([TrainingPair(np.array([2, 0]), E1)]).M[1, 0] == 2


def test_rectangular_memory():
    mem = train_batch([TrainingPair(E0, np.array([1, 2, 3]))])
    assert (mem.m_out, mem.m_in) == (3, 2)
    np.testing.assert_array_equal(recall(mem, E0), [1, 2, 3])


def test_recall_examples(rng):
    X = orthonormal_keys(rng, 5, 5)
    Y = haar_matrix(rng, 5, 5)
    mem = train_batch(make_pairs(X, Y))
    for j in range(5):
        assert np.linalg.norm(recall(mem, X[:, j]) - Y[:, j]) <= 1e-12
    np.testing.assert_allclose(recall(train_batch(MIXED), E0), [1, SQ], atol=1e-16)
    assert not recall(mem, np.zeros(5)).any()
    with pytest.raises(ShapeError):
        recall(mem, np.ones(4))


def test_recall_is_linear(rng):
    mem = train_batch(make_pairs(haar_matrix(rng, 6, 4), haar_matrix(rng, 6, 4)))
    a, b = haar_matrix(rng, 6, 2).T
    alpha, beta = 0.3 - 1.2j, 2.1j
    lhs = recall(mem, alpha * a + beta * b)
    rhs = alpha * recall(mem, a) + beta * recall(mem, b)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_recall_accepts_stimulus_columns(rng):
    X, Y = haar_matrix(rng, 4, 3), haar_matrix(rng, 4, 3)
    mem = train_batch(make_pairs(X, Y))
    np.testing.assert_allclose(recall(mem, X)[:, 1], recall(mem, X[:, 1]), atol=1e-15)


def test_decompose_recall_examples(rng):
    X = orthonormal_keys(rng, 4, 4)
    d = decompose_recall(make_pairs(X, haar_matrix(rng, 4, 4)), 2)
    assert d.noise_norm <= 1e-12

    d = decompose_recall(MIXED, 0)
    np.testing.assert_allclose(d.noise, [0, SQ], atol=1e-16)
    assert d.noise_norm == pytest.approx(SQ, abs=1e-15)
    np.testing.assert_allclose(d.signal, [1, 0])
    np.testing.assert_allclose(d.response, d.signal + d.noise, atol=1e-12)

    x = haar_matrix(rng, 3, 1)[:, 0]
    y1, y2 = haar_matrix(rng, 3, 2).T
    d = decompose_recall([TrainingPair(x, y1), TrainingPair(x, y2)], 0)
    np.testing.assert_allclose(d.noise, y2 * np.vdot(x, x), atol=1e-15)


def test_decompose_recall_errors():
    with pytest.raises(DomainError):
        decompose_recall(MIXED, 2)
    with pytest.raises(EnergyError):
        decompose_recall([TrainingPair(np.array([3, 0]), E0)], 0)
    d = decompose_recall([TrainingPair(np.array([3, 0]), E0)], 0, require_unit_energy=False)
    np.testing.assert_allclose(d.signal, [9, 0])


def test_decomposition_identity_against_brute_force(rng):
    for _ in range(1000):
        m = int(rng.integers(1, 17))
        q = int(rng.integers(1, m + 1))
        X, Y = haar_matrix(rng, m, q), haar_matrix(rng, m, q)
        pairs = make_pairs(X, Y)
        j = int(rng.integers(q))
        d = decompose_recall(pairs, j)
        brute = np.array(oracles.crosstalk(list(X.T), list(Y.T), j))
        assert np.max(np.abs(d.noise - brute)) <= 1e-12
        assert np.max(np.abs(d.response - (d.signal + d.noise))) <= 1e-12


def test_perfect_association_on_orthonormal_keys(rng):
    for q in (1, 3, 8, 16):
        X = orthonormal_keys(rng, 16, q)
        Y = haar_matrix(rng, 16, q)
        mem = train_batch(make_pairs(X, Y))
        assert np.max(np.linalg.norm(recall(mem, X) - Y, axis=0)) <= 1e-10 * q


def test_noise_lower_bound(rng):
    for _ in range(50):
        X = haar_matrix(rng, 5, 3)
        Y = orthonormal_keys(rng, 5, 3)
        G = np.abs(X.conj().T @ X)
        np.fill_diagonal(G, 0)
        c = G.max()
        j = int(np.argmax(G.max(axis=0)))
        d = decompose_recall(make_pairs(X, Y), j)
        # orthonormal y's: the noise norm is the l2 norm of the column's overlaps
        assert d.noise_norm >= c - c / 2


def test_crosstalk_noise_matches_decompose(rng):
    X, Y = haar_matrix(rng, 6, 5), haar_matrix(rng, 6, 5)
    pairs = make_pairs(X, Y)
    N = crosstalk_noise(X, Y)
    for j in range(5):
        np.testing.assert_allclose(N[:, j], decompose_recall(pairs, j).noise, atol=1e-14)


def test_increment_has_rank_one(rng):
    x, y = haar_matrix(rng, 7, 2).T
    s = np.linalg.svd(np.outer(y, x.conj()), compute_uv=False)
    assert s[1] <= 1e-12 * s[0]


def test_crosstalk_matrix_examples(rng):
    np.testing.assert_allclose(crosstalk_matrix(orthonormal_keys(rng, 4, 4).T), np.eye(4), atol=1e-14)
    np.testing.assert_allclose(crosstalk_matrix([E0, [SQ, SQ]]), [[1, SQ], [SQ, 1]], atol=1e-15)
    x = haar_matrix(rng, 3, 1)[:, 0]
    assert abs(crosstalk_matrix([x, x])[0, 1]) == pytest.approx(1, abs=1e-15)
    C = crosstalk_matrix(list(haar_matrix(rng, 5, 4).T))
    np.testing.assert_allclose(C, C.conj().T, atol=0)
    np.testing.assert_allclose(np.diag(C), 1, atol=1e-12)
    with pytest.raises(ZeroVectorError):
        crosstalk_matrix([E0, [0, 0]])


@pytest.mark.parametrize("m, q, r, status", [
    (4, 4, 4, Capacity.WITHIN_CAPACITY),
    (4, 5, 4, Capacity.RANK_DEFICIENT),
    (4, 3, 2, Capacity.RANK_DEFICIENT),
])
def test_capacity_check(m, q, r, status):
    v = capacity_check(m, q, r)
    assert v.status is status
    assert (v.m, v.q, v.keys_rank) == (m, q, r)
