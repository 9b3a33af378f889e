import random

import pytest

from clusterweyl import SkewMatrix, apply_sequence, compute_symmetrizer, mutate_matrix
from clusterweyl.errors import NotSkewSymmetrizable

from conftest import corpus


def test_symmetrizer_examples():
    assert compute_symmetrizer([[0, 1], [-1, 0]]) == (1, 1)
    assert compute_symmetrizer([[0, 2], [-1, 0]]) == (1, 2)  # d1*2 = -d2*(-1)
    with pytest.raises(NotSkewSymmetrizable):
        compute_symmetrizer([[0, 1], [1, 0]])


def test_symmetrizer_minimality_and_gcd():
    # two isolated components each get the minimal scale
    assert compute_symmetrizer([[0, 0], [0, 0]]) == (1, 1)
    assert compute_symmetrizer([[0, 2, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 3], [0, 0, -1, 0]]) == (
        1,
        2,
        1,
        3,
    )


def test_symmetrizer_cycle_inconsistency():
    # ratios around the triangle multiply to 2, not 1
    with pytest.raises(NotSkewSymmetrizable):
        compute_symmetrizer([[0, 1, 1], [-1, 0, 1], [-2, -1, 0]])


def test_symmetrizer_rejects_nonzero_diagonal():
    with pytest.raises(NotSkewSymmetrizable):
        compute_symmetrizer([[1, 1], [-1, 0]])


def test_mutate_examples(a2, a3):
    assert mutate_matrix(a2, 1).b == ((0, -1), (1, 0))
    assert mutate_matrix(a3, 2).b == ((0, -1, 1), (1, 0, -1), (-1, 1, 0))


def test_mutation_is_involutive_on_corpus():
    rng = random.Random(11)
    for m in corpus(seed=11, count=200):
        k = rng.randint(1, m.n)
        assert mutate_matrix(mutate_matrix(m, k), k) == m


def test_mutation_preserves_symmetrizer():
    for m in corpus(seed=12, count=100):
        for k in range(1, m.n + 1):
            m2 = mutate_matrix(m, k)
            assert m2.d == m.d
            for i in range(m.n):
                for j in range(m.n):
                    assert m2.d[i] * m2.b[i][j] == -m2.d[j] * m2.b[j][i]


def test_apply_sequence(a3):
    assert apply_sequence(a3, []) == a3
    assert apply_sequence(a3, [2, 2]) == a3


def test_index_bounds(a3):
    with pytest.raises(IndexError):
        mutate_matrix(a3, 0)
    with pytest.raises(IndexError):
        mutate_matrix(a3, 4)


def test_json_round_trip(b3):
    doc = b3.to_json()
    assert SkewMatrix.from_json(doc) == b3
    # d is optional and recomputed
    del doc["d"]
    assert SkewMatrix.from_json(doc) == b3


def test_supplied_symmetrizer_validated():
    with pytest.raises(NotSkewSymmetrizable):
        SkewMatrix.from_json({"n": 2, "b": [[0, 2], [-1, 0]], "d": [1, 1]})
    # a valid non-minimal symmetrizer is accepted but canonicalized
    m = SkewMatrix.from_json({"n": 2, "b": [[0, 1], [-1, 0]], "d": [3, 3]})
    assert m.d == (1, 1)
