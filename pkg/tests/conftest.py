import random

import pytest

from clusterweyl import SkewMatrix
from clusterweyl.corpus import random_acyclic_matrix, random_mutation_sequence


@pytest.fixture
def a2():
    return SkewMatrix.from_rows([[0, 1], [-1, 0]])


@pytest.fixture
def a3():
    return SkewMatrix.from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])


@pytest.fixture
def b2():
    return SkewMatrix.from_rows([[0, 2], [-1, 0]])


@pytest.fixture
def b3():
    return SkewMatrix.from_rows([[0, 1, 0], [-1, 0, 2], [0, -1, 0]])


def corpus(seed: int, count: int, n_max: int = 8, **kwargs):
    """Deterministic stream of random acyclic-diagram matrices."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, n_max)
        out.append(random_acyclic_matrix(rng, n, **kwargs))
    return out


def walks(seed: int, count: int, n_max: int = 6, length: int = 6, **kwargs):
    """Deterministic (acyclic seed, mutation sequence) pairs."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, n_max)
        m = random_acyclic_matrix(rng, n, **kwargs)
        seq = random_mutation_sequence(rng, n, rng.randint(0, length))
        out.append((m, seq))
    return out
