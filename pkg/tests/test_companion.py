import random

import pytest

from clusterweyl import (
    Companion,
    NoSolution,
    SkewMatrix,
    apply_sequence,
    diagram_of,
    enumerate_cycles,
    equal_up_to_sign_changes,
    find_admissible,
    generalized_cartan,
    is_admissible,
    mutate_companion,
    reachability_check,
    sign_change,
)
from clusterweyl.companion import apply_sign_vector, canonical_signs, solve_edge_signs
from clusterweyl.errors import (
    NotAdmissibleInput,
    PreconditionViolated,
    SequenceMismatch,
)

from conftest import corpus, walks

TRIANGLE = SkewMatrix.from_rows([[0, -1, 1], [1, 0, -1], [-1, 1, 0]])


def test_generalized_cartan_examples(a3, b2):
    assert generalized_cartan(a3).a == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
    assert generalized_cartan(b2).a == ((2, -2), (-1, 2))
    zero = SkewMatrix.from_rows([[0, 0], [0, 0]])
    assert generalized_cartan(zero).a == ((2, 0), (0, 2))


def test_acyclic_generalized_cartan_is_admissible():
    for m in corpus(seed=31, count=50):
        assert is_admissible(generalized_cartan(m)).admissible


def test_all_negative_oriented_triangle_not_admissible():
    c = generalized_cartan(TRIANGLE)
    report = is_admissible(c)
    assert not report.admissible
    assert report.witness.vertices == (1, 2, 3)


def test_def21_companion_of_triangle_is_admissible():
    c = Companion.build([[2, -1, -1], [-1, 2, 1], [-1, 1, 2]], TRIANGLE)
    assert is_admissible(c).admissible


def test_mutate_companion_worked_example(a3):
    c = generalized_cartan(a3)
    c2 = mutate_companion(c, 2, -1)
    assert c2.a == ((2, -1, -1), (-1, 2, 1), (-1, 1, 2))
    assert c2.matrix.b == TRIANGLE.b


def test_mutate_companion_isolated_vertex():
    m = SkewMatrix.from_rows([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    c = generalized_cartan(m)
    for eps in (1, -1):
        c2 = mutate_companion(c, 3, eps)
        assert c2.a == c.a


def test_mutate_companion_inverse_pairing(a3):
    # eps-mutation at k is undone by (-eps)-mutation at k
    c = generalized_cartan(a3)
    for eps in (1, -1):
        c2 = mutate_companion(mutate_companion(c, 2, eps), 2, -eps)
        assert c2.a == c.a
    for m, seq in walks(seed=32, count=30, length=4):
        c = generalized_cartan(m)
        rng = random.Random(33)
        for k in seq:
            eps = rng.choice((1, -1))
            assert mutate_companion(mutate_companion(c, k, eps), k, -eps).a == c.a
            c = mutate_companion(c, k, eps)


def test_mutate_companion_requires_admissible():
    c = generalized_cartan(TRIANGLE)
    with pytest.raises(NotAdmissibleInput):
        mutate_companion(c, 1, -1)
    mutate_companion(c, 1, -1, force=True)  # force bypasses the guard


def test_admissibility_preserved_along_walks():
    # 500-case corpus of acyclic seeds and random sequences (<= 8 steps),
    # epsilon drawn fresh per step so both signs are exercised
    rng = random.Random(34)
    for m, seq in walks(seed=34, count=500, n_max=5, length=8):
        c = generalized_cartan(m)
        for k in seq:
            c = mutate_companion(c, k, rng.choice((1, -1)))
            assert is_admissible(c).admissible
            d = c.matrix.d
            for i in range(m.n):
                for j in range(m.n):
                    assert d[i] * c.a[i][j] == d[j] * c.a[j][i]


def test_sign_change_examples(a2):
    c = generalized_cartan(a2)
    assert sign_change(c, 2).a == ((2, 1), (1, 2))
    assert sign_change(sign_change(c, 2), 2).a == c.a


def test_sign_change_preserves_admissibility_verdict():
    c = Companion.build([[2, -1, -1], [-1, 2, 1], [-1, 1, 2]], TRIANGLE)
    bad = generalized_cartan(TRIANGLE)
    for k in (1, 2, 3):
        assert is_admissible(sign_change(c, k)).admissible
        assert not is_admissible(sign_change(bad, k)).admissible


def test_find_admissible_acyclic_gives_generalized_cartan(a3):
    got = find_admissible(a3)
    assert isinstance(got, Companion)
    assert got.a == generalized_cartan(a3).a


def test_find_admissible_oriented_triangle():
    got = find_admissible(TRIANGLE)
    assert isinstance(got, Companion)
    rep = is_admissible(got)
    assert rep.admissible
    positives = sum(
        1 for i in range(3) for j in range(i + 1, 3) if got.a[i][j] > 0
    )
    assert positives in (1, 3)


def test_find_admissible_on_mutation_class_of_acyclic():
    rng = random.Random(36)
    for m, seq in walks(seed=36, count=40, length=6):
        got = find_admissible(apply_sequence(m, seq))
        assert isinstance(got, Companion)
        assert is_admissible(got).admissible


def test_find_admissible_infeasible():
    # A 4-vertex tournament with exactly one cyclic triangle: the four
    # triangle constraints sum to 0 = 1 over GF(2), so no companion can
    # be admissible.  (Such a matrix is not mutation-equivalent to an
    # acyclic one, so this does not contradict the sign-coherence
    # property.)
    m = SkewMatrix.from_rows(
        [
            [0, -1, 1, 1],
            [1, 0, -1, 1],
            [-1, 1, 0, 1],
            [-1, -1, -1, 0],
        ]
    )
    cycles = enumerate_cycles(diagram_of(m))
    assert sum(c.oriented for c in cycles) == 1 and len(cycles) == 4
    got = find_admissible(m)
    assert isinstance(got, NoSolution)
    assert got.cycles  # a contradicting subsystem is reported


def test_equal_up_to_sign_changes(a2):
    c = generalized_cartan(a2)
    flipped = sign_change(c, 2)
    assert equal_up_to_sign_changes(c, flipped) == (1, -1)
    assert equal_up_to_sign_changes(c, c) == (1, 1)
    c1 = Companion.build([[2, -1], [-1, 2]], a2)
    c2 = Companion.build([[2, 1], [1, 2]], a2)
    assert equal_up_to_sign_changes(c1, c2) is not None
    with pytest.raises(ValueError):
        equal_up_to_sign_changes(c, generalized_cartan(SkewMatrix.from_rows([[0, 2], [-1, 0]])))


def test_canonical_signs_is_orbit_invariant():
    rng = random.Random(37)
    for m, seq in walks(seed=37, count=25, length=4):
        c = generalized_cartan(m)
        for k in seq:
            c = mutate_companion(c, k, rng.choice((1, -1)))
        eps = tuple(rng.choice((1, -1)) for _ in range(m.n))
        assert canonical_signs(c) == canonical_signs(apply_sign_vector(c, eps))


def test_solve_edge_signs(a3):
    c = generalized_cartan(a3)
    eps = solve_edge_signs(c, {frozenset((1, 2)): 1})
    assert eps is not None
    flipped = apply_sign_vector(c, eps)
    assert flipped.a[0][1] > 0


def test_reachability_trivial(a3):
    assert reachability_check(a3, [], generalized_cartan(a3))


def test_reachability_worked_example(a3):
    c = Companion.build([[2, -1, -1], [-1, 2, 1], [-1, 1, 2]], TRIANGLE)
    assert reachability_check(a3, [2], c)


def test_reachability_mismatch(a3):
    c = generalized_cartan(a3)
    with pytest.raises(SequenceMismatch):
        reachability_check(a3, [2], c)


def test_reachability_requires_acyclic():
    c = Companion.build([[2, -1, -1], [-1, 2, 1], [-1, 1, 2]], TRIANGLE)
    with pytest.raises(PreconditionViolated):
        reachability_check(TRIANGLE, [], c)


def test_reachability_fixed_policy(a3):
    c = mutate_companion(generalized_cartan(a3), 2, -1)
    assert reachability_check(a3, [2], c, eps_policy=-1)
    assert reachability_check(a3, [2], c, eps_policy=[-1])
