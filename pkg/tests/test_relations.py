import random

import pytest

from clusterweyl import (
    INFINITY,
    PathSystem,
    RelationReport,
    SkewMatrix,
    affine_dn_check,
    apply_sequence,
    check_weight_ge4_walk,
    companion_basis_for,
    cycle_relation,
    diagram_of,
    edge_order_table,
    enumerate_cycles,
    enumerate_increasing_paths,
    group_order,
    normalize_signs,
    order_from_x,
    pair_order,
    path_system_relation,
    reflect,
    relation_reports,
    simple_basis,
    two_infinity_order,
    verify_relation,
)
from clusterweyl.diagram import Diagram, Edge
from clusterweyl.errors import (
    CannotNormalize,
    NegativeX,
    NormalizationRequired,
    NotOriented,
    PreconditionViolated,
    VerificationFailed,
)
from clusterweyl.relations import path_systems_in
from clusterweyl.roots import RootLattice, apply_basis_signs
from clusterweyl.testsupport import dn_pattern_basis, theta_matrix

from conftest import walks


def test_order_from_x_table():
    assert order_from_x(0) == 2
    assert order_from_x(1) == 3
    assert order_from_x(2) == 4
    assert order_from_x(3) == 6
    assert order_from_x(4) == INFINITY
    assert order_from_x(7) == INFINITY
    with pytest.raises(NegativeX):
        order_from_x(-1)


def test_pair_order(a2):
    l = RootLattice.from_acyclic(a2)
    assert pair_order(l, (1, 0), (0, 1)) == (1, 3)
    g2 = SkewMatrix.from_rows([[0, 1], [-3, 0]])  # weight-3 edge
    lg = RootLattice.from_acyclic(g2)
    assert pair_order(lg, (1, 0), (0, 1)) == (3, 6)
    zero = SkewMatrix.from_rows([[0, 0], [0, 0]])
    lz = RootLattice.from_acyclic(zero)
    assert pair_order(lz, (1, 0), (0, 1)) == (0, 2)
    with pytest.raises(ValueError):
        pair_order(l, (1, 0), (-2, 0))


def test_edge_order_table(b3):
    g = diagram_of(b3)
    table = edge_order_table(g)
    assert table[(1, 2)] == 3  # weight 1
    assert table[(2, 3)] == 4  # weight 2
    assert table[(1, 3)] == 2  # not connected
    w4 = diagram_of(SkewMatrix.from_rows([[0, 2], [-2, 0]]))
    assert edge_order_table(w4)[(1, 2)] == INFINITY


def unit_triangle():
    return Diagram.build(3, [Edge(1, 2, 1), Edge(2, 3, 1), Edge(3, 1, 1)])


def b3_triangle_state(b3):
    """B3 seed mutated at 2: oriented triangle with weights 1, 2, 2."""
    return companion_basis_for(b3, [2], -1)


def test_cycle_relation_unit_triangle():
    g = unit_triangle()
    (cycle,) = enumerate_cycles(g)
    for i in (1, 2, 3):
        rep = cycle_relation(g, cycle, i)
        assert rep.x == 0 and rep.m == 2 and len(rep.word) == 4


def test_cycle_relation_not_oriented():
    g = Diagram.build(3, [Edge(1, 2, 1), Edge(2, 3, 1), Edge(1, 3, 1)])
    (cycle,) = enumerate_cycles(g)
    with pytest.raises(NotOriented):
        cycle_relation(g, cycle, 1)


def test_cycle_relation_weighted_triangle(b3):
    m, c, bs = b3_triangle_state(b3)
    g = diagram_of(m)
    # cyclic weights: 1 -> 2 (1), 2 -> 3 (2), 3 -> 1 (2)
    assert g.edge_map == {(1, 2): 1, (2, 3): 2, (3, 1): 2}
    (cycle,) = enumerate_cycles(g)
    # the (2,2) run starts at 2: x = (sqrt(2)*sqrt(2) - 1)^2 = 1, m = 3
    rep2 = cycle_relation(g, cycle, 2)
    assert (rep2.x, rep2.m) == (1, 3)
    assert verify_relation(rep2, bs).verified == "proven-finite-by-matrix"
    # the (2,1) run starts at 3: x = (sqrt(2)*1 - sqrt(2))^2 = 0, m = 2
    rep3 = cycle_relation(g, cycle, 3)
    assert (rep3.x, rep3.m) == (0, 2)
    assert verify_relation(rep3, bs).verified == "proven-finite-by-matrix"
    rep1 = cycle_relation(g, cycle, 1)
    assert (rep1.x, rep1.m) == (0, 2)
    assert verify_relation(rep1, bs).verified == "proven-finite-by-matrix"


def test_verify_relation_catches_wrong_order(a3):
    m, c, bs = companion_basis_for(a3, [2], -1)
    g = diagram_of(m)
    (cycle,) = enumerate_cycles(g)
    rep = cycle_relation(g, cycle, 1)
    wrong = RelationReport(kind=rep.kind, word=rep.word, x=1, m=3)
    with pytest.raises(VerificationFailed) as err:
        verify_relation(wrong, bs)
    assert err.value.failing_power == 2
    assert verify_relation(wrong, bs, strict=False).verified == "failed"


def test_verify_relation_infinite(a2):
    w4 = SkewMatrix.from_rows([[0, 2], [-2, 0]])
    l = RootLattice.from_acyclic(w4)
    bs = simple_basis(l)
    rep = RelationReport(kind="pair", word=(1, 2), x=4, m=INFINITY)
    out = verify_relation(rep, bs)
    assert out.verified == "certified-infinite-by-x"
    bad = RelationReport(kind="pair", word=(1, 2), x=2, m=INFINITY)
    with pytest.raises(VerificationFailed):
        verify_relation(bad, bs)


def test_path_system_build_validation():
    m = theta_matrix((1, 1))
    g = diagram_of(m)
    ps = PathSystem.build(g, 2, 1, [(3,), (4,)])
    assert ps.a == 1
    with pytest.raises(ValueError):
        PathSystem.build(g, 2, 1, [(3,), (3,)])  # shared interior
    with pytest.raises(ValueError):
        PathSystem.build(g, 1, 2, [(3,)])  # no edge 1 -> 2
    with pytest.raises(ValueError):
        PathSystem.build(g, 2, 1, [()])  # empty interior


def test_increasing_paths_single_and_disjoint():
    m1 = theta_matrix((2,))
    g1 = diagram_of(m1)
    ps1 = PathSystem.build(g1, 2, 1, [(3, 4)])
    assert enumerate_increasing_paths(ps1) == [((1, 3, 4, 2), 1)]
    m2 = theta_matrix((1, 1))
    ps2 = PathSystem.build(diagram_of(m2), 2, 1, [(3,), (4,)])
    assert enumerate_increasing_paths(ps2) == [((1, 3, 2), 1), ((1, 4, 2), 1)]


def test_increasing_paths_cross_edge():
    # two length-1 paths with a cross edge between the interiors: the
    # mixed path through 3 then 4 is increasing, the reverse is not
    m = theta_matrix((1, 1), cross_edges=((3, 4),))
    ps = PathSystem.build(diagram_of(m), 2, 1, [(3,), (4,)])
    got = enumerate_increasing_paths(ps)
    assert ((1, 3, 4, 2), 1) in got
    assert all(q != (1, 4, 3, 2) for q, _ in got)
    assert len(got) == 3
    # the loose policy also rejects the decreasing mix (path index drops)
    got_loose = enumerate_increasing_paths(ps, policy="loose")
    assert got == got_loose


def test_increasing_paths_policy_divergence():
    # cross edges 3 -> 5 and 5 -> 4 with paths (3,4), (5): walking
    # 3 -> 5 -> 4 revisits path 1 at a later position: fine for both;
    # walking from 4 backward is blocked; the difference shows on
    # 1 -> 3 -> 5 -> 4 -> 2 style traversals only when a same-path step
    # goes backward in word order.
    m = theta_matrix((2, 1), cross_edges=((4, 5),))
    ps = PathSystem.build(diagram_of(m), 2, 1, [(3, 4), (5,)])
    strict = {q for q, _ in enumerate_increasing_paths(ps, "strict")}
    loose = {q for q, _ in enumerate_increasing_paths(ps, "loose")}
    assert strict <= loose
    assert (1, 3, 4, 5, 2) in strict


def test_path_system_relation_r1_matches_cycle(b3):
    m, c, bs = b3_triangle_state(b3)
    g = diagram_of(m)
    (cycle,) = enumerate_cycles(g)
    cn, eps = normalize_signs(c, PathSystem.build(g, 3, 1, [(2,)]))
    ps = PathSystem.build(g, 3, 1, [(2,)])
    rep = path_system_relation(ps, c=cn)
    # matching vertex is j = 1
    assert rep.x == cycle_relation(g, cycle, 1).x == 0
    ps2 = PathSystem.build(g, 1, 2, [(3,)])
    cn2, _ = normalize_signs(c, ps2)
    rep2 = path_system_relation(ps2, c=cn2)
    assert rep2.x == cycle_relation(g, cycle, 2).x == 1
    assert rep2.m == 3
    bs2 = apply_basis_signs(bs, normalize_signs(c, ps2)[1])
    assert verify_relation(rep2, bs2).verified == "proven-finite-by-matrix"


def test_path_system_relation_r2_disjoint():
    from clusterweyl import is_acyclic

    m = theta_matrix((1, 1))
    # mutating the theta at its sink gives an acyclic seed
    m0, seq = apply_sequence(m, [2]), [2]
    assert is_acyclic(diagram_of(m0))
    mm, c, bs = companion_basis_for(m0, seq, -1)
    assert mm == m
    g = diagram_of(mm)
    ps = PathSystem.build(g, 2, 1, [(3,), (4,)])
    cn, eps = normalize_signs(c, ps)
    bsn = apply_basis_signs(bs, eps)
    rep = path_system_relation(ps, c=cn)
    assert rep.x == 1 and rep.m == 3
    assert rep.word == (1, 3, 4, 2, -4, -3)
    assert verify_relation(rep, bsn).verified == "proven-finite-by-matrix"


def test_path_system_relation_requires_normalization(b3):
    m, c, bs = b3_triangle_state(b3)
    g = diagram_of(m)
    ps = PathSystem.build(g, 3, 1, [(2,)])
    # the raw mutated companion happens to have a positive entry off the
    # closing edge or a negative closing entry; normalize_signs fixes it
    with pytest.raises(NormalizationRequired):
        path_system_relation(ps, c=c)


def test_normalize_signs_cases(b3):
    m, c, bs = b3_triangle_state(b3)
    g = diagram_of(m)
    ps = PathSystem.build(g, 3, 1, [(2,)])
    cn, eps = normalize_signs(c, ps)
    assert cn.a[2][0] > 0  # closing edge (3,1)
    assert cn.a[0][1] < 0 and cn.a[1][2] < 0
    # already normalized: identity sign vector
    cn2, eps2 = normalize_signs(cn, ps)
    assert eps2 == (1, 1, 1) and cn2.a == cn.a
    # generalized-Cartan signs: a[i][j] < 0, one sign change at i fixes it
    m1 = theta_matrix((1,))
    from clusterweyl import is_acyclic

    tri = diagram_of(m1)
    ps1 = PathSystem.build(tri, 2, 1, [(3,)])
    m0 = apply_sequence(m1, [2])
    assert is_acyclic(diagram_of(m0))
    _, c1, _ = companion_basis_for(m0, [2], -1)
    cn1, eps1 = normalize_signs(c1, ps1)
    assert cn1.a[1][0] > 0
    assert sum(1 for e in eps1 if e == -1) <= 1


def test_normalize_signs_rejects_non_admissible():
    m = theta_matrix((1,))
    g = diagram_of(m)
    ps = PathSystem.build(g, 2, 1, [(3,)])
    from clusterweyl import generalized_cartan

    bad = generalized_cartan(m)  # all-negative on an oriented triangle
    with pytest.raises(CannotNormalize):
        normalize_signs(bad, ps)


def test_path_systems_in(b3):
    m, c, bs = b3_triangle_state(b3)
    systems = path_systems_in(diagram_of(m))
    # one triangle, three choices of closing edge
    assert len(systems) == 3
    assert {(ps.i, ps.j) for ps in systems} == {(1, 2), (2, 3), (3, 1)}
    theta = theta_matrix((1, 1))
    systems = path_systems_in(diagram_of(theta))
    rs = sorted(len(ps.paths) for ps in systems if (ps.i, ps.j) == (2, 1))
    assert rs == [1, 1, 2]


def test_group_order(a2):
    l = RootLattice.from_acyclic(a2)
    bs = simple_basis(l)
    assert group_order([bs.reflection(1), bs.reflection(2)], cap=50) == 6
    w4 = SkewMatrix.from_rows([[0, 2], [-2, 0]])
    lw = RootLattice.from_acyclic(w4)
    bw = simple_basis(lw)
    assert group_order([bw.reflection(1), bw.reflection(2)], cap=10**4) is None


def test_two_infinity_order():
    w4 = SkewMatrix.from_rows([[0, 2], [-2, 0]])
    g = diagram_of(w4)
    l = RootLattice.coxeter(g)
    assert l.gram == ((2, -2), (-2, 2))
    # disconnected pair: order 2
    two = SkewMatrix.from_rows([[0, 0], [0, 0]])
    l2 = RootLattice.coxeter(diagram_of(two))
    assert two_infinity_order(l2, (1, 0), (0, 1)) == 2
    # connected pair: order infinity (k = -1)
    assert two_infinity_order(l, (1, 0), (0, 1)) == INFINITY
    # u = s_j(alpha_i) = alpha_i + 2 alpha_j against v = alpha_j: 2k = 2
    u = reflect(l, (0, 1), (1, 0))
    assert u == (1, 2)
    assert two_infinity_order(l, u, (0, 1)) == INFINITY
    with pytest.raises(PreconditionViolated):
        two_infinity_order(l, (1, 2), (-1, -2))
    with pytest.raises(PreconditionViolated):
        RootLattice.coxeter(diagram_of(SkewMatrix.from_rows([[0, 1], [-1, 0]])))


def test_two_infinity_checks_form():
    m = SkewMatrix.from_rows([[0, 1], [-1, 0]])
    l = RootLattice.from_acyclic(m)  # off-diagonal -1: not a {2,inf} system
    with pytest.raises(PreconditionViolated):
        two_infinity_order(l, (1, 0), (0, 1))


def test_walk_rank2_flips_only():
    m = SkewMatrix.from_rows([[0, 2], [-2, 0]])
    rep = check_weight_ge4_walk(m, steps=1000, seed=7)
    assert rep.steps_taken == 1000
    assert rep.min_weight == 4
    assert rep.violation is None


def test_walk_requires_ge4_seed(a3):
    with pytest.raises(PreconditionViolated):
        check_weight_ge4_walk(a3, steps=10, seed=0)


def test_walk_respects_entry_cap():
    m = SkewMatrix.from_rows([[0, 2, 0], [-2, 0, 2], [0, -2, 0]])
    rep = check_weight_ge4_walk(m, steps=300, seed=3, entry_cap=10**6)
    assert rep.violation is None
    assert rep.steps_taken == 300
    assert rep.min_weight >= 4


def test_walk_deterministic():
    m = SkewMatrix.from_rows([[0, 2, 0], [-2, 0, 2], [0, -2, 0]])
    r1 = check_weight_ge4_walk(m, steps=100, seed=11)
    r2 = check_weight_ge4_walk(m, steps=100, seed=11)
    assert r1 == r2


def test_affine_dn_check_sizes():
    for size in (5, 6):
        bs, labeling = dn_pattern_basis(size)
        assert affine_dn_check(bs, labeling)


def test_affine_dn_check_requires_normalization():
    bs, labeling = dn_pattern_basis(5)
    broken = apply_basis_signs(bs, (1, 1, 1, -1, 1))
    with pytest.raises(NormalizationRequired):
        affine_dn_check(broken, labeling)


def test_affine_dn_check_rejects_wrong_pattern(a3):
    m, c, bs = companion_basis_for(a3, [], -1)
    with pytest.raises(ValueError):
        affine_dn_check(bs, [1, 2, 3])


def test_relation_reports_scan(a3):
    m, c, bs = companion_basis_for(a3, [2], -1)
    g = diagram_of(m)
    reports = relation_reports(g, basis=bs, verify=True)
    kinds = [r.kind for r in reports]
    assert kinds.count("pair") == 3
    assert kinds.count("cycle") == 3
    assert all(r.verified == "proven-finite-by-matrix" for r in reports)
    through = relation_reports(g, basis=bs, through=2, verify=True)
    assert all(r.kind == "cycle" for r in through)


def test_pair_order_agrees_with_edge_table_on_walks():
    rng = random.Random(55)
    for m, seq in walks(seed=55, count=25, length=4):
        try:
            mm, c, bs = companion_basis_for(m, seq, -1)
        except Exception:
            continue
        g = diagram_of(mm)
        table = edge_order_table(g)
        l = bs.lattice
        for (i, j), expected_m in table.items():
            if g.weight_between(i, j) == 0:
                continue
            x, got_m = pair_order(l, bs.vectors[j - 1], bs.vectors[i - 1])
            assert got_m == expected_m
            assert x == g.weight_between(i, j)
