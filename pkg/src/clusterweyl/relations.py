"""Reflection-group relations read off diagrams and verified by exact
matrix computation.

The order map sends x = <u,v-check><v,u-check> to the order of the
product of the two reflections: 0,1,2,3 give 2,3,4,6 and anything >= 4
gives infinity.  Oriented chordless cycles contribute words
t_i t_{i+1} ... t_{i+d-1} t_{i+d-2} ... t_{i+1}; systems of disjoint
paths closing one edge contribute t_j t^(1)..t^(r) t_i t^(-r)..t^(-1),
with x built in the square-root ring from edge weights.  Words act on
column vectors, leftmost factor applied last.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from .companion import Companion
from .diagram import Cycle, Diagram, directed_cycle_order, enumerate_cycles
from .errors import (
    CannotNormalize,
    NegativeX,
    NormalizationRequired,
    NotInduced,
    NotOriented,
    PreconditionViolated,
    VerificationFailed,
)
from .matrix import IntMatrix, SkewMatrix, mutate_matrix
from .roots import CompanionBasis, RootLattice, Vec, bilinear, gram_pairing
from .sqrtring import SqrtNum

INFINITY = float("inf")

_ORDER_TABLE = {0: 2, 1: 3, 2: 4, 3: 6}


def order_from_x(x: int):
    """The x -> m table: {0: 2, 1: 3, 2: 4, 3: 6, >=4: inf}."""
    if x < 0:
        raise NegativeX(f"x = {x} cannot be the square of a real number")
    return _ORDER_TABLE.get(x, INFINITY)


def _m_json(m):
    return "inf" if m == INFINITY else m


@dataclass(frozen=True)
class RelationReport:
    kind: str  # pair | cycle | path-system | affine-dn
    word: tuple[int, ...]  # 1-based basis indices; negative = inverse segment
    x: int
    m: int | float
    verified: str = "unverified"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "word": list(self.word),
            "x": self.x,
            "m": _m_json(self.m),
            "verified": self.verified,
        }


def pair_order(l: RootLattice, u: Vec, v: Vec) -> tuple[int, int | float]:
    """x = <u,v-check><v,u-check> and the order of s_u s_v.

    Requires linearly independent real roots.
    """
    n = len(u)
    if all(u[i] * v[j] == u[j] * v[i] for i in range(n) for j in range(i + 1, n)):
        raise ValueError("vectors are linearly dependent")
    x = gram_pairing(l, u, v) * gram_pairing(l, v, u)
    return x, order_from_x(x)


def edge_order_table(g: Diagram) -> dict[tuple[int, int], int | float]:
    """m_{ij} for every unordered pair: 2 when not connected, else
    3/4/6 for weights 1/2/3 and infinity for weight >= 4."""
    out = {}
    for i in range(1, g.n + 1):
        for j in range(i + 1, g.n + 1):
            w = g.weight_between(i, j)
            if w == 0:
                out[(i, j)] = 2
            elif w in (1, 2, 3):
                out[(i, j)] = {1: 3, 2: 4, 3: 6}[w]
            else:
                out[(i, j)] = INFINITY
    return out


def _check_induced(g: Diagram, vertices: tuple[int, ...]) -> None:
    d = len(vertices)
    for s in range(d):
        for t in range(s + 1, d):
            adjacent_on_cycle = (t - s == 1) or (s == 0 and t == d - 1)
            if not adjacent_on_cycle and g.weight_between(vertices[s], vertices[t]):
                raise NotInduced(
                    f"chord between {vertices[s]} and {vertices[t]}"
                )


def cycle_relation(g: Diagram, cycle: Cycle, i: int) -> RelationReport:
    """The relation of an oriented chordless cycle read from vertex i.

    With the cycle traversed along its orientation as i -> v1 -> ... and
    q_t the square roots of the successive edge weights,
    x = (q_i ... q_{i+d-2} - q_{i+d-1})^2; the word is
    t_i t_{i+1} ... t_{i+d-1} t_{i+d-2} ... t_{i+1}.
    """
    if not cycle.oriented:
        raise NotOriented(f"cycle {cycle.vertices} is not oriented")
    _check_induced(g, cycle.vertices)
    order = directed_cycle_order(g, cycle, i)
    d = len(order)
    weights = [
        g.edge_map[(order[t], order[(t + 1) % d])] for t in range(d)
    ]
    head = SqrtNum.from_int(1)
    for w in weights[:-1]:
        head = head * SqrtNum.from_sqrt(w)
    diff = head - SqrtNum.from_sqrt(weights[-1])
    x = (diff * diff).as_integer()
    word = tuple(order) + tuple(order[-2:0:-1])
    return RelationReport(kind="cycle", word=word, x=x, m=order_from_x(x))


@dataclass(frozen=True)
class PathSystem:
    """An edge i -> j together with disjoint directed paths from j back
    to i, each closing an oriented chordless cycle."""

    diagram: Diagram
    i: int
    j: int
    a: int
    paths: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, g: Diagram, i: int, j: int, paths) -> "PathSystem":
        paths = tuple(tuple(p) for p in paths)
        if not g.has_edge(i, j):
            raise ValueError(f"no edge {i} -> {j}")
        a = g.edge_map[(i, j)]
        seen: set[int] = set()
        for p in paths:
            if not p:
                raise ValueError("a path needs at least one interior vertex")
            if seen & set(p):
                raise ValueError("paths share an interior vertex")
            if {i, j} & set(p):
                raise ValueError("path interiors may not contain the end vertices")
            seen |= set(p)
            chain = (j,) + p + (i,)
            for t in range(len(chain) - 1):
                if not g.has_edge(chain[t], chain[t + 1]):
                    raise ValueError(
                        f"missing directed edge {chain[t]} -> {chain[t + 1]}"
                    )
            _check_induced(g, chain)  # the closing edge i -> j makes this a cycle
        return cls(diagram=g, i=i, j=j, a=a, paths=paths)

    def interiors(self) -> list[int]:
        return [v for p in self.paths for v in p]

    def vertices(self) -> list[int]:
        return [self.j, self.i] + self.interiors()

    def path_edges(self) -> list[tuple[int, int]]:
        """Directed edges along the paths, plus the closing edge i -> j."""
        out = [(self.i, self.j)]
        for p in self.paths:
            chain = (self.j,) + p + (self.i,)
            out.extend(zip(chain, chain[1:]))
        return out

    def word(self) -> tuple[int, ...]:
        """t_j t^(1)...t^(r) t_i t^(-r)...t^(-1), inverse segments
        spelled reversed and marked negative."""
        fwd = [v for p in self.paths for v in p]
        rev = [-v for p in reversed(self.paths) for v in reversed(p)]
        return (self.j, *fwd, self.i, *rev)

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "a": self.a,
            "paths": [list(p) for p in self.paths],
        }


def enumerate_increasing_paths(
    ps: PathSystem, policy: str = "strict"
) -> list[tuple[tuple[int, ...], int]]:
    """All increasing paths from j to i inside the path subdiagram,
    each with its weight (the product of its edge weights).

    The first edge leaves j and the last enters i along their
    orientations; interior edges may be walked either way.  Under the
    default "strict" policy interior vertices must appear in strictly
    increasing order of the concatenated word p_1...p_r, which is the
    traversal the mutation word actually performs; "loose" only asks for
    nondecreasing path membership along a simple path.
    """
    return increasing_paths_from(ps, ps.j, policy)


def increasing_paths_from(
    ps: PathSystem, start: int, policy: str = "strict"
) -> list[tuple[tuple[int, ...], int]]:
    """Increasing paths from a vertex of the system (j or an interior)
    to i; see enumerate_increasing_paths."""
    if policy not in ("strict", "loose"):
        raise ValueError(f"unknown traversal policy {policy!r}")
    emap = ps.diagram.edge_map
    word_pos = {}
    path_index = {}
    pos = 0
    for k, p in enumerate(ps.paths, start=1):
        for v in p:
            word_pos[v] = pos
            path_index[v] = k
            pos += 1
    interiors = set(word_pos)

    def interior_neighbors(v: int):
        for w in interiors:
            if w == v:
                continue
            weight = emap.get((v, w)) or emap.get((w, v))
            if weight:
                yield w, weight

    results: list[tuple[tuple[int, ...], int]] = []

    def dfs(cur: int, visited: frozenset[int], verts: tuple[int, ...], weight: int):
        if (cur, ps.i) in emap:
            results.append((verts + (ps.i,), weight * emap[(cur, ps.i)]))
        for nxt, w in interior_neighbors(cur):
            if nxt in visited:
                continue
            if policy == "strict":
                if word_pos[nxt] <= word_pos[cur]:
                    continue
            else:
                if path_index[nxt] < path_index[cur]:
                    continue
            dfs(nxt, visited | {nxt}, verts + (nxt,), weight * w)

    if start == ps.j:
        for (t, h), w in emap.items():
            if t == ps.j and h in interiors:
                dfs(h, frozenset((h,)), (ps.j, h), w)
    elif start in interiors:
        dfs(start, frozenset((start,)), (start,), 1)
    else:
        raise ValueError(f"vertex {start} is not part of the path system")
    results.sort()
    return results


def _require_normalized(c: Companion, ps: PathSystem) -> None:
    a = c.a
    if a[ps.i - 1][ps.j - 1] <= 0:
        raise NormalizationRequired(
            f"companion entry at the closing edge ({ps.i},{ps.j}) must be positive"
        )
    vs = set(ps.vertices())
    for u in vs:
        for v in vs:
            if u < v and {u, v} != {ps.i, ps.j} and a[u - 1][v - 1] > 0:
                raise NormalizationRequired(
                    f"companion entry at ({u},{v}) must be nonpositive"
                )


def path_system_relation(
    ps: PathSystem,
    basis: CompanionBasis | None = None,
    c: Companion | None = None,
    policy: str = "strict",
) -> RelationReport:
    """The relation of a path system: x = (sqrt(a) - sum sqrt(w(q)))^2
    over increasing paths q, reduced to an integer in the square-root
    ring."""
    if c is not None:
        _require_normalized(c, ps)
    total = SqrtNum.from_int(0)
    for _, w in enumerate_increasing_paths(ps, policy):
        total = total + SqrtNum.from_sqrt(w)
    diff = SqrtNum.from_sqrt(ps.a) - total
    x = (diff * diff).as_integer()
    rep = RelationReport(kind="path-system", word=ps.word(), x=x, m=order_from_x(x))
    return rep


def normalize_signs(c: Companion, ps: PathSystem) -> tuple[Companion, tuple[int, ...]]:
    """Sign-change a companion so the closing edge entry is positive and
    every other edge of the path subdiagram carries a nonpositive entry.

    Replays the constructive sweep: fix the closing edge by a sign
    change at i if needed, then walk each path from j flipping at the
    head of the first positive edge.  For an admissible companion one
    forward pass per path lands on the target; anything left over
    raises CannotNormalize.
    """
    from .companion import apply_sign_vector

    n = c.matrix.n
    eps = [1] * n

    def flip(k: int) -> None:
        eps[k - 1] = -eps[k - 1]

    a = [list(r) for r in c.a]

    def entry(u, v):
        return eps[u - 1] * eps[v - 1] * a[u - 1][v - 1]

    if entry(ps.i, ps.j) < 0:
        flip(ps.i)
    for p in ps.paths:
        chain = (ps.j,) + p + (ps.i,)
        for t in range(len(chain) - 1):
            u, v = chain[t], chain[t + 1]
            if entry(u, v) > 0:
                if v in (ps.i, ps.j):
                    raise CannotNormalize(
                        f"positive entry on edge ({u},{v}) cannot be swept further; "
                        "companion is not admissible"
                    )
                flip(v)
    vs = set(ps.vertices())
    for u in vs:
        for v in vs:
            if u < v and {u, v} != {ps.i, ps.j} and entry(u, v) > 0:
                raise CannotNormalize(
                    f"cross edge ({u},{v}) stayed positive after the sweep; "
                    "companion is not admissible"
                )
    if entry(ps.i, ps.j) < 0:
        raise CannotNormalize("closing edge lost its positive sign during the sweep")
    eps_t = tuple(eps)
    return apply_sign_vector(c, eps_t), eps_t


def path_systems_in(g: Diagram, max_r: int = 3) -> list[PathSystem]:
    """Every path system of the diagram with up to max_r paths: pick an
    edge lying on oriented chordless cycles and bundle interior-disjoint
    cycles through it."""
    from itertools import combinations

    by_edge: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for cycle in enumerate_cycles(g):
        if not cycle.oriented:
            continue
        for s in range(len(cycle.vertices)):
            start = cycle.vertices[s]
            order = directed_cycle_order(g, cycle, start)
            i, j = order[0], order[1]
            # the cycle reads i -> j -> interiors -> i; the path runs j -> i
            by_edge.setdefault((i, j), []).append(tuple(order[2:]))
    out: list[PathSystem] = []
    for (i, j), tails in sorted(by_edge.items()):
        paths = [tuple(t) for t in tails]
        for r in range(1, max_r + 1):
            for combo in combinations(range(len(paths)), r):
                chosen = [paths[t] for t in combo]
                interiors = [v for p in chosen for v in p]
                if len(set(interiors)) != len(interiors):
                    continue
                out.append(PathSystem.build(g, i, j, chosen))
    return out


# -- exact matrix machinery -------------------------------------------------


def mat_identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def word_matrix(rep: RelationReport, basis: CompanionBasis) -> IntMatrix:
    """Product of the word's reflection matrices, leftmost factor
    outermost (applied last to column vectors)."""
    m = mat_identity(basis.lattice.n)
    for v in rep.word:
        m = mat_mul(m, basis.reflection(abs(v)))
    return m


def verify_relation(
    rep: RelationReport,
    basis: CompanionBasis,
    strict: bool = True,
    infinite_power_bound: int = 60,
) -> RelationReport:
    """Verify a relation report against a companion basis.

    Finite m: the word matrix must have exact order m.  Infinite m: the
    certificate is x >= 4, backed by checking that no power up to the
    bound is the identity.  Failures raise VerificationFailed carrying
    the smallest failing power, or mark the report "failed" when
    strict=False.
    """
    n = basis.lattice.n
    eye = mat_identity(n)
    w = word_matrix(rep, basis)

    def fail(msg: str, power: int | None) -> RelationReport:
        if strict:
            raise VerificationFailed(msg, failing_power=power)
        return replace(rep, verified="failed")

    if rep.m == INFINITY:
        if rep.x < 4:
            return fail(f"x = {rep.x} < 4 cannot certify infinite order", None)
        acc = eye
        for p in range(1, infinite_power_bound + 1):
            acc = mat_mul(acc, w)
            if acc == eye:
                return fail(f"word matrix has finite order {p}", p)
        return replace(rep, verified="certified-infinite-by-x")

    acc = eye
    for p in range(1, rep.m + 1):
        acc = mat_mul(acc, w)
        if acc == eye and p < rep.m:
            return fail(f"word matrix already trivial at power {p} < {rep.m}", p)
    if acc != eye:
        return fail(f"word matrix power {rep.m} is not the identity", rep.m)
    return replace(rep, verified="proven-finite-by-matrix")


def group_order(generators, cap: int = 10000) -> int | None:
    """Size of the matrix group generated by BFS closure, or None when
    it exceeds cap."""
    gens = [tuple(tuple(int(x) for x in row) for row in g) for g in generators]
    if not gens:
        return 1
    n = len(gens[0])
    eye = mat_identity(n)
    seen = {eye}
    frontier = [eye]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = mat_mul(m, g)
                if prod not in seen:
                    seen.add(prod)
                    if len(seen) > cap:
                        return None
                    nxt.append(prod)
        frontier = nxt
    return len(seen)


def two_infinity_order(l: RootLattice, u: Vec, v: Vec) -> int | float:
    """Order of the product of the reflections of two real roots in a
    Coxeter system whose pair orders are all 2 or infinity.

    In the geometric form (off-diagonal entries 0 or -2) the pairing
    (u,v) is an even integer 2k; the order is 2 exactly when k = 0.
    """
    for i in range(l.n):
        for j in range(l.n):
            if i != j and l.gram[i][j] not in (0, -2):
                raise PreconditionViolated(
                    "lattice form has an off-diagonal entry outside {0, -2}; "
                    "pair orders are not all 2 or infinity"
                )
    if all(
        u[i] * v[j] == u[j] * v[i] for i in range(l.n) for j in range(l.n)
    ):
        raise PreconditionViolated("u = +-v; the product is not a pair of distinct reflections")
    twok = bilinear(l, u, v)
    return 2 if twok == 0 else INFINITY


@dataclass(frozen=True)
class WalkReport:
    steps_requested: int
    steps_taken: int
    min_weight: int
    violation: dict | None
    seed: int
    entry_cap: int
    rejected_moves: int = 0

    def to_json(self) -> dict:
        return {
            "steps_requested": self.steps_requested,
            "steps_taken": self.steps_taken,
            "min_weight": self.min_weight,
            "violation": self.violation,
            "seed": self.seed,
            "entry_cap": self.entry_cap,
            "rejected_moves": self.rejected_moves,
        }


def check_weight_ge4_walk(
    m0: SkewMatrix,
    steps: int,
    seed: int,
    entry_cap: int = 10**15,
    allow_big_entries: bool = False,
) -> WalkReport:
    """Random mutation walk from an all-weights->=4 seed, asserting after
    every step that every edge weight stays >= 4.

    Entries grow roughly doubly exponentially on such seeds, so moves
    that would push any |entry| past entry_cap are resampled (the
    inverse move is always available); pass allow_big_entries=True to
    lift the cap.  A violation would falsify the weight-growth theorem
    and is reported, not raised.  Weights are read straight off the
    matrix; they routinely exceed the square-free factoring comfort
    zone, so no Diagram is built along the walk.
    """

    def weights(m: SkewMatrix) -> list[int]:
        return [
            abs(m.b[i][j] * m.b[j][i])
            for i in range(m.n)
            for j in range(i + 1, m.n)
            if m.b[i][j]
        ]

    w0 = weights(m0)
    if not w0 or min(w0) < 4:
        raise PreconditionViolated("seed must have edges, all of weight >= 4")
    rng = random.Random(seed)
    cur = m0
    min_weight = min(w0)
    rejected = 0
    taken = 0
    violation = None
    for _ in range(steps):
        order = rng.sample(range(1, m0.n + 1), m0.n)
        nxt = None
        for k in order:
            cand = mutate_matrix(cur, k)
            if allow_big_entries or all(
                abs(x) <= entry_cap for row in cand.b for x in row
            ):
                nxt = (cand, k)
                break
            rejected += 1
        if nxt is None:
            break
        cur, k = nxt
        taken += 1
        ws = weights(cur)
        if ws:
            step_min = min(ws)
            min_weight = min(min_weight, step_min)
            if step_min < 4:
                violation = {
                    "step": taken,
                    "vertex": k,
                    "weight": step_min,
                    "matrix": cur.to_json(),
                }
                break
    return WalkReport(
        steps_requested=steps,
        steps_taken=taken,
        min_weight=min_weight,
        violation=violation,
        seed=seed,
        entry_cap=entry_cap,
        rejected_moves=rejected,
    )


# -- the affine D-type pattern ----------------------------------------------


def dn_pattern_edges(size: int) -> list[tuple[int, int]]:
    """Pattern edges for the rank-`size` configuration: spikes 1 -> 3 and
    2 -> 3, and the oriented cycle 3 -> 4 -> ... -> size -> 3."""
    if size < 5:
        raise ValueError("the pattern needs at least 5 vertices")
    edges = [(1, 3), (2, 3)]
    edges += [(t, t + 1) for t in range(3, size)]
    edges.append((size, 3))
    return edges


def affine_dn_check(basis: CompanionBasis, labeling) -> bool:
    """Check the two commuting-reflection relations of the D-type
    pattern: with gamma = beta_1 + beta_2 + beta_3 and
    delta = beta_4 + ... + beta_{n+1} (pattern labels), verify
    (gamma, delta) = 0 and that the squared product of the two composite
    reflections is the identity.

    `labeling` maps pattern positions 1..n+1 to vertex indices.  The
    companion must be normalized so the entry on the cycle-closing edge
    {3, n+1} is +1 and every other pattern edge carries -1; otherwise
    NormalizationRequired is raised.
    """
    if isinstance(labeling, dict):
        size = len(labeling)
        lab = [labeling[t] for t in range(1, size + 1)]
    else:
        lab = list(labeling)
        size = len(lab)
    if size < 5:
        raise ValueError("the pattern needs at least 5 vertices")
    a = basis.companion.a

    def entry(p, q):  # pattern positions
        return a[lab[p - 1] - 1][lab[q - 1] - 1]

    for p, q in dn_pattern_edges(size):
        val = entry(p, q)
        if abs(val) != 1:
            raise ValueError(
                f"pattern edge ({p},{q}) has |entry| {abs(val)}, expected 1"
            )
        want_positive = {p, q} == {3, size}
        if (val > 0) != want_positive:
            raise NormalizationRequired(
                f"pattern edge ({p},{q}) has entry {val}; sign-normalize first"
            )

    l = basis.lattice
    n = l.n

    def vec_sum(positions):
        out = [0] * n
        for p in positions:
            for t in range(n):
                out[t] += basis.vectors[lab[p - 1] - 1][t]
        return tuple(out)

    gamma = vec_sum([1, 2, 3])
    delta = vec_sum(range(4, size + 1))
    if bilinear(l, gamma, delta) != 0:
        return False

    first = [lab[0], lab[1], lab[2], lab[1], lab[0]]
    rising = [lab[t - 1] for t in range(4, size + 1)]
    second = rising + rising[-2::-1]
    word = tuple(first + second)
    rep = RelationReport(kind="affine-dn", word=word, x=0, m=2)
    try:
        verify_relation(rep, basis)
    except VerificationFailed:
        return False
    return True


# -- report scanning over a state -------------------------------------------


def relation_reports(
    g: Diagram,
    basis: CompanionBasis | None = None,
    through: int | None = None,
    verify: bool = False,
) -> list[RelationReport]:
    """Pair reports for every edge and cycle reports for every oriented
    chordless cycle (each starting vertex), optionally restricted to
    cycles through one vertex and verified against a basis."""
    reports: list[RelationReport] = []
    if through is None:
        for e in g.edges:
            i, j = sorted((e.tail, e.head))
            reports.append(
                RelationReport(
                    kind="pair",
                    word=(i, j),
                    x=e.weight,
                    m=order_from_x(e.weight),
                )
            )
    for cycle in enumerate_cycles(g):
        if not cycle.oriented:
            continue
        if through is not None and through not in cycle.vertices:
            continue
        for v in cycle.vertices:
            reports.append(cycle_relation(g, cycle, v))
    if verify and basis is not None:
        reports = [verify_relation(r, basis, strict=False) for r in reports]
    return reports
