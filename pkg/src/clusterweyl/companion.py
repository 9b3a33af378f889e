"""Quasi-Cartan companions of skew-symmetrizable matrices.

A companion differs from B only by off-diagonal signs (diagonal 2,
sign-symmetric, symmetrizable by the same D).  Admissibility asks, on
every chordless cycle of the diagram, for an odd number of positive
entries when the cycle is oriented and an even number otherwise; the
product condition on -A entries reduces to that parity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Cycle, Diagram, diagram_of, enumerate_cycles
from .errors import NotAdmissibleInput, PreconditionViolated, SequenceMismatch
from .matrix import IntMatrix, SkewMatrix, _freeze, apply_sequence, mutate_matrix


@dataclass(frozen=True)
class Companion:
    a: IntMatrix
    matrix: SkewMatrix

    @classmethod
    def build(cls, a, matrix: SkewMatrix) -> "Companion":
        a = _freeze(a)
        n = matrix.n
        if len(a) != n or any(len(r) != n for r in a):
            raise ValueError("companion shape does not match the matrix")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError(f"diagonal entry at {i + 1} is {a[i][i]}, not 2")
            for j in range(n):
                if i == j:
                    continue
                if abs(a[i][j]) != abs(matrix.b[i][j]):
                    raise ValueError(
                        f"|a[{i + 1}][{j + 1}]| differs from |b[{i + 1}][{j + 1}]|"
                    )
                if (a[i][j] > 0) != (a[j][i] > 0):
                    raise ValueError(f"sign symmetry fails at ({i + 1},{j + 1})")
        return cls(a=a, matrix=matrix)

    def entry(self, i: int, j: int) -> int:
        return self.a[i - 1][j - 1]

    def to_json(self) -> dict:
        return {"a": [list(r) for r in self.a], "matrix": self.matrix.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Companion":
        return cls.build(data["a"], SkewMatrix.from_json(data["matrix"]))


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    witness: Cycle | None

    def to_json(self) -> dict:
        return {
            "admissible": self.admissible,
            "witness": list(self.witness.vertices) if self.witness else None,
        }


@dataclass(frozen=True)
class NoSolution:
    """find_admissible found the parity system infeasible; `cycles` is an
    inconsistent subsystem."""

    cycles: tuple[Cycle, ...]


def generalized_cartan(m: SkewMatrix) -> Companion:
    """The companion with every off-diagonal entry -|b[i][j]|."""
    a = tuple(
        tuple(2 if i == j else -abs(m.b[i][j]) for j in range(m.n)) for i in range(m.n)
    )
    return Companion(a=a, matrix=m)


def _positive_edge_count(c: Companion, cycle: Cycle) -> int:
    vs = cycle.vertices
    return sum(
        1 for v, w in zip(vs, vs[1:] + vs[:1]) if c.a[v - 1][w - 1] > 0
    )


def is_admissible(c: Companion, g: Diagram | None = None) -> AdmissibilityReport:
    """Check the cycle sign condition; the witness is the first failing
    chordless cycle in canonical order."""
    if g is None:
        g = diagram_of(c.matrix)
    for cycle in enumerate_cycles(g):
        parity = _positive_edge_count(c, cycle) % 2
        if parity != (1 if cycle.oriented else 0):
            return AdmissibilityReport(admissible=False, witness=cycle)
    return AdmissibilityReport(admissible=True, witness=None)


def mutate_companion(c: Companion, k: int, eps: int, force: bool = False) -> Companion:
    """The eps-mutation of a companion at vertex k, paired with the
    matrix mutation.

    Requires an admissible input: that is the hypothesis under which the
    result is guaranteed to be a companion of the mutated matrix.  Pass
    force=True to apply the formula anyway (no guarantees).  The inverse
    of mutating with eps is mutating with -eps.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if not 1 <= k <= c.matrix.n:
        raise IndexError(f"vertex {k} out of range 1..{c.matrix.n}")
    if not force and not is_admissible(c).admissible:
        raise NotAdmissibleInput("companion is not admissible; pass force=True to override")
    kk = k - 1
    a, b, n = c.a, c.matrix.b, c.matrix.n

    def sgn(x: int) -> int:
        return (x > 0) - (x < 0)

    new = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                new[i][j] = 2
            elif i == kk:
                new[i][j] = eps * sgn(b[kk][j]) * a[kk][j]
            elif j == kk:
                new[i][j] = eps * sgn(b[kk][i]) * a[i][kk]
            else:
                new[i][j] = a[i][j] - sgn(a[i][kk] * a[kk][j]) * max(
                    b[i][kk] * b[kk][j], 0
                )
    mutated = mutate_matrix(c.matrix, k)
    if force:
        # without admissibility the result may fail the companion
        # invariants; hand it back unvalidated, as requested
        return Companion(a=_freeze(new), matrix=mutated)
    return Companion.build(new, mutated)


def sign_change(c: Companion, k: int) -> Companion:
    """Simultaneously negate row k and column k (diagonal untouched)."""
    if not 1 <= k <= c.matrix.n:
        raise IndexError(f"vertex {k} out of range 1..{c.matrix.n}")
    kk = k - 1
    new = [
        [
            -x if (i == kk) != (j == kk) else x
            for j, x in enumerate(row)
        ]
        for i, row in enumerate(c.a)
    ]
    return Companion(a=_freeze(new), matrix=c.matrix)


def apply_sign_vector(c: Companion, eps: tuple[int, ...]) -> Companion:
    """a[i][j] -> eps[i]*eps[j]*a[i][j] for eps in {+-1}^n."""
    new = tuple(
        tuple(eps[i] * eps[j] * x for j, x in enumerate(row))
        for i, row in enumerate(c.a)
    )
    return Companion(a=new, matrix=c.matrix)


def find_admissible(m: SkewMatrix) -> Companion | NoSolution:
    """Search for an admissible companion by solving the cycle parity
    conditions over GF(2), one sign variable per diagram edge.

    Free variables stay negative, so an acyclic diagram yields its
    generalized Cartan companion.  Infeasibility returns NoSolution with
    a contradicting cycle subsystem; on inputs that are mutation-
    equivalent to an acyclic matrix that is evidence against the
    sign-coherence property, not a bug.
    """
    g = diagram_of(m)
    edges = [frozenset((e.tail, e.head)) for e in g.edges]
    index = {pair: i for i, pair in enumerate(edges)}
    cycles = enumerate_cycles(g)

    rows = []
    for ci, cycle in enumerate(cycles):
        vs = cycle.vertices
        mask = 0
        for v, w in zip(vs, vs[1:] + vs[:1]):
            mask |= 1 << index[frozenset((v, w))]
        rows.append((mask, 1 if cycle.oriented else 0, 1 << ci))

    # Gaussian elimination over GF(2), tracking row provenance.
    pivots: dict[int, tuple[int, int, int]] = {}
    for mask, rhs, origin in rows:
        while mask:
            p = mask.bit_length() - 1
            if p not in pivots:
                pivots[p] = (mask, rhs, origin)
                break
            pmask, prhs, porigin = pivots[p]
            mask ^= pmask
            rhs ^= prhs
            origin ^= porigin
        else:
            if rhs:
                bad = tuple(cycles[i] for i in range(len(cycles)) if origin >> i & 1)
                return NoSolution(cycles=bad)

    x = 0
    for p in sorted(pivots):
        pmask, prhs, _ = pivots[p]
        if prhs ^ ((pmask & x).bit_count() & 1):
            x |= 1 << p

    n = m.n
    a = [[2 if i == j else -abs(m.b[i][j]) for j in range(n)] for i in range(n)]
    for pair, idx in index.items():
        if x >> idx & 1:
            i, j = (v - 1 for v in pair)
            a[i][j] = abs(a[i][j])
            a[j][i] = abs(a[j][i])
    return Companion.build(a, m)


def equal_up_to_sign_changes(c1: Companion, c2: Companion) -> tuple[int, ...] | None:
    """A sign vector eps with c2 = eps*c1*eps, or None.

    Both companions must accompany the same matrix.  The vector is found
    by spanning-tree propagation per connected component, rooted at +1.
    """
    if c1.matrix.b != c2.matrix.b:
        raise ValueError("companions accompany different matrices")
    n = c1.matrix.n
    a1, a2 = c1.a, c2.a
    eps = [0] * n
    for root in range(n):
        if eps[root]:
            continue
        eps[root] = 1
        stack = [root]
        while stack:
            v = stack.pop()
            for w in range(n):
                if w == v or a1[v][w] == 0 or eps[w]:
                    continue
                same = (a1[v][w] > 0) == (a2[v][w] > 0)
                eps[w] = eps[v] if same else -eps[v]
                stack.append(w)
    for i in range(n):
        for j in range(n):
            if a2[i][j] != eps[i] * eps[j] * a1[i][j]:
                return None
    return tuple(eps)


def solve_edge_signs(
    c: Companion, targets: dict[frozenset[int], int]
) -> tuple[int, ...] | None:
    """A sign vector eps giving eps_i*eps_j*a[i][j] the requested sign on
    each constrained pair, or None when the parity constraints clash.

    Unconstrained components default to +1.
    """
    n = c.matrix.n
    a = c.a
    adj: dict[int, list[tuple[int, bool]]] = {v: [] for v in range(n)}
    for pair, want in targets.items():
        i, j = (v - 1 for v in pair)
        if a[i][j] == 0:
            return None
        flip = (a[i][j] > 0) != (want > 0)
        adj[i].append((j, flip))
        adj[j].append((i, flip))
    eps = [0] * n
    for root in range(n):
        if eps[root]:
            continue
        eps[root] = 1
        stack = [root]
        while stack:
            v = stack.pop()
            for w, flip in adj[v]:
                need = -eps[v] if flip else eps[v]
                if eps[w] == 0:
                    eps[w] = need
                    stack.append(w)
                elif eps[w] != need:
                    return None
    return tuple(eps)


def canonical_signs(c: Companion) -> IntMatrix:
    """Canonical representative of the orbit of c under simultaneous
    sign changes: component roots get +1 and spanning-tree entries are
    forced negative.  Two companions are sign-change equivalent iff
    their canonical forms coincide."""
    n = c.matrix.n
    a = c.a
    eps = [0] * n
    for root in range(n):
        if eps[root]:
            continue
        eps[root] = 1
        stack = [root]
        while stack:
            v = stack.pop()
            for w in range(n):
                if w == v or a[v][w] == 0 or eps[w]:
                    continue
                # pin eps[v]*eps[w]*a[v][w] < 0 on the tree edge
                eps[w] = -eps[v] if a[v][w] > 0 else eps[v]
                stack.append(w)
    return tuple(
        tuple(eps[i] * eps[j] * a[i][j] for j in range(n)) for i in range(n)
    )


def reachability_check(
    m0: SkewMatrix,
    seq,
    c: Companion,
    eps_policy: int | list[int] | None = None,
) -> bool:
    """Can c be reached from the generalized Cartan companion of m0 by
    eps-mutations along seq, up to simultaneous sign changes?

    With eps_policy None every per-step sign is tried; mutation commutes
    with sign changes, so states are deduplicated by their canonical
    sign form.  A fixed policy (one sign, or one sign per step) prunes
    the search to a single branch per step.
    """
    from .diagram import is_acyclic  # local import keeps module load light

    seq = list(seq)
    if not is_acyclic(diagram_of(m0)):
        raise PreconditionViolated("seed diagram must be acyclic")
    end = apply_sequence(m0, seq)
    if end.b != c.matrix.b:
        raise SequenceMismatch("sequence applied to the seed does not reach c's matrix")

    if isinstance(eps_policy, int):
        eps_choices = [[eps_policy]] * len(seq)
    elif eps_policy is None:
        eps_choices = [[-1, 1]] * len(seq)
    else:
        if len(eps_policy) != len(seq):
            raise ValueError("eps policy length differs from the sequence length")
        eps_choices = [[e] for e in eps_policy]

    states = {canonical_signs(generalized_cartan(m0)): generalized_cartan(m0)}
    for k, choices in zip(seq, eps_choices):
        nxt: dict[IntMatrix, Companion] = {}
        for rep in states.values():
            for eps in choices:
                child = mutate_companion(rep, k, eps)
                nxt.setdefault(canonical_signs(child), child)
        states = nxt
    return canonical_signs(c) in states
