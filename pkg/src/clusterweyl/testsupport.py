"""Shared constructors for checks that need a prepared companion basis.

The D-type pattern lives here: the diagram with spikes 1 -> 3 and
2 -> 3 on the oriented cycle 3 -> 4 -> ... -> size -> 3.  Its basis is
obtained by locating an acyclic ancestor by breadth-first search,
threading the simple basis back along the reversed path, and flipping
signs until the cycle-closing edge {3, size} carries the positive
companion entry.
"""

from __future__ import annotations

from .companion import solve_edge_signs
from .diagram import acyclic_ancestor
from .errors import CannotNormalize
from .matrix import SkewMatrix, mutate_matrix
from .relations import dn_pattern_edges
from .roots import CompanionBasis, apply_basis_signs, companion_basis_for


def mutation_class_states(
    m0: SkewMatrix, depth: int, max_states: int = 100000
) -> list[tuple[SkewMatrix, list[int]]]:
    """Breadth-first enumeration of all matrices within `depth` mutations
    of m0, each with one discovery path from m0."""
    seen = {m0.b}
    out = [(m0, [])]
    frontier = [(m0, [])]
    for _ in range(depth):
        nxt = []
        for m, path in frontier:
            for k in range(1, m0.n + 1):
                child = mutate_matrix(m, k)
                if child.b in seen:
                    continue
                seen.add(child.b)
                if len(seen) > max_states:
                    raise ValueError("mutation class exceeded the state bound")
                entry = (child, path + [k])
                out.append(entry)
                nxt.append(entry)
        frontier = nxt
    return out


def dn_pattern_matrix(size: int) -> SkewMatrix:
    """The skew-symmetric matrix of the size-vertex pattern, every edge
    of weight 1."""
    b = [[0] * size for _ in range(size)]
    for tail, head in dn_pattern_edges(size):
        b[head - 1][tail - 1] = 1
        b[tail - 1][head - 1] = -1
    return SkewMatrix.from_rows(b)


def theta_matrix(
    path_lengths: tuple[int, ...], cross_edges: tuple[tuple[int, int], ...] = ()
) -> SkewMatrix:
    """A skew-symmetric matrix whose diagram is a theta graph: vertex 1
    (= j) joined to vertex 2 (= i) by the closing edge 2 -> 1 and by
    parallel directed paths with the given interior lengths, every edge
    of weight 1.  cross_edges are extra (tail, head) pairs between
    interiors.

    Interiors are numbered 3, 4, ... in path order.
    """
    n = 2 + sum(path_lengths)
    edges = [(2, 1)]
    nxt = 3
    for length in path_lengths:
        chain = [1] + list(range(nxt, nxt + length)) + [2]
        edges.extend(zip(chain, chain[1:]))
        nxt += length
    edges.extend(cross_edges)
    b = [[0] * n for _ in range(n)]
    for tail, head in edges:
        b[head - 1][tail - 1] = 1
        b[tail - 1][head - 1] = -1
    return SkewMatrix.from_rows(b)


def dn_pattern_basis(size: int) -> tuple[CompanionBasis, list[int]]:
    """A companion basis realizing a normalized admissible companion of
    the pattern matrix, plus the identity labeling."""
    m = dn_pattern_matrix(size)
    m0, seq = acyclic_ancestor(m)
    _, c, bs = companion_basis_for(m0, seq, -1)
    targets = {
        frozenset((p, q)): (1 if {p, q} == {3, size} else -1)
        for p, q in dn_pattern_edges(size)
    }
    eps = solve_edge_signs(c, targets)
    if eps is None:
        raise CannotNormalize(
            "pattern sign normalization is infeasible; companion not admissible"
        )
    return apply_basis_signs(bs, eps), list(range(1, size + 1))
