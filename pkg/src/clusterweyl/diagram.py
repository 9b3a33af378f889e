"""Diagrams of skew-symmetrizable matrices and diagram mutation.

The diagram of B has a directed edge from i to j exactly when B[j][i] > 0
(1-based), carrying weight |B[i][j]*B[j][i]|.  A standalone diagram is a
weighted digraph with no loops or 2-cycles in which the weight product
along every cycle of the underlying graph is a perfect square; that
property is what lets diagram mutation update weights through
sqrt(alpha*beta) = +-sqrt(gamma) +- sqrt(gamma') exactly.

Chordless-cycle enumeration is exponential in the worst case; the
toolkit targets n <= 14.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import networkx as nx

from .errors import InvalidDiagram
from .matrix import SkewMatrix, mutate_matrix
from .sqrtring import squarefree_decompose


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    weight: int


@dataclass(frozen=True)
class Cycle:
    """A chordless cycle of the underlying graph, in canonical order
    (smallest vertex first, smaller neighbor second)."""

    vertices: tuple[int, ...]
    oriented: bool

    def __len__(self) -> int:
        return len(self.vertices)


def _sqfree_mul(s1: int, s2: int) -> int:
    g = gcd(s1, s2)
    return (s1 // g) * (s2 // g)


@dataclass(frozen=True)
class Diagram:
    n: int
    edges: tuple[Edge, ...]

    @classmethod
    def build(cls, n: int, edges) -> "Diagram":
        """Validate and canonicalize an edge list.

        Raises InvalidDiagram on loops, repeated pairs, nonpositive
        weights, out-of-range vertices, or a cycle whose weight product
        is not a perfect square.
        """
        seen_pairs = set()
        clean = []
        for e in edges:
            if isinstance(e, Edge):
                t, h, w = e.tail, e.head, e.weight
            elif isinstance(e, dict):
                t, h, w = int(e["tail"]), int(e["head"]), int(e["weight"])
            else:
                t, h, w = (int(x) for x in e)
            if not (1 <= t <= n and 1 <= h <= n):
                raise InvalidDiagram(f"edge {t}->{h} out of range 1..{n}")
            if t == h:
                raise InvalidDiagram(f"loop at vertex {t}")
            if w <= 0:
                raise InvalidDiagram(f"edge {t}->{h} has nonpositive weight {w}")
            pair = frozenset((t, h))
            if pair in seen_pairs:
                raise InvalidDiagram(f"two edges between {t} and {h}")
            seen_pairs.add(pair)
            clean.append(Edge(t, h, w))
        g = cls(n=n, edges=tuple(sorted(clean, key=lambda e: (e.tail, e.head))))
        g._check_square_property()
        return g

    def _check_square_property(self) -> None:
        # Product of weights along any cycle is a perfect square iff the
        # square-free signature of the weights is a coboundary: assign a
        # signature x_v per vertex over a spanning forest and check every
        # non-tree edge.
        sig = {}
        for e in self.edges:
            _, s = squarefree_decompose(e.weight)
            sig[frozenset((e.tail, e.head))] = s
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for e in self.edges:
            adj[e.tail].append(e.head)
            adj[e.head].append(e.tail)
        x: dict[int, int] = {}
        for root in range(1, self.n + 1):
            if root in x:
                continue
            x[root] = 1
            stack = [root]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    s = sig[frozenset((v, w))]
                    if w not in x:
                        x[w] = _sqfree_mul(x[v], s)
                        stack.append(w)
                    elif _sqfree_mul(x[v], x[w]) != s:
                        raise InvalidDiagram(
                            "cycle weight product through "
                            f"{v} and {w} is not a perfect square"
                        )

    @cached_property
    def edge_map(self) -> dict[tuple[int, int], int]:
        """(tail, head) -> weight."""
        return {(e.tail, e.head): e.weight for e in self.edges}

    def weight_between(self, i: int, j: int) -> int:
        """Weight of the edge between i and j in either direction, else 0."""
        return self.edge_map.get((i, j), 0) or self.edge_map.get((j, i), 0)

    def has_edge(self, tail: int, head: int) -> bool:
        return (tail, head) in self.edge_map

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "edges": [
                {"tail": e.tail, "head": e.head, "weight": e.weight} for e in self.edges
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        return cls.build(int(data["n"]), data.get("edges", []))


def diagram_of(m: SkewMatrix) -> Diagram:
    """The diagram of a skew-symmetrizable matrix."""
    edges = []
    for i in range(m.n):
        for j in range(m.n):
            if m.b[j][i] > 0:
                edges.append(Edge(i + 1, j + 1, abs(m.b[i][j] * m.b[j][i])))
    return Diagram.build(m.n, edges)


def mutate_diagram(g: Diagram, k: int) -> Diagram:
    """Diagram mutation at vertex k.

    Edges at k reverse; for each oriented two-edge path i -> k -> j the
    edge between i and j is replaced according to
    +-sqrt(gamma) +- sqrt(gamma') = sqrt(alpha*beta), the sign being "+"
    exactly when i, j, k form an oriented triangle (in the old diagram
    for gamma, in the new one for gamma').  Commutes with matrix
    mutation through diagram_of.
    """
    if not 1 <= k <= g.n:
        raise IndexError(f"vertex {k} out of range 1..{g.n}")
    emap = g.edge_map
    ins = [t for (t, h) in emap if h == k]
    outs = [h for (t, h) in emap if t == k]

    new_edges: dict[tuple[int, int], int] = {}
    touched: set[frozenset[int]] = set()

    for t, h in emap:
        if t == k or h == k:
            new_edges[(h, t)] = emap[(t, h)]
            touched.add(frozenset((t, h)))

    for i in ins:
        for j in outs:
            if i == j:
                continue
            pair = frozenset((i, j))
            touched.add(pair)
            alpha = emap[(i, k)]
            beta = emap[(k, j)]
            if (j, i) in emap:
                gamma, gsign = emap[(j, i)], 1  # i,j,k oriented in the old diagram
            elif (i, j) in emap:
                gamma, gsign = emap[(i, j)], -1
            else:
                gamma, gsign = 0, 0
            c1, s1 = squarefree_decompose(alpha * beta)
            if gamma == 0:
                t_val, s = c1, s1
            else:
                c2, s2 = squarefree_decompose(gamma)
                if s1 != s2:
                    raise InvalidDiagram(
                        f"sqrt({alpha * beta}) and sqrt({gamma}) do not combine; "
                        f"corrupted input around {i},{k},{j}"
                    )
                t_val, s = c1 - gsign * c2, s1
            gamma_new = t_val * t_val * s
            if gamma_new > 0:
                # + before sqrt(gamma') means i,j,k oriented after mutation,
                # whose reversed edges at k force the direction i -> j.
                if t_val > 0:
                    new_edges[(i, j)] = gamma_new
                else:
                    new_edges[(j, i)] = gamma_new

    for (t, h), w in emap.items():
        if frozenset((t, h)) not in touched:
            new_edges[(t, h)] = w

    return Diagram.build(g.n, [Edge(t, h, w) for (t, h), w in new_edges.items()])


def is_acyclic(g: Diagram) -> bool:
    """True when the diagram has no oriented cycle (iterative DFS)."""
    adj: dict[int, list[int]] = {v: [] for v in range(1, g.n + 1)}
    for e in g.edges:
        adj[e.tail].append(e.head)
    state = {v: 0 for v in range(1, g.n + 1)}  # 0 unseen, 1 active, 2 done
    for root in range(1, g.n + 1):
        if state[root]:
            continue
        stack = [(root, iter(adj[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if state[w] == 1:
                    return False
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                state[v] = 2
                stack.pop()
    return True


def _canonical_cycle(vs: list[int]) -> tuple[int, ...]:
    m = min(vs)
    i = vs.index(m)
    rot = vs[i:] + vs[:i]
    if rot[1] > rot[-1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def enumerate_cycles(g: Diagram) -> list[Cycle]:
    """All chordless (induced) cycles of the underlying graph, each once
    up to rotation and reflection, flagged oriented when the edges run
    cyclically in one direction."""
    ug = nx.Graph()
    ug.add_nodes_from(range(1, g.n + 1))
    for e in g.edges:
        ug.add_edge(e.tail, e.head)
    emap = g.edge_map
    out = []
    for raw in nx.chordless_cycles(ug):
        vs = _canonical_cycle(list(raw))
        pairs = list(zip(vs, vs[1:] + vs[:1]))
        forward = all(p in emap for p in pairs)
        backward = all((h, t) in emap for (t, h) in pairs)
        out.append(Cycle(vertices=vs, oriented=forward or backward))
    out.sort(key=lambda c: (len(c.vertices), c.vertices))
    return out


def directed_cycle_order(g: Diagram, cycle: Cycle, start: int) -> list[int]:
    """Vertices of an oriented cycle starting at `start`, following the
    edge directions."""
    if start not in cycle.vertices:
        raise ValueError(f"vertex {start} is not on the cycle")
    vs = cycle.vertices
    pairs = list(zip(vs, vs[1:] + vs[:1]))
    if all(p in g.edge_map for p in pairs):
        order = list(vs)
    elif all((h, t) in g.edge_map for (t, h) in pairs):
        order = [vs[0]] + list(vs[:0:-1])
    else:
        raise ValueError("cycle is not oriented")
    i = order.index(start)
    return order[i:] + order[:i]


def acyclic_ancestor(
    m: SkewMatrix, max_depth: int = 10, max_states: int = 50000
) -> tuple[SkewMatrix, list[int]]:
    """BFS through the mutation class for a matrix with acyclic diagram.

    Returns (m0, seq) with apply_sequence(m0, seq) == m.  Raises
    ValueError when no acyclic representative shows up within the
    search bounds.
    """
    if is_acyclic(diagram_of(m)):
        return m, []
    seen = {m.b: (None, 0)}
    frontier = [m]
    for depth in range(1, max_depth + 1):
        nxt = []
        for cur in frontier:
            for k in range(1, m.n + 1):
                child = mutate_matrix(cur, k)
                if child.b in seen:
                    continue
                seen[child.b] = (cur.b, k)
                if len(seen) > max_states:
                    raise ValueError("mutation-class search exceeded state bound")
                if is_acyclic(diagram_of(child)):
                    seq = []
                    key = child.b
                    while seen[key][0] is not None:
                        parent, kk = seen[key]
                        seq.append(kk)
                        key = parent
                    # path child -> m mutates at the recorded vertices in order
                    return child, seq
                nxt.append(child)
        frontier = nxt
    raise ValueError(f"no acyclic diagram within {max_depth} mutations")
