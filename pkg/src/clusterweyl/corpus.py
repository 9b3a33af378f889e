"""Random generation of skew-symmetrizable matrices for tests and
batch sweeps.

Matrices are sampled acyclic-first: pick a random vertex order, wire
forward edges with entries scaled so a chosen positive diagonal
symmetrizes them.  Skew-symmetrizability therefore holds by
construction, and the diagram is acyclic; general corpus members come
from mutating these seeds.
"""

from __future__ import annotations

import random
from math import lcm

from .matrix import SkewMatrix, apply_sequence


def random_acyclic_matrix(
    rng: random.Random,
    n: int,
    edge_prob: float = 0.5,
    d_choices: tuple[int, ...] = (1, 2),
    multiplier_choices: tuple[int, ...] = (1,),
    max_abs_entry: int = 3,
) -> SkewMatrix:
    """A random skew-symmetrizable matrix whose diagram is acyclic.

    For an edge between u (earlier in the sampled order) and v the
    entries are b[u][v] = -k*L/d_u, b[v][u] = k*L/d_v with
    L = lcm(d_u, d_v), which the diagonal d symmetrizes; candidate
    multipliers k that would push entries past max_abs_entry are
    dropped.
    """
    order = rng.sample(range(n), n)
    d = [rng.choice(d_choices) for _ in range(n)]
    b = [[0] * n for _ in range(n)]
    for s in range(n):
        for t in range(s + 1, n):
            if rng.random() >= edge_prob:
                continue
            u, v = order[s], order[t]
            scale = lcm(d[u], d[v])
            base_uv, base_vu = scale // d[u], scale // d[v]
            ks = [
                k
                for k in multiplier_choices
                if k * max(base_uv, base_vu) <= max_abs_entry
            ]
            if not ks:
                continue
            k = rng.choice(ks)
            b[u][v] = -k * base_uv
            b[v][u] = k * base_vu
    return SkewMatrix.from_rows(b)


def random_mutation_sequence(
    rng: random.Random, n: int, length: int, avoid_repeat: bool = True
) -> list[int]:
    """A random vertex sequence in 1..n; immediate repeats (which cancel)
    are skipped by default."""
    seq: list[int] = []
    for _ in range(length):
        k = rng.randint(1, n)
        while avoid_repeat and seq and k == seq[-1] and n > 1:
            k = rng.randint(1, n)
        seq.append(k)
    return seq


def random_matrix(
    rng: random.Random, n: int, walk_length: int = 4, **kwargs
) -> SkewMatrix:
    """A random mutation-class member: an acyclic sample pushed through a
    short random walk."""
    m = random_acyclic_matrix(rng, n, **kwargs)
    return apply_sequence(m, random_mutation_sequence(rng, n, walk_length))
