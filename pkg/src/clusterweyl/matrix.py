"""Skew-symmetrizable integer matrices and their mutation.

A matrix B is skew-symmetrizable when D*B is skew-symmetric for some
positive integer diagonal D.  Vertices are 1-based in every public
argument and in JSON; rows and columns of the stored arrays are the
usual 0-based Python indices.  All values are immutable and every
operation is a pure function, so everything here is safe to share
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import NotSkewSymmetrizable

IntMatrix = tuple[tuple[int, ...], ...]


def _freeze(rows) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _support_components(b: IntMatrix) -> list[list[int]]:
    """Connected components of the off-diagonal support graph (0-based)."""
    n = len(b)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        comp, stack = [], [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if not seen[w] and (b[v][w] != 0 or b[w][v] != 0):
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def compute_symmetrizer(b) -> tuple[int, ...]:
    """Componentwise-minimal positive integer d with d[i]b[i][j] = -d[j]b[j][i].

    The ratio d[i]/d[j] is pinned along every edge of the support graph;
    we propagate exact rationals over a spanning forest and check
    consistency on the remaining edges.  Raises NotSkewSymmetrizable on a
    nonzero diagonal, a sign-opposition failure, or inconsistent ratios.
    """
    b = _freeze(b)
    n = len(b)
    if any(len(row) != n for row in b):
        raise NotSkewSymmetrizable("matrix is not square")
    for i in range(n):
        if b[i][i] != 0:
            raise NotSkewSymmetrizable(f"nonzero diagonal entry at {i + 1}")
        for j in range(n):
            if (b[i][j] == 0) != (b[j][i] == 0):
                raise NotSkewSymmetrizable(
                    f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not both zero"
                )
            if b[i][j] * b[j][i] > 0:
                raise NotSkewSymmetrizable(
                    f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) have the same sign"
                )

    ratio: list[Fraction | None] = [None] * n
    d = [0] * n
    for comp in _support_components(b):
        root = comp[0]
        ratio[root] = Fraction(1)
        stack = [root]
        while stack:
            v = stack.pop()
            for w in range(n):
                if b[v][w] == 0:
                    continue
                # d[v]*b[v][w] = -d[w]*b[w][v]  =>  d[w] = d[v]*b[v][w]/(-b[w][v])
                r = ratio[v] * Fraction(b[v][w], -b[w][v])
                if ratio[w] is None:
                    ratio[w] = r
                    stack.append(w)
                elif ratio[w] != r:
                    raise NotSkewSymmetrizable(
                        f"inconsistent symmetrizer ratio around vertices {v + 1},{w + 1}"
                    )
        scale = lcm(*(ratio[v].denominator for v in comp))
        vals = [int(ratio[v] * scale) for v in comp]
        g = gcd(*vals)
        for v, val in zip(comp, vals):
            d[v] = val // g
    return tuple(d)


@dataclass(frozen=True)
class SkewMatrix:
    """A skew-symmetrizable matrix with its canonical minimal symmetrizer."""

    n: int
    b: IntMatrix
    d: tuple[int, ...]

    @classmethod
    def from_rows(cls, rows, d=None) -> "SkewMatrix":
        """Validate rows and attach the canonical symmetrizer.

        When d is supplied it is checked against the matrix, but the
        stored symmetrizer is always the componentwise-minimal one.
        """
        b = _freeze(rows)
        canonical = compute_symmetrizer(b)
        n = len(b)
        if d is not None:
            d = tuple(int(x) for x in d)
            if len(d) != n or any(x <= 0 for x in d):
                raise NotSkewSymmetrizable("supplied symmetrizer is not positive of length n")
            for i in range(n):
                for j in range(n):
                    if d[i] * b[i][j] != -d[j] * b[j][i]:
                        raise NotSkewSymmetrizable(
                            f"supplied symmetrizer fails at ({i + 1},{j + 1})"
                        )
        return cls(n=n, b=b, d=canonical)

    def entry(self, i: int, j: int) -> int:
        """1-based entry access."""
        return self.b[i - 1][j - 1]

    def to_json(self) -> dict:
        return {"n": self.n, "b": [list(row) for row in self.b], "d": list(self.d)}

    @classmethod
    def from_json(cls, data: dict) -> "SkewMatrix":
        return cls.from_rows(data["b"], data.get("d"))


def mutate_matrix(m: SkewMatrix, k: int) -> SkewMatrix:
    """Matrix mutation at vertex k (1-based).

    Row and column k flip sign; any other entry gains
    sgn(B[i][k]) * max(B[i][k]*B[k][j], 0).  Involutive, and the
    symmetrizer is untouched.
    """
    if not 1 <= k <= m.n:
        raise IndexError(f"vertex {k} out of range 1..{m.n}")
    kk = k - 1
    b = m.b
    new = []
    for i in range(m.n):
        row = []
        for j in range(m.n):
            if i == kk or j == kk:
                row.append(-b[i][j])
            else:
                prod = b[i][kk] * b[kk][j]
                if prod > 0:
                    sign = 1 if b[i][kk] > 0 else -1
                    row.append(b[i][j] + sign * prod)
                else:
                    row.append(b[i][j])
        new.append(tuple(row))
    return SkewMatrix(n=m.n, b=tuple(new), d=m.d)


def apply_sequence(m: SkewMatrix, seq) -> SkewMatrix:
    """Mutate at each vertex of seq in order (1-based indices)."""
    for k in seq:
        m = mutate_matrix(m, k)
    return m
