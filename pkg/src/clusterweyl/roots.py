"""Root lattice of an acyclic seed, reflections, and companion bases.

The lattice carries the symmetric form (beta_i, beta_j) = d_i * A0[i][j]
of the seed's generalized Cartan matrix; vectors are integer coordinate
tuples in the simple-root basis.  Companion bases are bases of real
roots whose Gram pairing matrix is a prescribed quasi-Cartan companion;
they are built from the simple roots by the mutation rule
e_k -> -e_k, e_i -> e_i - A[k][i]*e_k when eps*B[k][i] > 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .companion import Companion, generalized_cartan, mutate_companion
from .diagram import Diagram, diagram_of, is_acyclic
from .errors import GramMismatch, NonIntegral, PreconditionViolated, ZeroNorm
from .matrix import IntMatrix, SkewMatrix

Vec = tuple[int, ...]


@dataclass(frozen=True)
class RootLattice:
    n: int
    a0: IntMatrix
    d: tuple[int, ...]
    gram: IntMatrix
    seed: SkewMatrix | None = None

    @classmethod
    def from_acyclic(cls, m0: SkewMatrix) -> "RootLattice":
        if not is_acyclic(diagram_of(m0)):
            raise PreconditionViolated("seed diagram must be acyclic")
        a0 = generalized_cartan(m0).a
        gram = tuple(
            tuple(m0.d[i] * a0[i][j] for j in range(m0.n)) for i in range(m0.n)
        )
        return cls(n=m0.n, a0=a0, d=m0.d, gram=gram, seed=m0)

    @classmethod
    def coxeter(cls, g: Diagram) -> "RootLattice":
        """The geometric-representation form for a diagram whose pair
        orders are all 2 or infinity: diagonal 2, and -2 between
        connected vertices.  Requires every edge weight >= 4."""
        for e in g.edges:
            if e.weight < 4:
                raise PreconditionViolated(
                    f"edge {e.tail}->{e.head} has weight {e.weight} < 4; "
                    "pair orders are not all 2 or infinity"
                )
        a0 = tuple(
            tuple(
                2 if i == j else (-2 if g.weight_between(i + 1, j + 1) else 0)
                for j in range(g.n)
            )
            for i in range(g.n)
        )
        return cls(n=g.n, a0=a0, d=tuple([1] * g.n), gram=a0, seed=None)


def bilinear(l: RootLattice, u: Vec, v: Vec) -> int:
    """u^T * gram * v."""
    return sum(
        u[i] * l.gram[i][j] * v[j]
        for i in range(l.n)
        for j in range(l.n)
        if u[i] and l.gram[i][j]
    )


def gram_pairing(l: RootLattice, u: Vec, v: Vec) -> int:
    """<u, v-check> = 2(v,u)/(v,v), exactly.

    Non-integrality means u, v are not both real roots of this system
    and is reported loudly rather than rounded.
    """
    den = bilinear(l, v, v)
    if den == 0:
        raise ZeroNorm("pairing against a vector of zero self-pairing")
    num = 2 * bilinear(l, v, u)
    q, r = divmod(num, den)
    if r:
        raise NonIntegral(f"2(v,u)/(v,v) = {num}/{den} is not an integer")
    return q


def reflect(l: RootLattice, beta: Vec, v: Vec) -> Vec:
    """s_beta(v) = v - <v, beta-check> * beta."""
    p = gram_pairing(l, v, beta)
    return tuple(v[i] - p * beta[i] for i in range(l.n))


def reflection_matrix(l: RootLattice, beta: Vec) -> IntMatrix:
    """Matrix of s_beta on column coordinate vectors in the simple-root
    basis; an involution of determinant -1 preserving the form."""
    cols = []
    for j in range(l.n):
        e_j = tuple(1 if t == j else 0 for t in range(l.n))
        cols.append(reflect(l, beta, e_j))
    return tuple(tuple(cols[j][i] for j in range(l.n)) for i in range(l.n))


def det_int(rows) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class CompanionBasis:
    lattice: RootLattice
    vectors: tuple[Vec, ...]
    companion: Companion

    @classmethod
    def build(
        cls, lattice: RootLattice, vectors, companion: Companion
    ) -> "CompanionBasis":
        vectors = tuple(tuple(int(x) for x in v) for v in vectors)
        if len(vectors) != lattice.n:
            raise ValueError("basis size differs from the lattice rank")
        if det_int(vectors) not in (1, -1):
            raise GramMismatch("vectors do not form a basis of the lattice (det != +-1)")
        a = companion.a
        for i in range(lattice.n):
            for j in range(lattice.n):
                if gram_pairing(lattice, vectors[j], vectors[i]) != a[i][j]:
                    raise GramMismatch(
                        f"pairing of basis vectors {j + 1},{i + 1} does not match "
                        "the companion"
                    )
        return cls(lattice=lattice, vectors=vectors, companion=companion)

    def reflection(self, i: int) -> IntMatrix:
        """Reflection matrix of the i-th basis vector (1-based)."""
        return reflection_matrix(self.lattice, self.vectors[i - 1])

    def to_json(self) -> dict:
        return {"vectors": [list(v) for v in self.vectors]}


def simple_basis(l: RootLattice) -> CompanionBasis:
    """The standard basis, realizing the seed's generalized Cartan
    companion."""
    if l.seed is None:
        raise ValueError("lattice has no seed matrix attached")
    vectors = tuple(
        tuple(1 if j == i else 0 for j in range(l.n)) for i in range(l.n)
    )
    return CompanionBasis.build(l, vectors, generalized_cartan(l.seed))


def mutate_basis(
    bs: CompanionBasis, c: Companion, k: int, eps: int, force: bool = False
) -> CompanionBasis:
    """Mutate a companion basis at vertex k with sign eps.

    The new basis realizes the eps-mutated companion (checked; a failure
    raises GramMismatch and signals inconsistent inputs).  Every new
    vector is a reflection image of an old one or a negation, so real
    roots stay real, and the generated reflection group is unchanged.
    """
    if c.a != bs.companion.a or c.matrix.b != bs.companion.matrix.b:
        raise ValueError("companion does not match the one realized by the basis")
    if not 1 <= k <= bs.lattice.n:
        raise IndexError(f"vertex {k} out of range 1..{bs.lattice.n}")
    kk = k - 1
    a, b, n = c.a, c.matrix.b, bs.lattice.n
    e_k = bs.vectors[kk]
    new_vectors = []
    for i in range(n):
        if i == kk:
            new_vectors.append(tuple(-x for x in e_k))
        elif eps * b[kk][i] > 0:
            new_vectors.append(
                tuple(bs.vectors[i][t] - a[kk][i] * e_k[t] for t in range(n))
            )
        else:
            new_vectors.append(bs.vectors[i])
    return CompanionBasis.build(
        bs.lattice, new_vectors, mutate_companion(c, k, eps, force=force)
    )


def apply_basis_signs(bs: CompanionBasis, eps) -> CompanionBasis:
    """Flip basis vectors where eps is -1; the companion picks up the
    matching simultaneous sign changes.  Reflections are unchanged."""
    from .companion import apply_sign_vector

    eps = tuple(eps)
    vectors = [
        tuple(e * x for x in v) for e, v in zip(eps, bs.vectors)
    ]
    return CompanionBasis.build(
        bs.lattice, vectors, apply_sign_vector(bs.companion, eps)
    )


def is_sign_coherent(v: Vec) -> bool:
    """All coordinates >= 0 or all <= 0."""
    return all(x >= 0 for x in v) or all(x <= 0 for x in v)


def _eps_at(policy, step: int) -> int:
    if isinstance(policy, int):
        return policy
    return policy[step]


def companion_basis_for(
    m0: SkewMatrix, seq, eps_policy: int | list[int] = -1
) -> tuple[SkewMatrix, Companion, CompanionBasis]:
    """Thread (matrix, companion, basis) from an acyclic seed along a
    mutation sequence.

    eps_policy is a fixed sign or one sign per step.  Returns the final
    triple; the basis realizes the final companion.
    """
    seq = list(seq)
    if not isinstance(eps_policy, int) and len(eps_policy) != len(seq):
        raise ValueError("eps policy length differs from the sequence length")
    lattice = RootLattice.from_acyclic(m0)
    c = generalized_cartan(m0)
    bs = simple_basis(lattice)
    for t, k in enumerate(seq):
        bs = mutate_basis(bs, c, k, _eps_at(eps_policy, t))
        c = bs.companion
    return c.matrix, c, bs


def coordinates_in_basis(bs: CompanionBasis, v: Vec) -> tuple[int, ...]:
    """Integer coordinates of v in the basis (exact; the basis matrix is
    unimodular)."""
    n = bs.lattice.n
    aug = [
        [Fraction(bs.vectors[j][i]) for j in range(n)] + [Fraction(v[i])]
        for i in range(n)
    ]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("basis matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for r in range(n):
        val = aug[r][n]
        if val.denominator != 1:
            raise ValueError("coordinates are not integral")
        out.append(int(val))
    return tuple(out)
