"""Exception hierarchy shared across the toolkit."""

from __future__ import annotations


class ClusterWeylError(Exception):
    """Base class for all toolkit errors."""


class NotSkewSymmetrizable(ClusterWeylError):
    """No positive diagonal D makes DB skew-symmetric."""


class InvalidDiagram(ClusterWeylError):
    """A weighted digraph violates the diagram axioms (loops, 2-cycles,
    or a cycle whose weight product is not a perfect square)."""


class NotRational(ClusterWeylError):
    """A square-root ring element has an irrational part where an
    integer was required."""

    def __init__(self, message: str, term: tuple[int, int] | None = None):
        super().__init__(message)
        self.term = term


class NotAdmissibleInput(ClusterWeylError):
    """An operation that requires an admissible companion received a
    non-admissible one."""


class SequenceMismatch(ClusterWeylError):
    """A mutation sequence does not take the seed matrix to the matrix
    accompanying the target companion."""


class NonIntegral(ClusterWeylError):
    """2(v,u)/(v,v) failed to be an integer; u, v are not both real
    roots of the ambient system."""


class ZeroNorm(ClusterWeylError):
    """Pairing against a vector of zero self-pairing."""


class GramMismatch(ClusterWeylError):
    """A mutated basis does not realize the mutated companion."""


class NegativeX(ClusterWeylError):
    """The order map received a negative argument (impossible for
    squares; signals an upstream bug)."""


class NotOriented(ClusterWeylError):
    """A cycle relation was requested on a non-oriented cycle."""


class NotInduced(ClusterWeylError):
    """A claimed chordless cycle has a chord."""


class CannotNormalize(ClusterWeylError):
    """The sign-change sweep did not reach the target sign pattern
    (signals a non-admissible companion)."""


class VerificationFailed(ClusterWeylError):
    """Matrix verification of a relation failed."""

    def __init__(self, message: str, failing_power: int | None = None):
        super().__init__(message)
        self.failing_power = failing_power


class PreconditionViolated(ClusterWeylError):
    """An operation's stated precondition does not hold."""


class NormalizationRequired(ClusterWeylError):
    """A companion must be sign-normalized before this check."""
