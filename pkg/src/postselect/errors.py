"""Domain-error hierarchy.

Every error that reflects a violated mathematical precondition (as opposed
to malformed input files or programming mistakes) derives from
:class:`PostselectError` so callers, and in particular the command line
driver, can distinguish domain failures from I/O failures.  The ``code``
attribute is the stable machine-readable name of the condition.
"""


class PostselectError(Exception):
    """Base class for domain errors raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


class NonFinite(PostselectError):
    """An input array contains NaN or infinite entries."""


class NotHermitian(PostselectError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class NotOrthonormal(PostselectError):
    """Columns required to be orthonormal are not, beyond tolerance."""


class NotPSD(PostselectError):
    """A Gram candidate has a genuinely negative eigenvalue."""


class ZeroOperator(PostselectError):
    """The zero operator admits no post-selected realization."""


class NotContracting(PostselectError):
    """Largest singular value exceeds one beyond tolerance."""


class NotUnitary(PostselectError):
    """A matrix required to be unitary is not, beyond tolerance."""


class NotNormalized(PostselectError):
    """A state vector is not unit length, beyond tolerance."""


class NotUnitaryMember(PostselectError):
    """A convex-combination member is not unitary, beyond tolerance."""


class BadWeights(PostselectError):
    """Convex weights are negative, mismatched, or do not sum to one."""


class DimensionMismatch(PostselectError):
    """Operands live in different dimensions."""


class NotGeneralPosition(PostselectError):
    """A point tuple fails the general-position rank test."""


class NotInvertible(PostselectError):
    """A matrix required to be invertible is numerically singular."""


class SingularConfiguration(PostselectError):
    """A cross-ratio argument pattern (three or four coincident points)
    admits no value."""


class InvalidSuite(PostselectError):
    """Suite data violates the suite invariants (e.g. coincident domain
    points)."""


class BadOptions(PostselectError):
    """Fit options are out of range."""


class WrongDimension(PostselectError):
    """An operation restricted to one projective dimension received
    another."""


class NotBorder(PostselectError):
    """Border constructions require a suite classified as a border
    suite."""


class WrongDomain(PostselectError):
    """An identity check restricted to a fixed domain tuple received a
    different domain."""


class InfiniteRangePoint(PostselectError):
    """A value-based identity check received a range point at infinity."""


class DegenerateGrid(PostselectError):
    """Too few usable grid points remain for a log-log slope fit."""


class FormatError(ValueError):
    """Malformed serialized data (a parse failure, not a domain error)."""
