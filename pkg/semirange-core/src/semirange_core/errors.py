"""Exception hierarchy shared by the library and the CLI.

Every error derives from ``SemiRangeError`` (itself a ``ValueError``) so callers can catch
the whole family at once. The CLI maps individual classes onto exit codes.
"""


class SemiRangeError(ValueError):
    """Base class for all semirange failures."""


### Input validation
class DimensionMismatch(SemiRangeError):
    """Operands do not have compatible shapes, or contain non-finite entries."""


class NotHermitian(SemiRangeError):
    """A matrix that must be Hermitian is not, within tolerance."""


class NegativeEigenvalue(SemiRangeError):
    """The weight operator has a significantly negative eigenvalue."""


class ParseError(SemiRangeError):
    """A matrix file could not be decoded."""


### Preconditions on the operator or the parameter
class NotABounded(SemiRangeError):
    """The operator maps some null vector of A outside the null space of A."""


class RankTooSmall(SemiRangeError):
    """The range of A is too small for the requested construction."""


class NotUnitANorm(SemiRangeError):
    """A vector expected to have unit A-seminorm does not."""


class EmptyRange(SemiRangeError):
    """The requested numerical range has no points."""


class NotASelfAdjoint(SemiRangeError):
    """The operator is not self-adjoint with respect to the semi-inner product."""


class NotANilpotent2(SemiRangeError):
    """The operator is not A-nilpotent of index two."""


class NotAInvertible(SemiRangeError):
    """The operator has no inverse relative to A."""


class QZero(SemiRangeError):
    """The parameter q must be non-zero for this computation."""
