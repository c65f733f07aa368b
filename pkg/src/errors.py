"""
Error hierarchy for the qmf library.

Every error raised by library code derives from QMFError.  The class names
are part of the public contract: the CLI copies ``type(exc).__name__``
verbatim into the ``error`` field of a failed report.
"""


class QMFError(Exception):
    """Base class for all library errors."""


# ------------------------------------------------------------ series

class MixedGradeError(QMFError):
    """Two nonzero series with different (2πi)-powers were combined additively."""


class NonUnitError(QMFError):
    """Inversion or logarithm requested for a series whose constant term is not admissible."""


class NonAdmissibleError(QMFError):
    """exp/log/revert/compose precondition on the leading coefficients failed."""


class DomainError(QMFError):
    """Numeric evaluation requested outside the upper half-plane."""


# ------------------------------------------------------------ hodge / groups

class InvalidFrame(QMFError):
    """Hodge frame data violates the symmetry or filtration invariants."""


class SingularLattice(QMFError):
    """Lattice presentation p is numerically singular."""


class SingularPeriod(QMFError):
    """Period matrix is numerically singular."""


class DimensionMismatch(QMFError):
    """Matrix size does not match the frame."""


class NotAMember(QMFError):
    """Matrix fails the membership predicate of the requested group."""


class ZeroScaling(QMFError):
    """Scaling parameter k of a G0 element is zero."""


# ------------------------------------------------------------ elliptic / siegel

class DiscriminantZero(QMFError):
    """Parameters lie on the locus 27 t3^2 - t2^3 = 0."""


class RootFindingFailure(QMFError):
    """Cubic root solver did not converge."""


class SingularBlock(QMFError):
    """Siegel block x3 is not invertible."""


# ------------------------------------------------------------ quintic / cli

class NonIntegralInstanton(QMFError):
    """Peeled instanton number is not an integer."""


class SchemaError(QMFError):
    """JSON input does not follow the documented schema."""
