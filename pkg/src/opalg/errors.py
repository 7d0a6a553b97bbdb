"""Exception types raised across the package."""


class OpalgError(Exception):
    """Base class for all package errors."""


class InvalidPresentationError(OpalgError, ValueError):
    """An algebra presentation is malformed or not closed."""


class DomainError(OpalgError, ValueError):
    """An element or state was used with an algebra it does not belong to."""


class ContractViolation(OpalgError, ValueError):
    """Inputs break the documented preconditions of an operation."""


class NoEmbeddingError(OpalgError, ValueError):
    """A commutative algebra contains no copy of the 2x2 matrices."""


class ProjectionPairError(OpalgError, ValueError):
    """Two projections do not determine a 2x2 matrix-unit system."""


class ReportVersionError(OpalgError, ValueError):
    """A serialized report carries an incompatible schema version."""
