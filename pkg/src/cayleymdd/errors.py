"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CayleyMddError(Exception):
    """Base class for all errors raised by this package."""


class SingularMatrix(CayleyMddError):
    """The matrix has determinant zero, so the quotient group is infinite."""


class DimensionMismatch(CayleyMddError):
    """Vector/matrix dimensions do not agree."""


class NotGenerating(CayleyMddError):
    """The generator set does not reach every group element."""


class EmptyDiagram(CayleyMddError):
    """An operation that needs at least one cube was given an empty diagram."""


class InvalidDilation(CayleyMddError):
    """Dilation factors must be integers >= 1."""


class OutOfFamily(CayleyMddError):
    """Family parameters outside the supported integer ranges."""


class NotAvailable(CayleyMddError):
    """Requested closed-form value has no formula for this family."""


class BudgetExceeded(CayleyMddError):
    """A search ran out of its candidate or time budget.

    Carries the partial result (flagged non-exhaustive) so callers that
    opted out of partial results can still inspect progress.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
