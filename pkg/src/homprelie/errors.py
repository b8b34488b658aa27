"""Exception hierarchy; the CLI maps each class to an exit code."""

from __future__ import annotations


class HomPreLieError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 3


class MalformedInput(HomPreLieError, ValueError):
    """Shapes, indices or scalars that do not describe a valid object."""

    exit_code = 2


class PreconditionFailed(HomPreLieError):
    """A mathematical property required by an operation does not hold.

    ``witness`` carries whatever concrete data demonstrates the failure
    (a basis triple, a subspace, a residual vector).
    """

    exit_code = 1

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(HomPreLieError, AssertionError):
    """Something that the mathematics guarantees turned out false; a bug."""

    exit_code = 3
