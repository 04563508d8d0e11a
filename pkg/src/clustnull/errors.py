"""Exception types shared across the package.

The CLI maps these onto exit codes: invalid input is exit 2, numeric
failure is exit 3.
"""


class ClustnullError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(ClustnullError, ValueError):
    """An argument violates a documented precondition (bad shape, range, file)."""


class NumericFailureError(ClustnullError, ArithmeticError):
    """A numeric procedure cannot proceed (e.g. non-positive-definite matrix)."""
