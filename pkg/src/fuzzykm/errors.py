"""Error types shared across the package.

Two categories only: bad inputs (files, shapes, parameter ranges) and
numeric failures during iteration. The CLI maps them to exit codes 1 and 2.
"""


class ValidationError(ValueError):
    """Input data, file contents, or parameters violate a contract."""


class NumericError(RuntimeError):
    """A solver run hit a numerically invalid state (non-finite values,
    vanished cluster mass)."""
