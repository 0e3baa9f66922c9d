"""Exception hierarchy shared across the package.

The CLI maps these onto stable exit codes: usage/parse errors -> 1,
precondition failures -> 2, budget refusals -> 3, internal invariant
violations -> 4.
"""


class Tau2Error(Exception):
    """Base class for all package errors."""


class ParseError(Tau2Error):
    """Malformed input text; carries a line number when available."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DimensionMismatchError(Tau2Error):
    """Vector/matrix dimensions do not agree."""


class PresentationMismatchError(Tau2Error):
    """Elements from different presentations were combined."""


class PreconditionError(Tau2Error):
    """A documented operation precondition does not hold."""


class BudgetExceededError(Tau2Error):
    """An enumeration would exceed its configured evaluation budget."""


class InternalInvariantError(Tau2Error):
    """A computation contradicted an identity that must always hold."""
