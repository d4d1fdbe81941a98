"""Exception hierarchy shared by every frobscope module.

The CLI maps these onto process exit codes, so each class carries the
code it should produce.
"""


class FrobscopeError(Exception):
    exit_code = 1


class InputError(FrobscopeError, ValueError):
    """Caller passed something outside an operation's precondition."""

    exit_code = 2


class ResourceError(FrobscopeError):
    """An enumeration or scan guard would be exceeded."""

    exit_code = 3


class AnalyticPreconditionError(FrobscopeError, ValueError):
    exit_code = 4


class EmptySievingSetError(AnalyticPreconditionError):
    pass


class InsufficientDataError(AnalyticPreconditionError):
    pass


class IncompleteFactorizationError(FrobscopeError, ArithmeticError):
    """Trial division could not certify the squarefree part of an integer."""


class RamifiedPrimeError(InputError):
    """Polynomial is not squarefree modulo the requested prime."""


class ConsistencyError(FrobscopeError, AssertionError):
    """An internal cross-check failed; indicates a bug, not bad input."""

    exit_code = 1
