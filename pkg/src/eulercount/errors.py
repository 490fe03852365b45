"""Exception hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI maps it to.
"""


class EulerCountError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class GraphParseError(EulerCountError):
    """Malformed graph text, bad indices, or an unreadable generators file."""

    exit_code = 2


class PreconditionError(EulerCountError):
    """An operation was called on input it is not defined for.

    Examples: the undirected trace formula on a non-Eulerian graph, a
    non-circulation chain where a homology class is required, a disconnected
    edge list, generators that do not stabilize the twist support.
    """

    exit_code = 3


class BudgetError(EulerCountError):
    """A configured resource budget (twist count, search nodes) was exceeded."""

    exit_code = 4


class ResidualError(EulerCountError):
    """Numerical output failed a consistency check.

    Raised when a trace that must be real has a large imaginary part, or when
    a weighted trace sum does not land near an integer multiple of its
    denominator.
    """

    exit_code = 5
