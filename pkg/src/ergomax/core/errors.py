"""
ergomax error hierarchy.
Every error carries the process exit code the CLI maps it to.
"""


class ErgomaxError(Exception):
    """Base class for all ergomax failures."""

    exit_code = 1


class ParseError(ErgomaxError, ValueError):
    """Malformed input document, point string or flag."""

    exit_code = 2


class DegenerateInputError(ErgomaxError, ValueError):
    """Input is well-formed but has no content to compute on."""

    exit_code = 3


class EmptySubshiftError(DegenerateInputError):
    """Trimming removed every vertex: the subshift has no points."""


class ExtendedRealError(DegenerateInputError):
    """Forbidden extended-real arithmetic (+inf - +inf) or improper function."""


class DomainViolationError(ErgomaxError, ValueError):
    """Input lies outside the domain an operation is defined on."""

    exit_code = 4


class ReducibleSystemError(DomainViolationError):
    """The spectral instance needs a single strongly connected component."""


class GraphTooLargeError(DomainViolationError):
    """Brute-force oracle refused a graph above its size guard."""


class IdentityFailure(ErgomaxError):
    """An identity that must hold did not (internal inconsistency)."""

    exit_code = 5


class ConvergenceError(IdentityFailure):
    """An iterative scheme did not converge within its budget."""

    def __init__(self, message: str, iterations: int = 0, residual: float = float("nan")):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual
