from ergomax.core.errors import (
    ErgomaxError,
    ParseError,
    DegenerateInputError,
    EmptySubshiftError,
    DomainViolationError,
    IdentityFailure,
    ConvergenceError,
)

__all__ = [
    "ErgomaxError",
    "ParseError",
    "DegenerateInputError",
    "EmptySubshiftError",
    "DomainViolationError",
    "IdentityFailure",
    "ConvergenceError",
]
