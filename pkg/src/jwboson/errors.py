"""Exception types shared across the package."""


class JWBosonError(Exception):
    """Base class for precondition violations raised by this package."""


class ContractError(JWBosonError, ValueError):
    """An argument violates a documented precondition."""


class SizeMismatchError(ContractError):
    """Qubit counts or matrix shapes do not line up."""


class CapacityError(ContractError):
    """Particles cannot be placed in the requested modes."""


class UnsupportedError(JWBosonError):
    """The request is valid but outside what is implemented."""
