"""Exception hierarchy shared by every layer of the package."""


class KSpaceError(Exception):
    """Base class for all errors raised by kspace."""


class InvalidRingError(KSpaceError):
    """Tables or parameters do not describe a nontrivial commutative ring."""


class UnsupportedModulusError(KSpaceError):
    """Polynomial modulus is not monic of positive degree."""


class DomainError(KSpaceError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceLimitError(KSpaceError):
    """A configured cap would be exceeded."""

    def __init__(self, cap: str, limit: int, requested: int | None = None):
        self.cap = cap
        self.limit = limit
        self.requested = requested
        msg = f"{cap} cap of {limit} exceeded"
        if requested is not None:
            msg += f" (needed {requested})"
        super().__init__(msg)


class SearchExhaustedError(KSpaceError):
    """A bounded search finished without finding what was asked for."""


class RingSpecError(KSpaceError, ValueError):
    """A ring construction string failed to parse."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        self.message = message
        super().__init__(f"{message} at position {position}\n  {text}\n  {' ' * position}^")


class VerificationError(KSpaceError):
    """A mechanically checked mathematical claim turned out false."""
