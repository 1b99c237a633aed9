"""Exception types shared across the package."""


class ArithCorrError(Exception):
    """Base class for every error raised by arithcorr."""


class RangeError(ArithCorrError, ValueError):
    """An integer argument falls outside the supported 64-bit range."""


class DomainError(ArithCorrError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class QueryError(ArithCorrError, ValueError):
    """A correlation or census query combines incompatible options."""


class GuardError(ArithCorrError, ValueError):
    """A resource guard (width, memory, tuple length) was exceeded."""
