"""Exception types shared across the package."""


class FlagkeError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(FlagkeError, ValueError):
    """Invalid family/rank/node data at construction time."""


class UsageError(FlagkeError, ValueError):
    """An operation was called with arguments outside its contract."""


class DomainError(FlagkeError, ValueError):
    """Mathematically well-formed input outside the domain of the operation
    (degenerate bundle, unadmitted Einstein sign, argument beyond the
    profile domain, ...)."""


class NumericsError(FlagkeError, ArithmeticError):
    """A quadrature or refinement loop failed to reach its tolerance."""


class DiagramParseError(FlagkeError, ValueError):
    """Malformed diagram string; ``offset`` is the byte position of the
    first offending character."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
