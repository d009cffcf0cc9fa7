__all__ = (
    "SquintError",
    "DomainError",
    "NumericalError",
    "ConfigError",
)


class SquintError(Exception):
    """Base class for every error raised by the simulation library."""


class DomainError(SquintError, ValueError):
    """Exception raised when a physical input lies outside its valid domain."""


class NumericalError(SquintError, ArithmeticError):
    """Exception raised when a numerical procedure cannot produce a trustworthy result."""


class ConfigError(SquintError):
    """Exception raised when a scenario configuration cannot be parsed or validated."""
