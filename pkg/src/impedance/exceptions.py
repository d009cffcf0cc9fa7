from src.core.exceptions import DomainError

__all__ = (
    "InvalidFrequency",
    "InvalidSeparation",
    "UnknownMutualModel",
)


class InvalidFrequency(DomainError):
    """Exception raised when an impedance is requested at a non-positive frequency."""


class InvalidSeparation(DomainError):
    """Exception raised when two array elements are co-located or have negative separation."""


class UnknownMutualModel(DomainError):
    """Exception raised when a mutual-impedance model name is not registered."""
