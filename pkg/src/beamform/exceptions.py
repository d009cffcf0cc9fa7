from src.core.exceptions import DomainError

__all__ = (
    "InvalidBeamformer",
    "DesignFrequencyMismatch",
)


class InvalidBeamformer(DomainError):
    """Exception raised when a beamformer lacks the delays or design data its kind requires."""


class DesignFrequencyMismatch(DomainError):
    """Exception raised when design quantities are evaluated at a frequency other than the design frequency."""
