from src.core.exceptions import NumericalError

__all__ = (
    "ModelInconsistency",
    "SingularNoiseCovariance",
)


class ModelInconsistency(NumericalError):
    """Exception raised when a noise covariance is not Hermitian positive semidefinite within tolerance."""


class SingularNoiseCovariance(NumericalError):
    """Exception raised when a linear solve against a singular noise covariance is requested."""
