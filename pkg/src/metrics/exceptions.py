from src.core.exceptions import NumericalError

__all__ = (
    "NumericalDegeneracy",
    "IntegrationError",
)


class NumericalDegeneracy(NumericalError):
    """Exception raised when an SNR denominator w^H R_n w is zero, negative or not finite."""


class IntegrationError(NumericalError):
    """Exception raised when the band average does not converge within the panel budget.

    Attributes:
        estimate: Last computed average
        gap: Relative difference between the last two refinement levels
    """

    def __init__(self, message: str, estimate: float, gap: float):
        super().__init__(message)
        self.estimate = estimate
        self.gap = gap
