from src.core.exceptions import NumericalError

__all__ = (
    "SingularSource",
    "SingularCoupling",
)


class SingularSource(NumericalError):
    """Exception raised when the transmit antenna and source impedances sum to zero."""


class SingularCoupling(NumericalError):
    """Exception raised when Z_R(f) + Z_LNA·I cannot be solved reliably.

    Attributes:
        condition: 1-norm condition estimate of the loaded impedance matrix
    """

    def __init__(self, message: str, condition: float):
        super().__init__(message)
        self.condition = condition
