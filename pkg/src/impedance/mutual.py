from abc import ABC, abstractmethod
from typing import ClassVar

import numpy as np
from numpy.typing import ArrayLike

from src.core.base_types import ComplexVector
from src.core.utils import SPEED_OF_LIGHT
from src.impedance.exceptions import UnknownMutualModel
from src.impedance.models import AntennaElement

__all__ = (
    "SERIES_RESISTANCE",
    "MutualImpedanceModel",
    "CmsClosedFormModel",
    "ZeroCouplingModel",
    "get_mutual_model",
)

SERIES_RESISTANCE = 1.0  # Ω, radiation resistance of every element


class MutualImpedanceModel(ABC):
    """
    Strategy mapping (frequency, separation, element) to a mutual impedance.

    Implementations are stateless; evaluation depends only on the separation,
    never on which element comes first.
    """

    name: ClassVar[str]

    @abstractmethod
    def evaluate(self, f: float, separations: ArrayLike, element: AntennaElement) -> ComplexVector:
        """
        Evaluate mutual impedances for a batch of separations.

        Args:
            f: Frequency, Hz (positive)
            separations: Element separations, m (positive)
            element: Element shared by both positions

        Returns:
            Complex mutual impedances, Ω, one per separation
        """


class CmsClosedFormModel(MutualImpedanceModel):
    """
    Mutual impedance between two side-by-side Chu-limited CMS antennas.

    Both elements radiate the lowest TM mode with parallel dipole moments
    orthogonal to the array axis. With x = 2πf·s/c,

        Z_mn = (3/2)·R·e^{-jx}·(j/x + 1/x² − j/x³)

    so Re{Z_mn} → R as s → 0 and |Z_mn| decays monotonically with s.
    """

    name = "cms-closed-form"

    def __init__(self, resistance: float = SERIES_RESISTANCE) -> None:
        self.resistance = resistance

    def evaluate(self, f: float, separations: ArrayLike, element: AntennaElement) -> ComplexVector:
        x = 2.0 * np.pi * f * np.asarray(separations, dtype=float) / SPEED_OF_LIGHT
        return 1.5 * self.resistance * np.exp(-1j * x) * (1j / x + 1.0 / x**2 - 1j / x**3)


class ZeroCouplingModel(MutualImpedanceModel):
    """Uncoupled limit: every mutual impedance is exactly zero."""

    name = "zero"

    def evaluate(self, f: float, separations: ArrayLike, element: AntennaElement) -> ComplexVector:
        return np.zeros(np.shape(separations), dtype=complex)


_MODELS: dict[str, type[MutualImpedanceModel]] = {
    CmsClosedFormModel.name: CmsClosedFormModel,
    ZeroCouplingModel.name: ZeroCouplingModel,
}


def get_mutual_model(name: str) -> MutualImpedanceModel:
    """
    Factory function returning a mutual-impedance model by its registered name.

    Args:
        name: Either "cms-closed-form" or "zero"

    Returns:
        Model instance

    Raises:
        UnknownMutualModel: If the name is not registered
    """
    try:
        return _MODELS[name]()
    except KeyError:
        raise UnknownMutualModel(f"Mutual impedance model '{name}' not found.")
