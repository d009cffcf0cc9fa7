from typing import Self

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, Field

from src.core.base_types import ComplexMatrix, Frequency, Length, PositiveFloat

__all__ = (
    "TX_RADIUS_FACTOR",
    "AntennaElement",
    "ArrayGeometry",
    "ImpedanceSet",
)

TX_RADIUS_FACTOR = 100.0  # transmit antenna is large enough to avoid bandwidth limits


class AntennaElement(BaseModel):
    """Chu-limited canonical minimum scattering antenna."""
    radius: Length
    """Radius of the sphere enclosing the antenna, m"""
    gain: PositiveFloat = 1.5
    """Antenna gain (linear); descriptive only, β(f) reads LinkConfig.tx_gain and rx_gain"""

    model_config = ConfigDict(extra="forbid")


class ArrayGeometry(BaseModel):
    """Uniform linear receive array."""
    n_elements: int = Field(default=32, ge=1)
    """Number of array elements N"""
    spacing: Length
    """Inter-element separation δ, m"""
    element: AntennaElement
    """Receive element, identical for every position"""
    resonance: Frequency = 10e9
    """Resonance frequency of the element RLC circuit, Hz"""

    model_config = ConfigDict(extra="forbid")

    @property
    def coupling_factor(self) -> float:
        """Ratio δ/a_R controlling the coupling strength."""
        return self.spacing / self.element.radius

    @property
    def transmit_element(self) -> AntennaElement:
        """Single transmit antenna scaled to TX_RADIUS_FACTOR times the receive radius."""
        return AntennaElement(radius=TX_RADIUS_FACTOR * self.element.radius, gain=self.element.gain)

    @classmethod
    def from_coupling_factor(
        cls,
        n_elements: int,
        spacing: float,
        coupling_factor: float,
        resonance: float = 10e9,
        gain: float = 1.5,
    ) -> Self:
        """
        Build a geometry whose element radius is fixed by the coupling factor δ/a_R.

        Args:
            n_elements: Number of elements
            spacing: Inter-element separation, m
            coupling_factor: Target δ/a_R
            resonance: Element resonance frequency, Hz
            gain: Element gain

        Returns:
            ArrayGeometry with radius spacing / coupling_factor
        """
        return cls(
            n_elements=n_elements,
            spacing=spacing,
            element=AntennaElement(radius=spacing / coupling_factor, gain=gain),
            resonance=resonance,
        )


class ImpedanceSet(BaseModel):
    """Self and mutual impedances of the link at one frequency."""
    freq: Frequency
    """Evaluation frequency, Hz"""
    z_self_rx: complex
    """Self impedance of one receive element Z_R(f), Ω"""
    z_self_tx: complex
    """Self impedance of the transmit antenna Z_T(f), Ω"""
    z_matrix: ComplexMatrix
    """Receive array impedance matrix, complex-symmetric Toeplitz, Ω"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def n_elements(self) -> int:
        return self.z_matrix.shape[0]

    def passivity_margin(self) -> float:
        """Smallest eigenvalue of Re{Z_R(f)}; negative values indicate a non-passive model."""
        return float(scipy.linalg.eigvalsh(np.real(self.z_matrix))[0])
