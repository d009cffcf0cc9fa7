import math

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.core.base_types import ComplexMatrix, ComplexVector, Frequency, Length, PositiveFloat

__all__ = (
    "LinkConfig",
    "ChannelState",
)


class LinkConfig(BaseModel):
    """Line-of-sight link and receiver front-end parameters."""
    distance: Length = 90.0
    """Transmitter to receiver distance d, m"""
    path_loss_exponent: PositiveFloat = 3.5
    """Path loss exponent η"""
    tx_gain: PositiveFloat = 1.5
    """Transmit antenna gain G_T"""
    rx_gain: PositiveFloat = 1.5
    """Receive antenna gain G_R"""
    aoa: float = Field(default=math.pi / 3, ge=-math.pi / 2, le=math.pi / 2)
    """Angle of arrival φ measured from broadside, rad"""
    source_impedance: complex = 1.0 + 0j
    """Source (generator) impedance Z_G, Ω"""
    lna_gain: float = Field(default=10.0, ge=0)
    """LNA voltage gain ρ"""
    lna_impedance: complex = 1.0 + 0j
    """LNA input impedance Z_LNA, Ω"""
    psi: float = 0.0
    """Circuit phase parameter ψ, rad"""

    model_config = ConfigDict(extra="forbid")

    @field_validator("lna_impedance", mode="after")
    @classmethod
    def _validate_lna_impedance(cls, value: complex) -> complex:
        if value.real <= 0:
            raise ValueError("LNA impedance must have a positive real part.")
        return value


class ChannelState(BaseModel):
    """Frequency-domain SIMO channel quantities at one frequency."""
    freq: Frequency
    """Frequency, Hz"""
    gamma: complex
    """Scalar front-end gain γ(f)"""
    coupling: ComplexMatrix
    """Coupling matrix P(f) = (Z_R(f) + Z_LNA I)^{-1}"""
    steering: ComplexVector
    """Ideal steering vector a(f)"""
    channel: ComplexVector
    """Channel vector h(f) = γ(f) P(f) a(f)"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def distorted_steering(self) -> ComplexVector:
        """Coupling-distorted steering vector ã(f), identical to h(f)."""
        return self.channel

    @property
    def n_elements(self) -> int:
        return self.steering.shape[0]
