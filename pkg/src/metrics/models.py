from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.base_types import Frequency, PositiveFloat

__all__ = (
    "SnrSample",
    "BandSpec",
    "QuadratureSpec",
    "WeakScalars",
    "SquintLoss",
)


class SnrSample(BaseModel):
    """Received SNR at one frequency."""
    freq: float | None
    """Frequency, Hz; None for frequency-independent values"""
    snr: float = Field(ge=0)
    """Linear SNR"""

    model_config = ConfigDict(frozen=True)


class BandSpec(BaseModel):
    """Band over which SNR is averaged."""
    center: Frequency = 10e9
    """Centre (design) frequency f_c, Hz"""
    width: float = Field(default=2e9, ge=0)
    """Bandwidth Δf, Hz"""
    power_per_tone: PositiveFloat = 1.0
    """Transmit power per frequency P_T, W"""

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _validate_lower_edge(self) -> Self:
        if self.center - self.width / 2 <= 0:
            raise ValueError("Band must lie within positive frequencies (center - width/2 > 0).")
        return self

    @property
    def lower(self) -> float:
        return self.center - self.width / 2

    @property
    def upper(self) -> float:
        return self.center + self.width / 2

    def with_width(self, width: float) -> "BandSpec":
        """Copy of this band with another bandwidth."""
        return BandSpec(center=self.center, width=width, power_per_tone=self.power_per_tone)


class QuadratureSpec(BaseModel):
    """Composite Gauss–Legendre settings."""
    nodes: int = Field(default=16, ge=2)
    """Nodes per panel"""
    initial_panels: int = Field(default=4, ge=1)
    """Panels of the first estimate"""
    max_panels: int = Field(default=2**14, ge=1)
    """Panel budget; refinement doubles the panel count"""
    rtol: PositiveFloat = 1e-9
    """Relative gap between successive estimates accepted as converged"""

    model_config = ConfigDict(extra="forbid")


class WeakScalars(BaseModel):
    """Frequency-flat scalars of a weakly coupled array."""
    gamma: complex = 1.0 + 0j
    """Front-end gain γ"""
    sigma_c2: complex = 1.0 + 0j
    """Diagonal entry σ_c² of P(f)"""
    sigma_n2: PositiveFloat = 1.0
    """Diagonal entry σ_n² of R_n(f)"""

    model_config = ConfigDict(frozen=True)

    def factor(self, p_t: float = 1.0) -> float:
        """|γ|² |σ_c²|² P_T / σ_n², the single-element SNR."""
        return abs(self.gamma) ** 2 * abs(self.sigma_c2) ** 2 * p_t / self.sigma_n2


class SquintLoss(BaseModel):
    """Normalized SNR loss due to beam squint."""
    percent: float
    """Reported loss, %"""
    raw: float
    """Unclamped loss, %"""
    clamped: bool = False
    """True when a slightly negative raw value was reported as zero"""

    model_config = ConfigDict(frozen=True)
