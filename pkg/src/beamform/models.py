from enum import Enum
from typing import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.base_types import ComplexVector, RealVector

__all__ = (
    "BeamformerKind",
    "Beamformer",
    "WeightVector",
)


class BeamformerKind(str, Enum):
    """
    Enumeration of the analog beamforming strategies.

    CONV and POP are phase-controlled and fixed at the design frequency; the
    remaining kinds apply per-element time delays.
    """
    CONV = "conv"
    TTD_WC = "ttd-wc"
    POP = "pop"
    TD_GENERIC = "td-generic"
    TD_I = "td-i"
    TD_II = "td-ii"
    TD_OPT = "td-opt"

    @property
    def is_phase_controlled(self) -> bool:
        return self in {BeamformerKind.CONV, BeamformerKind.POP}

    @property
    def has_fixed_delays(self) -> bool:
        return self in {BeamformerKind.TTD_WC, BeamformerKind.TD_GENERIC, BeamformerKind.TD_I, BeamformerKind.TD_II}


class WeightVector(BaseModel):
    """Unit-modulus analog weights at one frequency."""
    freq: float = Field(ge=0)
    """Frequency the weights apply to, Hz"""
    weights: ComplexVector
    """Weight entries w_k, |w_k| = 1"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class Beamformer(BaseModel):
    """A weight-generating strategy with the data fixed at design time."""
    kind: BeamformerKind
    """Strategy"""
    design_freq: float | None = None
    """Design frequency f_c for phase-controlled kinds, Hz"""
    delays: RealVector | None = None
    """Per-element delays Δt_k for fixed-delay kinds, s"""
    design_weights: ComplexVector | None = None
    """Frequency-independent weights for phase-controlled kinds"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _validate_design_data(self) -> Self:
        if self.kind.is_phase_controlled and (self.design_freq is None or self.design_weights is None):
            raise ValueError(f"{self.kind.value} beamformer requires a design frequency and weights.")
        if self.kind.has_fixed_delays and self.delays is None:
            raise ValueError(f"{self.kind.value} beamformer requires per-element delays.")
        if self.delays is not None and self.design_weights is not None and (
            np.shape(self.delays) != np.shape(self.design_weights)
        ):
            raise ValueError("Delays and design weights must have the same length.")
        return self

    @property
    def n_elements(self) -> int | None:
        for data in (self.delays, self.design_weights):
            if data is not None:
                return len(data)
        return None
