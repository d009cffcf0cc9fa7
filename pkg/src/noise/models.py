import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, Field

from src.core.base_types import ComplexMatrix, ComplexVector, Frequency, PositiveFloat
from src.core.utils import BOLTZMANN, db_to_linear
from src.noise.exceptions import SingularNoiseCovariance

__all__ = (
    "DEFAULT_NOISE_BANDWIDTH",
    "NoiseConfig",
    "NoiseCovariance",
)

DEFAULT_NOISE_BANDWIDTH = 1e6  # Hz, used when no sweep grid defines a bin width
SINGULAR_RTOL = 1e-14


class NoiseConfig(BaseModel):
    """Thermal and amplifier noise parameters."""
    boltzmann: PositiveFloat = BOLTZMANN
    """Boltzmann constant k_b, J/K"""
    temperature: PositiveFloat = 290.0
    """Absolute temperature T, K"""
    noise_bandwidth: PositiveFloat | None = None
    """Per-tone noise bandwidth Δf, Hz; None means the sweep bin width"""
    noise_factor_db: float = Field(default=5.0, ge=0)
    """LNA noise factor N_f, dB"""

    model_config = ConfigDict(extra="forbid")

    @property
    def noise_factor(self) -> float:
        """Linear noise factor N_f ≥ 1."""
        return float(db_to_linear(self.noise_factor_db))

    @property
    def bandwidth(self) -> float:
        """Noise bandwidth in effect, Hz."""
        return self.noise_bandwidth if self.noise_bandwidth is not None else DEFAULT_NOISE_BANDWIDTH

    @property
    def thermal_scale(self) -> float:
        """4 k_b T Δf, W/Ω."""
        return 4.0 * self.boltzmann * self.temperature * self.bandwidth


class NoiseCovariance(BaseModel):
    """Receiver noise covariance R_n(f) at one frequency."""
    freq: Frequency
    """Frequency, Hz"""
    matrix: ComplexMatrix
    """Hermitian positive semidefinite N×N covariance"""
    eigenvalues: np.ndarray
    """Ascending eigenvalues of the covariance"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def is_singular(self) -> bool:
        largest = float(np.max(np.abs(self.eigenvalues)))
        return largest == 0.0 or self.min_eigenvalue <= SINGULAR_RTOL * largest

    def solve(self, rhs: ComplexVector) -> ComplexVector:
        """
        Solve R_n x = rhs without forming the inverse.

        Raises:
            SingularNoiseCovariance: If R_n(f) is numerically singular
        """
        if self.is_singular:
            raise SingularNoiseCovariance(f"Noise covariance is singular at f={self.freq:.6g} Hz")
        try:
            return scipy.linalg.solve(self.matrix, rhs, assume_a="her")
        except np.linalg.LinAlgError:
            raise SingularNoiseCovariance(f"Noise covariance is singular at f={self.freq:.6g} Hz")

    def quadratic_form(self, w: ComplexVector) -> float:
        """Real noise power w^H R_n w."""
        return float(np.real(np.vdot(w, self.matrix @ w)))
