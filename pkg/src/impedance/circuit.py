import logging

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict

from src.core.utils import SPEED_OF_LIGHT
from src.impedance.exceptions import InvalidFrequency, InvalidSeparation
from src.impedance.models import AntennaElement, ArrayGeometry, ImpedanceSet
from src.impedance.mutual import SERIES_RESISTANCE, MutualImpedanceModel

__all__ = (
    "SeriesRlc",
    "chu_quality_factor",
    "chu_series_rlc",
    "chu_self_impedance",
    "mutual_impedance",
    "array_impedance_matrix",
    "check_passivity",
)

logger = logging.getLogger(__name__)

PASSIVITY_TOLERANCE = -1e-9


class SeriesRlc(BaseModel):
    """Series RLC equivalent circuit of a single antenna."""
    resistance: float
    """Series (radiation) resistance R, Ω"""
    quality: float
    """Quality factor at resonance"""
    resonance: float
    """Resonance frequency, Hz"""

    model_config = ConfigDict(frozen=True)

    @property
    def inductance(self) -> float:
        """L = QR / (2π f_res), H"""
        return self.quality * self.resistance / (2.0 * np.pi * self.resonance)

    @property
    def capacitance(self) -> float:
        """C = 1 / ((2π f_res)² L), F"""
        return 1.0 / ((2.0 * np.pi * self.resonance) ** 2 * self.inductance)

    def impedance(self, f: float) -> complex:
        """
        Input impedance R + j(2πfL − 1/(2πfC)) at frequency f.

        The reactance is evaluated as QR(f/f_res − f_res/f), which is the same
        expression and cancels exactly at resonance.
        """
        reactance = self.quality * self.resistance * (f / self.resonance - self.resonance / f)
        return complex(self.resistance, reactance)


def chu_quality_factor(resonance: float, radius: float) -> float:
    """
    Chu lower bound on the quality factor, Q = 1/(ka)³ + 1/(ka).

    Args:
        resonance: Frequency at which ka is evaluated, Hz
        radius: Radius of the enclosing sphere, m

    Returns:
        Minimum quality factor
    """
    ka = 2.0 * np.pi * resonance * radius / SPEED_OF_LIGHT
    return 1.0 / ka**3 + 1.0 / ka


def chu_series_rlc(
    element: AntennaElement,
    resonance: float,
    resistance: float = SERIES_RESISTANCE,
) -> SeriesRlc:
    """Series RLC circuit of a Chu-limited antenna resonating at `resonance`."""
    if resonance <= 0:
        raise InvalidFrequency(f"Resonance frequency must be positive, got {resonance}")
    return SeriesRlc(
        resistance=resistance,
        quality=chu_quality_factor(resonance, element.radius),
        resonance=resonance,
    )


def chu_self_impedance(f: float, element: AntennaElement, resonance: float) -> complex:
    """
    Self impedance of a Chu-limited CMS antenna.

    Args:
        f: Frequency, Hz
        element: Antenna element
        resonance: Resonance frequency of its RLC circuit, Hz

    Returns:
        Complex impedance, Ω, with Re = 1 Ω

    Raises:
        InvalidFrequency: If f or resonance is not positive
    """
    if f <= 0:
        raise InvalidFrequency(f"Frequency must be positive, got {f}")
    return chu_series_rlc(element, resonance).impedance(f)


def mutual_impedance(
    model: MutualImpedanceModel,
    f: float,
    separation: float,
    element: AntennaElement,
) -> complex:
    """
    Mutual impedance between two identical elements.

    Args:
        model: Mutual-impedance model
        f: Frequency, Hz
        separation: Distance between the elements, m
        element: Shared element description

    Returns:
        Complex mutual impedance, Ω

    Raises:
        InvalidFrequency: If f is not positive
        InvalidSeparation: If the elements are co-located
    """
    if f <= 0:
        raise InvalidFrequency(f"Frequency must be positive, got {f}")
    if separation <= 0:
        raise InvalidSeparation(f"Separation must be positive, got {separation}")
    return complex(model.evaluate(f, np.array([separation]), element)[0])


def array_impedance_matrix(
    geometry: ArrayGeometry,
    model: MutualImpedanceModel,
    f: float,
) -> ImpedanceSet:
    """
    Assemble the receive array impedance matrix Z_R(f).

    Only the N−1 distinct separations are evaluated; the uniform geometry makes
    the matrix symmetric Toeplitz.

    Args:
        geometry: Uniform linear array
        model: Mutual-impedance model for the off-diagonal entries
        f: Frequency, Hz

    Returns:
        ImpedanceSet with Z_R(f), Z_T(f) and the N×N matrix

    Raises:
        InvalidFrequency: If f is not positive
    """
    z_rx = chu_self_impedance(f, geometry.element, geometry.resonance)
    z_tx = chu_self_impedance(f, geometry.transmit_element, geometry.resonance)
    column = np.empty(geometry.n_elements, dtype=complex)
    column[0] = z_rx
    if geometry.n_elements > 1:
        separations = geometry.spacing * np.arange(1, geometry.n_elements)
        column[1:] = model.evaluate(f, separations, geometry.element)
    return ImpedanceSet(
        freq=f,
        z_self_rx=z_rx,
        z_self_tx=z_tx,
        # toeplitz(c) alone would conjugate the first row
        z_matrix=scipy.linalg.toeplitz(column, column),
    )


def check_passivity(z_set: ImpedanceSet, tolerance: float = PASSIVITY_TOLERANCE) -> tuple[bool, float]:
    """
    Check that Re{Z_R(f)} is positive semidefinite.

    Violations are logged and returned, never clipped.

    Args:
        z_set: Impedances at one frequency
        tolerance: Smallest acceptable eigenvalue

    Returns:
        Tuple of (passes, smallest eigenvalue)
    """
    margin = z_set.passivity_margin()
    passes = margin >= tolerance
    if not passes:
        logger.warning("Re{Z_R} is not PSD at f=%.6g Hz: smallest eigenvalue %.3e", z_set.freq, margin)
    return passes, margin
