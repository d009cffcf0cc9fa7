import logging
import math

import numpy as np
import scipy.optimize
from numpy.typing import ArrayLike

from src.core.exceptions import DomainError
from src.impedance import ArrayGeometry
from src.metrics.averaging import avg_snr_theorem1
from src.metrics.models import BandSpec, SquintLoss, WeakScalars

__all__ = (
    "squint_loss",
    "crossing_bandwidth",
    "wc_crossing_bandwidth",
)

logger = logging.getLogger(__name__)

CLAMP_TOLERANCE = 1e-9
"""Relative tolerance below zero that is still reported as zero loss"""


def squint_loss(avg_td: float, avg_x: float, tolerance: float = CLAMP_TOLERANCE) -> SquintLoss:
    """
    Normalized SNR loss 100·(avg_td − avg_x)/avg_td.

    Args:
        avg_td: Average SNR of the reference (delay-based) beamformer
        avg_x: Average SNR of the phase-controlled beamformer
        tolerance: Relative tolerance for clamping slightly negative losses to zero

    Returns:
        SquintLoss with the raw value preserved

    Raises:
        DomainError: If avg_td is not strictly positive
    """
    if not avg_td > 0:
        raise DomainError(f"Reference average SNR must be positive, got {avg_td!r}")
    raw = 100.0 * (avg_td - avg_x) / avg_td
    if raw >= 0:
        return SquintLoss(percent=raw, raw=raw)
    if raw >= -100.0 * tolerance:
        return SquintLoss(percent=0.0, raw=raw, clamped=True)
    logger.warning("Negative squint loss %.6g%% beyond tolerance (avg_td=%.6g, avg_x=%.6g)", raw, avg_td, avg_x)
    return SquintLoss(percent=raw, raw=raw)


def crossing_bandwidth(bandwidths: ArrayLike, losses: ArrayLike, level: float = 50.0) -> float:
    """
    Smallest bandwidth at which the loss reaches `level`, interpolated linearly in log-bandwidth.

    Returns:
        Bandwidth in Hz, or inf if the level is never reached
    """
    bandwidths = np.asarray(bandwidths, dtype=float)
    losses = np.asarray(losses, dtype=float)
    above = np.flatnonzero(losses >= level)
    if above.size == 0:
        return math.inf
    i = int(above[0])
    if i == 0:
        return float(bandwidths[0])
    lo, hi = np.log(bandwidths[i - 1]), np.log(bandwidths[i])
    t = (level - losses[i - 1]) / (losses[i] - losses[i - 1])
    return float(np.exp(lo + t * (hi - lo)))


def wc_crossing_bandwidth(aoa: float, geometry: ArrayGeometry, center: float, level: float = 50.0) -> float:
    """
    Bandwidth at which the weakly coupled CONV loss reaches `level`, solved on the closed-form average.

    Returns:
        Bandwidth in Hz, or inf if the level is not reached below 2·center
    """
    unit = WeakScalars()
    reference = float(geometry.n_elements)

    def excess(width: float) -> float:
        band = BandSpec(center=center, width=width)
        return 100.0 * (reference - avg_snr_theorem1(band, aoa, geometry, unit)) / reference - level

    grid = np.geomspace(1.0, 2.0 * center * (1.0 - 1e-9), 256)
    values = np.array([excess(w) for w in grid])
    above = np.flatnonzero(values >= 0)
    if above.size == 0:
        return math.inf
    i = int(above[0])
    if i == 0:
        return float(grid[0])
    return float(scipy.optimize.brentq(excess, grid[i - 1], grid[i], xtol=1e-6, rtol=1e-12))
