import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.beamform.models import WeightVector
from src.channel import ChannelState
from src.core.utils import SPEED_OF_LIGHT
from src.impedance import ArrayGeometry
from src.metrics.exceptions import NumericalDegeneracy
from src.metrics.models import BandSpec, SnrSample, WeakScalars
from src.noise import NoiseCovariance

__all__ = (
    "snr_instantaneous",
    "matched_filter_snr",
    "array_factor",
    "squint_phase",
    "conv_wc_snr_profile",
    "snr_conv_wc_closed",
    "snr_conv_wc_direct",
    "snr_ttd_wc",
)

SERIES_THRESHOLD = 1e-7


def snr_instantaneous(w: WeightVector, state: ChannelState, rn: NoiseCovariance, p_t: float) -> SnrSample:
    """
    Received SNR |w^H h(f)|² P_T / (w^H R_n(f) w) of an analog combiner.

    Args:
        w: Combining weights
        state: Channel at the evaluation frequency
        rn: Noise covariance at the evaluation frequency
        p_t: Transmit power per tone, W

    Returns:
        SnrSample at state.freq

    Raises:
        NumericalDegeneracy: If the noise power w^H R_n w is not strictly positive
    """
    noise = rn.quadratic_form(w.weights)
    if not np.isfinite(noise) or noise <= 0:
        raise NumericalDegeneracy(f"Combined noise power {noise!r} at f={state.freq:.6g} Hz")
    signal = abs(np.vdot(w.weights, state.channel)) ** 2 * p_t
    return SnrSample(freq=state.freq, snr=float(signal / noise))


def matched_filter_snr(state: ChannelState, rn: NoiseCovariance, p_t: float) -> SnrSample:
    """Unconstrained digital matched-filter SNR ã^H R_n^{-1} ã P_T, an upper bound for any combiner."""
    a_tilde = state.distorted_steering
    return SnrSample(freq=state.freq, snr=float(np.real(np.vdot(a_tilde, rn.solve(a_tilde)))) * p_t)


def array_factor(theta: ArrayLike, n: int) -> NDArray[np.float64]:
    """
    Power array factor sin²(Nθ/2)/sin²(θ/2).

    The ratio is 2π-periodic in θ; near multiples of 2π the series
    N² − N²(N²−1)θ²/12 replaces the 0/0 form.
    """
    theta = np.remainder(np.asarray(theta, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    small = np.abs(theta) < SERIES_THRESHOLD
    safe = np.where(small, 1.0, theta)
    ratio = np.sin(n * safe / 2.0) ** 2 / np.sin(safe / 2.0) ** 2
    series = n**2 - n**2 * (n**2 - 1) * theta**2 / 12.0
    return np.where(small, series, ratio)


def squint_phase(f: ArrayLike, center: float, aoa: float, geometry: ArrayGeometry) -> NDArray[np.float64]:
    """θ(f) = 2π(δ/c)(f − f_c) sin φ."""
    return 2.0 * np.pi * geometry.spacing / SPEED_OF_LIGHT * (np.asarray(f, dtype=float) - center) * np.sin(aoa)


def conv_wc_snr_profile(
    freqs: ArrayLike,
    band: BandSpec,
    aoa: float,
    geometry: ArrayGeometry,
    scalars: WeakScalars,
) -> NDArray[np.float64]:
    """Vectorized closed-form CONV SNR of a weakly coupled array over many frequencies."""
    n = geometry.n_elements
    theta = squint_phase(freqs, band.center, aoa, geometry)
    return scalars.factor(band.power_per_tone) / n * array_factor(theta, n)


def snr_conv_wc_closed(
    f: float,
    band: BandSpec,
    aoa: float,
    geometry: ArrayGeometry,
    scalars: WeakScalars,
) -> SnrSample:
    """
    Closed-form SNR of conventional PC beamforming in a weakly coupled array.

    SNR(f) = (|γ|²σ_c²P_T / (Nσ_n²)) · sin²(Nθ/2)/sin²(θ/2)

    Args:
        f: Signal frequency, Hz
        band: Band whose centre is the design frequency
        aoa: Angle of arrival, rad
        geometry: Array geometry
        scalars: Weakly coupled scalars

    Returns:
        SnrSample at f
    """
    return SnrSample(freq=f, snr=float(conv_wc_snr_profile(f, band, aoa, geometry, scalars)))


def snr_conv_wc_direct(
    f: float,
    band: BandSpec,
    aoa: float,
    geometry: ArrayGeometry,
    scalars: WeakScalars,
) -> SnrSample:
    """Same SNR evaluated as |Σ_i exp(j(i−1)θ)|² by direct summation."""
    n = geometry.n_elements
    theta = float(squint_phase(f, band.center, aoa, geometry))
    total = np.sum(np.exp(1j * np.arange(n) * theta))
    return SnrSample(freq=f, snr=scalars.factor(band.power_per_tone) / n * abs(total) ** 2)


def snr_ttd_wc(scalars: WeakScalars, n: int, p_t: float = 1.0) -> SnrSample:
    """True-time-delay SNR |γ|²σ_c²P_T N / σ_n², identical at every frequency."""
    return SnrSample(freq=None, snr=scalars.factor(p_t) * n)
