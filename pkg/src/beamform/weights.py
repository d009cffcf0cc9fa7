import math

import numpy as np
from numpy.typing import ArrayLike

from src.beamform.exceptions import DesignFrequencyMismatch
from src.beamform.models import WeightVector
from src.channel import ChannelState, steering_vector
from src.core.base_types import RealVector
from src.core.utils import SPEED_OF_LIGHT, principal_phase, unit_phasor
from src.impedance import ArrayGeometry
from src.impedance.exceptions import InvalidFrequency
from src.noise import NoiseCovariance

__all__ = (
    "conv_weights",
    "ttd_wc_weights",
    "pop_weights",
    "td_generic_weights",
    "optimal_delays",
    "td1_geometric_delays",
    "td2_center_delays",
)


def conv_weights(f_c: float, aoa: float, geometry: ArrayGeometry) -> WeightVector:
    """Conventional phase-controlled weights w = a(f_c), reused at every frequency."""
    return WeightVector(freq=f_c, weights=steering_vector(f_c, aoa, geometry))


def td_generic_weights(delays: ArrayLike, f: float) -> WeightVector:
    """
    Generic time-delay weights with entries exp(j2πfΔt_k).

    Args:
        delays: Per-element delays Δt_k, s
        f: Frequency, Hz

    Returns:
        WeightVector at f
    """
    return WeightVector(freq=f, weights=np.exp(1j * 2.0 * np.pi * f * np.asarray(delays, dtype=float)))


def td1_geometric_delays(aoa: float, geometry: ArrayGeometry) -> RealVector:
    """Geometric delays Δt_k = (δ/c)(k−1) sin φ."""
    return geometry.spacing / SPEED_OF_LIGHT * np.arange(geometry.n_elements) * np.sin(aoa)


def ttd_wc_weights(f: float, aoa: float, geometry: ArrayGeometry) -> WeightVector:
    """True-time-delay weights of a weakly coupled array, entries exp(j2πf(k−1)Δt)."""
    return td_generic_weights(td1_geometric_delays(aoa, geometry), f)


def _whitened_steering(state: ChannelState, rn: NoiseCovariance) -> np.ndarray:
    # R_n^{-1} ã(f), the digital matched filter
    return rn.solve(state.distorted_steering)


def _check_design_frequency(f_c: float, state: ChannelState, rn: NoiseCovariance) -> None:
    if not (math.isclose(f_c, state.freq, rel_tol=1e-12) and math.isclose(f_c, rn.freq, rel_tol=1e-12)):
        raise DesignFrequencyMismatch(
            f"Design frequency {f_c:.6g} Hz does not match channel ({state.freq:.6g} Hz) "
            f"or noise ({rn.freq:.6g} Hz) evaluation frequency",
        )


def pop_weights(f_c: float, state: ChannelState, rn: NoiseCovariance) -> WeightVector:
    """
    Phase-only-processing weights designed at f_c.

    w_POP^H = exp[j∠(γ* a^H P^H R_n^{-1})], i.e. w_POP = exp[j∠(R_n^{-1} ã)] for Hermitian R_n.

    Args:
        f_c: Design frequency, Hz
        state: Channel at f_c
        rn: Noise covariance at f_c

    Returns:
        Unit-modulus WeightVector

    Raises:
        SingularNoiseCovariance: If R_n(f_c) is singular
        DesignFrequencyMismatch: If state or rn were built at another frequency
    """
    _check_design_frequency(f_c, state, rn)
    return WeightVector(freq=f_c, weights=unit_phasor(_whitened_steering(state, rn)))


def optimal_delays(f: float, state: ChannelState, rn: NoiseCovariance) -> RealVector:
    """
    Frequency-dependent delays that remove squint at f.

    Δt_k(f) = ∠[R_n^{-1}(f) ã(f)]_k / (2πf), principal branch, so delays lie in
    (−1/(2f), 1/(2f)].

    Raises:
        InvalidFrequency: If f is not positive
        SingularNoiseCovariance: If R_n(f) is singular
    """
    if f <= 0:
        raise InvalidFrequency(f"Frequency must be positive, got {f}")
    _check_design_frequency(f, state, rn)
    return principal_phase(_whitened_steering(state, rn)) / (2.0 * np.pi * f)


def td2_center_delays(f_c: float, state: ChannelState, rn: NoiseCovariance) -> RealVector:
    """Delays fixed at the centre frequency, optimal_delays evaluated at f_c."""
    return optimal_delays(f_c, state, rn)
