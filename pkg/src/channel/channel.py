import warnings

import numpy as np
import scipy.linalg

from src.channel.exceptions import SingularCoupling, SingularSource
from src.channel.models import ChannelState, LinkConfig
from src.core.base_types import ComplexMatrix, ComplexVector
from src.core.exceptions import DomainError
from src.core.utils import SPEED_OF_LIGHT
from src.impedance import ArrayGeometry, ImpedanceSet, MutualImpedanceModel, array_impedance_matrix
from src.impedance.exceptions import InvalidFrequency

__all__ = (
    "steering_vector",
    "path_gain",
    "gamma_scalar",
    "coupling_matrix",
    "channel_state",
    "unity_channel_state",
)

MAX_CONDITION = 1e12
RESIDUAL_TOLERANCE = 1e-10


def steering_vector(f: float, aoa: float, geometry: ArrayGeometry) -> ComplexVector:
    """
    Far-field steering vector of the ULA.

    Args:
        f: Frequency, Hz
        aoa: Angle of arrival from broadside, rad
        geometry: Array geometry

    Returns:
        Vector with entries exp(j2πf(δ/c)(k−1)sin φ), k = 1..N
    """
    k = np.arange(geometry.n_elements)
    return np.exp(1j * 2.0 * np.pi * f * geometry.spacing / SPEED_OF_LIGHT * k * np.sin(aoa))


def path_gain(f: float, link: LinkConfig) -> float:
    """
    Line-of-sight channel gain β(f) = G_T G_R (c / (2πf d^{η/2}))².

    Raises:
        InvalidFrequency: If f is not positive
    """
    if f <= 0:
        raise InvalidFrequency(f"Frequency must be positive, got {f}")
    spreading = SPEED_OF_LIGHT / (2.0 * np.pi * f * link.distance ** (link.path_loss_exponent / 2.0))
    return link.tx_gain * link.rx_gain * spreading**2


def gamma_scalar(f: float, link: LinkConfig, z_tx: complex, z_rx_self: complex) -> complex:
    """
    Scalar front-end gain γ(f) = ρ Z_LNA √(Re{Z_T} Re{Z_R} β(f)) Q(f) e^{jψ}.

    Args:
        f: Frequency, Hz
        link: Link configuration
        z_tx: Transmit antenna impedance Z_T(f), Ω
        z_rx_self: Receive element self impedance Z_R(f), Ω

    Returns:
        Complex γ(f)

    Raises:
        DomainError: If either antenna has negative resistance
        SingularSource: If Z_T(f) + Z_G = 0
    """
    if z_tx.real < 0 or z_rx_self.real < 0:
        raise DomainError("Antenna resistances must be non-negative.")
    source = z_tx + link.source_impedance
    if source == 0:
        raise SingularSource(f"Z_T + Z_G vanishes at f={f:.6g} Hz")
    magnitude = np.sqrt(z_tx.real * z_rx_self.real * path_gain(f, link))
    return complex(link.lna_gain * link.lna_impedance * magnitude / source * np.exp(1j * link.psi))


def coupling_matrix(z_set: ImpedanceSet, link: LinkConfig) -> ComplexMatrix:
    """
    Coupling matrix P(f) = (Z_R(f) + Z_LNA I)^{-1} obtained by LU solves.

    The solution is accepted only if its condition estimate and residual
    ‖(Z_R + Z_LNA I)P − I‖_∞ stay within bounds.

    Raises:
        SingularCoupling: If the loaded impedance matrix is numerically singular
    """
    identity = np.eye(z_set.n_elements, dtype=complex)
    system = z_set.z_matrix + link.lna_impedance * identity
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        try:
            coupling = scipy.linalg.lu_solve(scipy.linalg.lu_factor(system), identity)
        except (np.linalg.LinAlgError, ValueError):
            raise SingularCoupling(f"Loaded impedance matrix is singular at f={z_set.freq:.6g} Hz", np.inf)
    condition = float(np.linalg.norm(system, 1) * np.linalg.norm(coupling, 1))
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise SingularCoupling(
            f"Loaded impedance matrix is ill-conditioned at f={z_set.freq:.6g} Hz (cond≈{condition:.3e})",
            condition,
        )
    residual = float(np.linalg.norm(system @ coupling - identity, np.inf))
    if residual > RESIDUAL_TOLERANCE:
        raise SingularCoupling(
            f"Coupling solve residual {residual:.3e} exceeds tolerance at f={z_set.freq:.6g} Hz",
            condition,
        )
    return coupling


def channel_state(
    f: float,
    geometry: ArrayGeometry,
    model: MutualImpedanceModel,
    link: LinkConfig,
    *,
    z_set: ImpedanceSet | None = None,
    coupling: ComplexMatrix | None = None,
) -> ChannelState:
    """
    Build every per-frequency channel quantity.

    Args:
        f: Frequency, Hz
        geometry: Array geometry
        model: Mutual-impedance model
        link: Link configuration
        z_set: Precomputed impedances at f (optional)
        coupling: Precomputed P(f) for the same impedances (optional)

    Returns:
        ChannelState with h(f) = γ(f) P(f) a(f)
    """
    if z_set is None:
        z_set = array_impedance_matrix(geometry, model, f)
    if coupling is None:
        coupling = coupling_matrix(z_set, link)
    gamma = gamma_scalar(f, link, z_set.z_self_tx, z_set.z_self_rx)
    steering = steering_vector(f, link.aoa, geometry)
    return ChannelState(
        freq=f,
        gamma=gamma,
        coupling=coupling,
        steering=steering,
        channel=gamma * (coupling @ steering),
    )


def unity_channel_state(f: float, aoa: float, geometry: ArrayGeometry) -> ChannelState:
    """Weakly coupled channel with γ = 1 and P(f) = I, so that h(f) = a(f)."""
    steering = steering_vector(f, aoa, geometry)
    return ChannelState(
        freq=f,
        gamma=1.0 + 0j,
        coupling=np.eye(geometry.n_elements, dtype=complex),
        steering=steering,
        channel=steering.copy(),
    )
