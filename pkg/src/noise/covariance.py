import numpy as np
import scipy.linalg

from src.channel import LinkConfig, coupling_matrix
from src.core.base_types import ComplexMatrix
from src.impedance import ImpedanceSet
from src.noise.exceptions import ModelInconsistency
from src.noise.models import NoiseConfig, NoiseCovariance

__all__ = (
    "noise_covariance",
    "unity_noise_covariance",
    "weakly_coupled_scalars",
)

ASYMMETRY_TOLERANCE = 1e-10
PSD_TOLERANCE = 1e-9


def noise_covariance(
    z_set: ImpedanceSet,
    link: LinkConfig,
    cfg: NoiseConfig,
    coupling: ComplexMatrix | None = None,
) -> NoiseCovariance:
    """
    Physically consistent receiver noise covariance.

    R_n(f) = 4 k_b T Δf [Re{Z_LNA}(N_f − 1) I + ρ² |Z_LNA|² P(f) Re{Z_R(f)} P^H(f)]

    Args:
        z_set: Impedances at the evaluation frequency
        link: Link configuration (ρ, Z_LNA)
        cfg: Noise configuration
        coupling: Precomputed P(f) for the same impedances (optional)

    Returns:
        Hermitian NoiseCovariance

    Raises:
        SingularCoupling: If P(f) cannot be computed
        ModelInconsistency: If the result is not Hermitian PSD within tolerance
    """
    if coupling is None:
        coupling = coupling_matrix(z_set, link)
    n = z_set.n_elements
    amplifier = link.lna_impedance.real * (cfg.noise_factor - 1.0) * np.eye(n)
    antenna = (link.lna_gain**2 * abs(link.lna_impedance) ** 2) * (
        coupling @ np.real(z_set.z_matrix) @ coupling.conj().T
    )
    matrix = cfg.thermal_scale * (amplifier + antenna)

    scale = np.linalg.norm(matrix)
    asymmetry = np.linalg.norm(matrix - matrix.conj().T) / scale if scale > 0 else 0.0
    if asymmetry > ASYMMETRY_TOLERANCE:
        raise ModelInconsistency(f"Noise covariance asymmetry {asymmetry:.3e} at f={z_set.freq:.6g} Hz")
    matrix = 0.5 * (matrix + matrix.conj().T)

    eigenvalues = scipy.linalg.eigvalsh(matrix)
    floor = -PSD_TOLERANCE * float(np.real(np.trace(matrix))) / n
    if eigenvalues[0] < floor:
        raise ModelInconsistency(
            f"Noise covariance is not PSD at f={z_set.freq:.6g} Hz: smallest eigenvalue {eigenvalues[0]:.3e}",
        )
    return NoiseCovariance(freq=z_set.freq, matrix=matrix, eigenvalues=eigenvalues)


def unity_noise_covariance(f: float, n_elements: int) -> NoiseCovariance:
    """White unit-power noise, R_n = I."""
    return NoiseCovariance(freq=f, matrix=np.eye(n_elements, dtype=complex), eigenvalues=np.ones(n_elements))


def weakly_coupled_scalars(
    z_set: ImpedanceSet,
    link: LinkConfig,
    cfg: NoiseConfig,
    *,
    normalized: bool = False,
) -> tuple[complex, float]:
    """
    Diagonal entries σ_c² of P(f) and σ_n² of R_n(f).

    Args:
        z_set: Impedances at the evaluation frequency
        link: Link configuration
        cfg: Noise configuration
        normalized: Return the unit scalars used for weakly coupled arrays

    Returns:
        Tuple of (σ_c², σ_n²)
    """
    if normalized:
        return 1.0 + 0j, 1.0
    coupling = coupling_matrix(z_set, link)
    covariance = noise_covariance(z_set, link, cfg, coupling=coupling)
    return complex(coupling[0, 0]), float(np.real(covariance.matrix[0, 0]))
