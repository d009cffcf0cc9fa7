import hashlib

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import constants

__all__ = (
    "SPEED_OF_LIGHT",
    "BOLTZMANN",
    "sinc",
    "principal_phase",
    "unit_phasor",
    "db_to_linear",
    "linear_to_db",
    "get_sha256hash",
)

SPEED_OF_LIGHT: float = constants.c
"""Speed of light in vacuum, exactly 299 792 458 m/s."""
BOLTZMANN: float = constants.k
"""Boltzmann constant, exactly 1.380649e-23 J/K."""


def sinc(x: ArrayLike) -> NDArray[np.float64]:
    """
    Unnormalized sinc, sin(x)/x with sinc(0) = 1.

    Args:
        x: Argument in radians (scalar or array)

    Returns:
        sin(x)/x evaluated element-wise
    """
    # numpy's sinc is normalized: sinc(t) = sin(pi t)/(pi t)
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


def principal_phase(z: ArrayLike) -> NDArray[np.float64]:
    """
    Phase of a complex array on the half-open branch (-pi, pi].

    Args:
        z: Complex scalar or array

    Returns:
        Phase angles in radians
    """
    phase = np.angle(np.asarray(z, dtype=complex))
    return np.where(phase <= -np.pi, np.pi, phase)


def unit_phasor(z: ArrayLike) -> NDArray[np.complex128]:
    """Return exp(j∠z) element-wise on the principal branch."""
    return np.exp(1j * principal_phase(z))


def db_to_linear(value_db: ArrayLike) -> NDArray[np.float64]:
    """Convert a power ratio from dB to linear scale."""
    return np.power(10.0, np.asarray(value_db, dtype=float) / 10.0)


def linear_to_db(value: ArrayLike) -> NDArray[np.float64]:
    """Convert a linear power ratio to dB."""
    return 10.0 * np.log10(np.asarray(value, dtype=float))


def get_sha256hash(secret: str) -> str:
    """
    Generate SHA-256 hash of a string.

    Args:
        secret: String to hash

    Returns:
        Hexadecimal representation of the SHA-256 hash
    """
    return hashlib.sha256(secret.encode("utf-8")).hexdigest()
