import numpy as np
import pytest

from src.channel import coupling_matrix
from src.core.utils import BOLTZMANN
from src.impedance import CmsClosedFormModel, ImpedanceSet, ZeroCouplingModel, array_impedance_matrix
from src.noise import (
    DEFAULT_NOISE_BANDWIDTH,
    ModelInconsistency,
    NoiseConfig,
    NoiseCovariance,
    SingularNoiseCovariance,
    noise_covariance,
    unity_noise_covariance,
    weakly_coupled_scalars,
)


def test_noise_config_defaults():
    cfg = NoiseConfig()
    assert cfg.noise_factor == pytest.approx(10**0.5, rel=1e-14)
    assert cfg.bandwidth == DEFAULT_NOISE_BANDWIDTH
    assert cfg.thermal_scale == pytest.approx(4 * BOLTZMANN * 290 * DEFAULT_NOISE_BANDWIDTH, rel=1e-14)


@pytest.mark.parametrize("f", [4e9, 10e9, 16e9])
def test_covariance_is_hermitian_psd(tight_geometry, link, noise_cfg, f):
    rn = noise_covariance(array_impedance_matrix(tight_geometry, CmsClosedFormModel(), f), link, noise_cfg)
    np.testing.assert_array_equal(rn.matrix, rn.matrix.conj().T)
    assert rn.min_eigenvalue > 0
    assert not rn.is_singular


def test_zero_coupling_covariance_is_diagonal(small_tight_geometry, link, noise_cfg):
    z_set = array_impedance_matrix(small_tight_geometry, ZeroCouplingModel(), 11e9)
    rn = noise_covariance(z_set, link, noise_cfg)
    p = coupling_matrix(z_set, link)[0, 0]
    amplifier = link.lna_impedance.real * (noise_cfg.noise_factor - 1)
    antenna = link.lna_gain**2 * abs(link.lna_impedance) ** 2 * abs(p) ** 2 * z_set.z_self_rx.real
    expected = noise_cfg.thermal_scale * (amplifier + antenna)
    np.testing.assert_array_equal(rn.matrix[~np.eye(4, dtype=bool)], 0)
    np.testing.assert_allclose(np.diag(rn.matrix).real, expected, rtol=1e-13)


def test_covariance_scales_with_bandwidth(tight_geometry, link, noise_cfg):
    z_set = array_impedance_matrix(tight_geometry, CmsClosedFormModel(), 9e9)
    narrow = noise_covariance(z_set, link, noise_cfg)
    wide = noise_covariance(z_set, link, noise_cfg.model_copy(update={"noise_bandwidth": 2e7}))
    np.testing.assert_allclose(wide.matrix, 2 * narrow.matrix, rtol=1e-13, atol=1e-13 * np.max(np.abs(wide.matrix)))


def test_solve_matches_dense_solver(tight_geometry, link, noise_cfg):
    z_set = array_impedance_matrix(tight_geometry, CmsClosedFormModel(), 10e9)
    rn = noise_covariance(z_set, link, noise_cfg)
    rhs = np.exp(1j * np.arange(32) * 0.3)
    expected = np.linalg.solve(rn.matrix, rhs)
    np.testing.assert_allclose(rn.solve(rhs), expected, rtol=1e-8, atol=1e-10 * np.max(np.abs(expected)))


def test_singular_covariance_is_rejected():
    rn = NoiseCovariance(freq=1e10, matrix=np.zeros((3, 3), dtype=complex), eigenvalues=np.zeros(3))
    assert rn.is_singular
    with pytest.raises(SingularNoiseCovariance):
        rn.solve(np.ones(3, dtype=complex))


def test_non_passive_impedance_is_inconsistent(link, noise_cfg):
    z_matrix = np.array([[1, 5], [5, 1]], dtype=complex)
    z_set = ImpedanceSet(freq=1e10, z_self_rx=1 + 0j, z_self_tx=1 + 0j, z_matrix=z_matrix)
    with pytest.raises(ModelInconsistency):
        noise_covariance(z_set, link, noise_cfg)


def test_unity_covariance():
    rn = unity_noise_covariance(10e9, 5)
    np.testing.assert_array_equal(rn.matrix, np.eye(5))
    np.testing.assert_allclose(rn.solve(np.arange(5, dtype=complex)), np.arange(5), atol=1e-15)


def test_weakly_coupled_scalars(small_tight_geometry, link, noise_cfg):
    z_set = array_impedance_matrix(small_tight_geometry, ZeroCouplingModel(), 10e9)
    assert weakly_coupled_scalars(z_set, link, noise_cfg, normalized=True) == (1 + 0j, 1.0)
    sigma_c2, sigma_n2 = weakly_coupled_scalars(z_set, link, noise_cfg)
    assert sigma_c2 == pytest.approx(1 / (z_set.z_self_rx + link.lna_impedance), rel=1e-14)
    assert sigma_n2 == pytest.approx(noise_covariance(z_set, link, noise_cfg).matrix[0, 0].real, rel=1e-14)


def test_vanishing_lna_gain_leaves_amplifier_noise(tight_geometry, link, noise_cfg):
    z_set = array_impedance_matrix(tight_geometry, CmsClosedFormModel(), 10e9)
    rn = noise_covariance(z_set, link.model_copy(update={"lna_gain": 0.0}), noise_cfg)
    expected = noise_cfg.thermal_scale * link.lna_impedance.real * (noise_cfg.noise_factor - 1)
    np.testing.assert_allclose(rn.matrix, expected * np.eye(32), rtol=1e-14, atol=0)


def test_covariance_scales_with_temperature(tight_geometry, link, noise_cfg):
    z_set = array_impedance_matrix(tight_geometry, CmsClosedFormModel(), 12e9)
    base = noise_covariance(z_set, link, noise_cfg)
    hotter = noise_covariance(z_set, link, noise_cfg.model_copy(update={"temperature": 3 * noise_cfg.temperature}))
    np.testing.assert_allclose(hotter.matrix, 3 * base.matrix, rtol=1e-13, atol=1e-13 * np.max(np.abs(hotter.matrix)))


@pytest.mark.parametrize("f", [4e9, 10e9, 16e9])
def test_quadratic_form_is_non_negative(tight_geometry, link, noise_cfg, f):
    rn = noise_covariance(array_impedance_matrix(tight_geometry, CmsClosedFormModel(), f), link, noise_cfg)
    rng = np.random.default_rng(7)
    floor = 1e-12 * float(np.real(np.trace(rn.matrix)))
    for _ in range(50):
        x = rng.standard_normal(32) + 1j * rng.standard_normal(32)
        assert rn.quadratic_form(x) >= -floor * np.vdot(x, x).real
