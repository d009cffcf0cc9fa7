import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.beamform import (
    Beamformer,
    BeamformerBank,
    BeamformerKind,
    DesignFrequencyMismatch,
    InvalidBeamformer,
    conv_weights,
    optimal_delays,
    pop_weights,
    td1_geometric_delays,
    td2_center_delays,
    ttd_wc_weights,
)
from src.channel import channel_state, steering_vector, unity_channel_state
from src.impedance import ArrayGeometry, CmsClosedFormModel, ZeroCouplingModel, array_impedance_matrix
from src.impedance.exceptions import InvalidFrequency
from src.noise import noise_covariance, unity_noise_covariance

CENTER = 10e9
AOA = math.pi / 3


@pytest.fixture
def center_design(tight_geometry, link, noise_cfg):
    model = CmsClosedFormModel()
    z_set = array_impedance_matrix(tight_geometry, model, CENTER)
    state = channel_state(CENTER, tight_geometry, model, link, z_set=z_set)
    return state, noise_covariance(z_set, link, noise_cfg)


def test_conv_weights_have_unit_modulus(weak_geometry):
    w = conv_weights(CENTER, AOA, weak_geometry)
    np.testing.assert_allclose(np.abs(w.weights), 1.0, rtol=1e-14)
    np.testing.assert_array_equal(w.weights, steering_vector(CENTER, AOA, weak_geometry))


@pytest.mark.parametrize("f", [9e9, 10e9, 11e9])
def test_ttd_weights_follow_steering_vector(weak_geometry, f):
    w = ttd_wc_weights(f, AOA, weak_geometry)
    np.testing.assert_allclose(w.weights, steering_vector(f, AOA, weak_geometry), rtol=1e-12, atol=1e-12)


def test_geometric_delays_vanish_at_broadside(weak_geometry):
    np.testing.assert_array_equal(td1_geometric_delays(0.0, weak_geometry), 0.0)


def test_geometric_delay_at_endfire(element):
    geometry = ArrayGeometry(n_elements=2, spacing=0.005, element=element, resonance=CENTER)
    delays = td1_geometric_delays(math.pi / 2, geometry)
    assert delays[0] == 0
    assert delays[1] == pytest.approx(1.6678e-11, rel=1e-4)


def test_pop_with_unity_channel_is_conventional(weak_geometry):
    state = unity_channel_state(CENTER, AOA, weak_geometry)
    w = pop_weights(CENTER, state, unity_noise_covariance(CENTER, weak_geometry.n_elements))
    np.testing.assert_allclose(w.weights, steering_vector(CENTER, AOA, weak_geometry), rtol=1e-12, atol=1e-12)


def test_pop_weights_have_unit_modulus(center_design):
    w = pop_weights(CENTER, *center_design)
    np.testing.assert_allclose(np.abs(w.weights), 1.0, rtol=1e-14)


def test_pop_rejects_off_center_inputs(weak_geometry):
    state = unity_channel_state(11e9, AOA, weak_geometry)
    with pytest.raises(DesignFrequencyMismatch):
        pop_weights(CENTER, state, unity_noise_covariance(11e9, weak_geometry.n_elements))


def test_optimal_delays_on_principal_branch(tight_geometry, link, noise_cfg):
    model = CmsClosedFormModel()
    for f in (4e9, 10e9, 16e9):
        z_set = array_impedance_matrix(tight_geometry, model, f)
        state = channel_state(f, tight_geometry, model, link, z_set=z_set)
        delays = optimal_delays(f, state, noise_covariance(z_set, link, noise_cfg))
        assert np.all(delays > -1 / (2 * f))
        assert np.all(delays <= 1 / (2 * f))


def test_optimal_delays_reject_non_positive_frequency(weak_geometry):
    state = unity_channel_state(CENTER, AOA, weak_geometry)
    with pytest.raises(InvalidFrequency):
        optimal_delays(0.0, state, unity_noise_covariance(CENTER, weak_geometry.n_elements))


@pytest.mark.parametrize("f", [7e9, 10e9, 13e9])
def test_uncoupled_optimal_delays_are_geometric(small_tight_geometry, link, noise_cfg, f):
    model = ZeroCouplingModel()
    z_set = array_impedance_matrix(small_tight_geometry, model, f)
    state = channel_state(f, small_tight_geometry, model, link, z_set=z_set)
    delays = optimal_delays(f, state, noise_covariance(z_set, link, noise_cfg))
    offset = 2 * np.pi * f * (delays - td1_geometric_delays(AOA, small_tight_geometry))
    # equal up to a common offset, modulo one period
    np.testing.assert_allclose(np.angle(np.exp(1j * (offset - offset[0]))), 0.0, atol=1e-9)


def test_center_delays_equal_optimal_at_center(center_design):
    np.testing.assert_array_equal(td2_center_delays(CENTER, *center_design), optimal_delays(CENTER, *center_design))


def test_bank_keeps_request_order(tight_geometry, center_design):
    kinds = [BeamformerKind.TD_OPT, BeamformerKind.POP, BeamformerKind.TD_I, BeamformerKind.TD_II]
    bank = BeamformerBank.design(kinds, AOA, tight_geometry, *center_design)
    assert bank.kinds == tuple(kinds)
    weights = bank.all_weights(*center_design)
    assert [w.freq for w in weights] == [CENTER] * 4
    # TD-II, POP and TD-opt coincide at the design frequency
    np.testing.assert_allclose(weights[3].weights, weights[0].weights, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(weights[1].weights, weights[0].weights, rtol=1e-9, atol=1e-9)


def test_bank_requires_generic_delays(tight_geometry, center_design):
    with pytest.raises(InvalidBeamformer):
        BeamformerBank.design([BeamformerKind.TD_GENERIC], AOA, tight_geometry, *center_design)
    bank = BeamformerBank.design(
        [BeamformerKind.TD_GENERIC], AOA, tight_geometry, *center_design, td_delays=np.zeros(32),
    )
    np.testing.assert_array_equal(bank.all_weights(*center_design)[0].weights, np.ones(32))


def test_beamformer_validation():
    with pytest.raises(ValidationError):
        Beamformer(kind=BeamformerKind.POP)
    with pytest.raises(ValidationError):
        Beamformer(kind=BeamformerKind.TD_I)
    with pytest.raises(ValidationError):
        Beamformer(kind=BeamformerKind.TD_II, delays=np.zeros(3), design_freq=1e9, design_weights=np.ones(4, complex))
    assert Beamformer(kind=BeamformerKind.TD_OPT).n_elements is None


def test_kind_properties():
    assert BeamformerKind.CONV.is_phase_controlled
    assert BeamformerKind.POP.is_phase_controlled
    assert not BeamformerKind.TD_OPT.is_phase_controlled
    assert not BeamformerKind.TD_OPT.has_fixed_delays
    assert BeamformerKind("td-ii").has_fixed_delays
