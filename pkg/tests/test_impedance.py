import numpy as np
import pytest

from src.core.exceptions import DomainError
from src.core.utils import SPEED_OF_LIGHT
from src.impedance import (
    TX_RADIUS_FACTOR,
    CmsClosedFormModel,
    ZeroCouplingModel,
    array_impedance_matrix,
    check_passivity,
    chu_quality_factor,
    chu_self_impedance,
    chu_series_rlc,
    get_mutual_model,
    mutual_impedance,
)
from src.impedance.exceptions import InvalidFrequency, InvalidSeparation, UnknownMutualModel

CENTER = 10e9


def test_self_impedance_is_real_at_resonance(element):
    z = chu_self_impedance(CENTER, element, CENTER)
    assert z.imag == 0.0
    assert z.real == 1.0
    assert abs(z) == 1.0


def test_self_impedance_is_capacitive_below_and_inductive_above_resonance(element):
    assert chu_self_impedance(0.5 * CENTER, element, CENTER).imag < 0
    assert chu_self_impedance(2.0 * CENTER, element, CENTER).imag > 0


def test_self_impedance_matches_lc_reactance(element):
    circuit = chu_series_rlc(element, CENTER)
    for f in (3e9, 7e9, 13e9):
        omega = 2 * np.pi * f
        expected = omega * circuit.inductance - 1 / (omega * circuit.capacitance)
        assert chu_self_impedance(f, element, CENTER).imag == pytest.approx(expected, rel=1e-9)


def test_chu_quality_factor():
    ka = 2 * np.pi * CENTER * 1e-3 / SPEED_OF_LIGHT
    assert chu_quality_factor(CENTER, 1e-3) == pytest.approx(1 / ka**3 + 1 / ka, rel=1e-14)


@pytest.mark.parametrize("f", [0.0, -1e9])
def test_self_impedance_rejects_non_positive_frequency(element, f):
    with pytest.raises(InvalidFrequency):
        chu_self_impedance(f, element, CENTER)
    with pytest.raises(DomainError):
        chu_self_impedance(f, element, CENTER)


def test_zero_model_returns_exact_zero(element):
    assert mutual_impedance(ZeroCouplingModel(), CENTER, 0.01, element) == 0j


def test_mutual_impedance_is_deterministic(element):
    model = CmsClosedFormModel()
    assert mutual_impedance(model, CENTER, 0.007, element) == mutual_impedance(model, CENTER, 0.007, element)


def test_mutual_impedance_decays_with_separation(element):
    model = CmsClosedFormModel()
    separations = np.geomspace(1e-3, 10.0, 200)
    magnitudes = np.abs(model.evaluate(CENTER, separations, element))
    assert np.all(np.diff(magnitudes) < 0)
    far = mutual_impedance(model, CENTER, 100 * SPEED_OF_LIGHT / CENTER, element)
    assert abs(far) < 1e-2 * abs(chu_self_impedance(CENTER, element, CENTER))


def test_mutual_resistance_approaches_self_resistance(element):
    z = mutual_impedance(CmsClosedFormModel(), CENTER, 1e-5, element)
    assert z.real == pytest.approx(1.0, abs=1e-4)


@pytest.mark.parametrize("separation", [0.0, -0.01])
def test_mutual_impedance_rejects_colocated_elements(element, separation):
    with pytest.raises(InvalidSeparation):
        mutual_impedance(CmsClosedFormModel(), CENTER, separation, element)


def test_unknown_model_name():
    assert isinstance(get_mutual_model("zero"), ZeroCouplingModel)
    with pytest.raises(UnknownMutualModel):
        get_mutual_model("full-wave")


def test_single_element_matrix(tight_geometry):
    geometry = tight_geometry.model_copy(update={"n_elements": 1})
    z_set = array_impedance_matrix(geometry, CmsClosedFormModel(), 12e9)
    assert z_set.z_matrix.shape == (1, 1)
    assert z_set.z_matrix[0, 0] == z_set.z_self_rx


def test_zero_model_matrix_is_diagonal(small_tight_geometry):
    z_set = array_impedance_matrix(small_tight_geometry, ZeroCouplingModel(), 12e9)
    np.testing.assert_array_equal(z_set.z_matrix, np.diag(np.full(4, z_set.z_self_rx)))


def test_matrix_is_symmetric_toeplitz(tight_geometry):
    geometry = tight_geometry.model_copy(update={"n_elements": 3})
    model = CmsClosedFormModel()
    z = array_impedance_matrix(geometry, model, 9e9).z_matrix
    assert z[0, 2] == mutual_impedance(model, 9e9, 2 * geometry.spacing, geometry.element)
    np.testing.assert_array_equal(z, z.T)
    np.testing.assert_array_equal(z[1:, 1:], z[:-1, :-1])


def test_transmit_antenna_is_larger(tight_geometry):
    assert tight_geometry.transmit_element.radius == pytest.approx(TX_RADIUS_FACTOR * tight_geometry.element.radius)
    assert tight_geometry.coupling_factor == pytest.approx(2.2)


def test_default_model_is_passive_over_band(tight_geometry):
    for f in np.linspace(4e9, 16e9, 13):
        passes, margin = check_passivity(array_impedance_matrix(tight_geometry, CmsClosedFormModel(), f))
        assert passes, f"Re(Z) not PSD at {f:.3g} Hz (margin {margin:.3e})"
