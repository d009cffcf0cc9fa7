import math

import pytest

from src.channel import LinkConfig
from src.core.utils import SPEED_OF_LIGHT
from src.experiments import ScenarioConfig
from src.impedance import AntennaElement, ArrayGeometry
from src.noise import NoiseConfig

CENTER = 10e9
TIGHT_SPACING = 0.005
TIGHT_COUPLING_FACTOR = 2.2


@pytest.fixture
def element() -> AntennaElement:
    return AntennaElement(radius=TIGHT_SPACING / TIGHT_COUPLING_FACTOR)


@pytest.fixture
def weak_geometry(element: AntennaElement) -> ArrayGeometry:
    return ArrayGeometry(n_elements=32, spacing=SPEED_OF_LIGHT / (2 * CENTER), element=element, resonance=CENTER)


@pytest.fixture
def tight_geometry() -> ArrayGeometry:
    return ArrayGeometry.from_coupling_factor(32, TIGHT_SPACING, TIGHT_COUPLING_FACTOR, resonance=CENTER)


@pytest.fixture
def small_tight_geometry() -> ArrayGeometry:
    return ArrayGeometry.from_coupling_factor(4, TIGHT_SPACING, TIGHT_COUPLING_FACTOR, resonance=CENTER)


@pytest.fixture
def link() -> LinkConfig:
    return LinkConfig()


@pytest.fixture
def noise_cfg() -> NoiseConfig:
    return NoiseConfig(noise_bandwidth=1e7)


@pytest.fixture
def weak_cfg() -> ScenarioConfig:
    return ScenarioConfig.model_validate({"coupling_mode": "weak-unity"})


@pytest.fixture
def tight_cfg() -> ScenarioConfig:
    return ScenarioConfig.model_validate({"coupling_mode": "tight-default"})


@pytest.fixture
def small_tight_cfg() -> ScenarioConfig:
    return ScenarioConfig.model_validate(
        {
            "coupling_mode": "tight-default",
            "geometry": {"n_elements": 8},
            "aoa_set": [0.0, math.pi / 3],
        },
    )
