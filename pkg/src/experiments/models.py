import math
from enum import Enum
from typing import Annotated, Any, Literal, Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.beamform import BeamformerKind
from src.channel import LinkConfig
from src.core.base_types import Frequency
from src.core.utils import SPEED_OF_LIGHT, linear_to_db
from src.impedance import ArrayGeometry
from src.metrics import BandSpec, QuadratureSpec
from src.noise import NoiseConfig

__all__ = (
    "TIGHT_SPACING",
    "TIGHT_COUPLING_FACTOR",
    "CouplingMode",
    "SweepKind",
    "SweepSpec",
    "ScenarioConfig",
    "SweepResult",
    "CheckResult",
    "ValidationReport",
)

TIGHT_SPACING = 0.005  # m
TIGHT_COUPLING_FACTOR = 2.2  # δ/a_R of the tightly coupled array
TIGHT_QUADRATURE_RTOL = 1e-6

Angle = Annotated[float, Field(ge=-math.pi / 2, le=math.pi / 2)]


class CouplingMode(str, Enum):
    WEAK_UNITY = "weak-unity"
    TIGHT_DEFAULT = "tight-default"
    CUSTOM = "custom"


class SweepKind(str, Enum):
    FREQUENCY = "frequency"
    BANDWIDTH = "bandwidth"


class SweepSpec(BaseModel):
    """Sweep grid of the generic sweep runner."""
    kind: SweepKind = SweepKind.FREQUENCY
    """Swept variable: signal frequency or averaging bandwidth"""
    start: Frequency
    """First grid value, Hz"""
    stop: Frequency
    """Last grid value, Hz"""
    points: int = Field(default=1024, ge=2)
    """Number of grid points"""
    log_scale: bool = False
    """Logarithmic instead of uniform spacing"""

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _validate_range(self) -> Self:
        if self.stop <= self.start:
            raise ValueError("Sweep stop must exceed start.")
        return self

    @property
    def grid(self) -> np.ndarray:
        if self.log_scale:
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)

    @property
    def step(self) -> float:
        """Uniform bin width span / (points − 1), Hz."""
        return (self.stop - self.start) / (self.points - 1)


def _deep_merge(defaults: dict[str, Any], data: dict[str, Any]) -> dict[str, Any]:
    merged = dict(defaults)
    for key, value in data.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _mode_defaults(mode: str, center: float) -> dict[str, Any]:
    radius = TIGHT_SPACING / TIGHT_COUPLING_FACTOR
    if mode == CouplingMode.WEAK_UNITY.value:
        return {
            "geometry": {
                "spacing": SPEED_OF_LIGHT / (2.0 * center),
                "element": {"radius": radius},
                "resonance": center,
            },
            "mutual_model": "zero",
            "beamformers": [BeamformerKind.CONV.value, BeamformerKind.TTD_WC.value],
            "sweep": {"kind": SweepKind.FREQUENCY.value, "start": 0.9 * center, "stop": 1.1 * center},
        }
    return {
        "geometry": {"spacing": TIGHT_SPACING, "element": {"radius": radius}, "resonance": center},
        "mutual_model": "cms-closed-form",
        "beamformers": [
            BeamformerKind.POP.value,
            BeamformerKind.TD_I.value,
            BeamformerKind.TD_II.value,
            BeamformerKind.TD_OPT.value,
        ],
        "sweep": {"kind": SweepKind.FREQUENCY.value, "start": 0.4 * center, "stop": 1.6 * center},
        "quadrature": {"rtol": TIGHT_QUADRATURE_RTOL},
    }


class ScenarioConfig(BaseModel):
    """Every physical and sweep parameter of an experiment run."""
    coupling_mode: CouplingMode
    """weak-unity (γ = 1, P = I, R_n = I), tight-default or custom"""
    geometry: ArrayGeometry
    """Receive array"""
    link: LinkConfig = Field(default_factory=LinkConfig)
    """Propagation and front-end parameters"""
    noise: NoiseConfig = Field(default_factory=NoiseConfig)
    """Thermal and amplifier noise"""
    band: BandSpec = Field(default_factory=BandSpec)
    """Design frequency, averaging bandwidth and power per tone"""
    sweep: SweepSpec
    """Grid of the generic sweep runner"""
    mutual_model: Literal["cms-closed-form", "zero"]
    """Mutual impedance model"""
    beamformers: list[BeamformerKind]
    """Strategies evaluated by the sweep runner"""
    td_delays: list[float] | None = None
    """Per-element delays of the td-generic strategy, s"""
    quadrature: QuadratureSpec = Field(default_factory=QuadratureSpec)
    """Band-average quadrature settings"""
    aoa_set: list[Angle] = [0.0, math.pi / 3, math.pi / 2]
    """Angles of arrival of the squint-loss runner, rad"""

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="before")
    @classmethod
    def _fill_mode_defaults(cls, data: Any) -> Any:
        if not isinstance(data, dict) or "coupling_mode" not in data:
            return data
        mode = data["coupling_mode"]
        mode = mode.value if isinstance(mode, CouplingMode) else str(mode)
        band = data.get("band")
        center = BandSpec().center
        if isinstance(band, dict) and "center" in band:
            center = band["center"]
        elif isinstance(band, BandSpec):
            center = band.center
        try:
            center = float(center)
        except (TypeError, ValueError):
            return data
        if center <= 0:
            return data
        return _deep_merge(_mode_defaults(mode, center), data)

    @field_validator("beamformers")
    @classmethod
    def _validate_beamformers(cls, value: list[BeamformerKind]) -> list[BeamformerKind]:
        if not value:
            raise ValueError("At least one beamformer is required.")
        return value

    @model_validator(mode="after")
    def _validate_bandwidth_sweep(self) -> Self:
        if self.sweep.kind is SweepKind.BANDWIDTH and self.sweep.stop >= 2.0 * self.band.center:
            raise ValueError("Bandwidth sweep must stay below twice the centre frequency.")
        return self

    @model_validator(mode="after")
    def _validate_td_delays(self) -> Self:
        if BeamformerKind.TD_GENERIC in self.beamformers:
            if self.td_delays is None or len(self.td_delays) != self.geometry.n_elements:
                raise ValueError(f"td-generic requires td_delays with {self.geometry.n_elements} entries.")
        return self

    @property
    def is_unity(self) -> bool:
        return self.coupling_mode is CouplingMode.WEAK_UNITY

    @property
    def effective_noise(self) -> NoiseConfig:
        """Noise settings with the bandwidth defaulted to the sweep bin width."""
        if self.noise.noise_bandwidth is not None:
            return self.noise
        return self.noise.model_copy(update={"noise_bandwidth": self.sweep.step})

    @property
    def weak_geometry(self) -> ArrayGeometry:
        """Same array at half-wavelength spacing λ_c/2."""
        return self.geometry.model_copy(update={"spacing": SPEED_OF_LIGHT / (2.0 * self.band.center)})

    def with_bin_width(self, step: float) -> Self:
        """Copy whose unset noise bandwidth is pinned to the step of the grid actually evaluated."""
        if self.noise.noise_bandwidth is not None:
            return self
        return self.model_copy(update={"noise": self.noise.model_copy(update={"noise_bandwidth": step})})

    def with_points(self, points: int) -> Self:
        """Copy with another sweep point count."""
        return self.model_copy(update={"sweep": self.sweep.model_copy(update={"points": points})})


class SweepResult(BaseModel):
    """Tabular output of a runner."""
    columns: list[str]
    """Column names; the first is the sweep variable"""
    rows: list[list[float]]
    """One row per sweep point"""
    metadata: dict[str, str] = {}
    """Config hash, tool version, quadrature settings and runner-specific figures"""

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _validate_rows(self) -> Self:
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise ValueError(f"Row {i} has {len(row)} cells, expected {len(self.columns)}.")
            if not all(math.isfinite(cell) for cell in row):
                raise ValueError(f"Row {i} contains non-finite cells.")
        return self

    def column(self, name: str) -> np.ndarray:
        """Values of one column."""
        index = self.columns.index(name)
        return np.array([row[index] for row in self.rows])

    def with_db_columns(self) -> "SweepResult":
        """Copy with a derived `<name>_db` column after every linear SNR column."""
        snr = [i for i, name in enumerate(self.columns) if name.startswith(("snr_", "avg_snr_"))]
        columns = list(self.columns) + [f"{self.columns[i]}_db" for i in snr]
        rows = []
        for row in self.rows:
            extra = [float(linear_to_db(max(row[i], np.finfo(float).tiny))) for i in snr]
            rows.append(list(row) + extra)
        return SweepResult(columns=columns, rows=rows, metadata=self.metadata)


class CheckResult(BaseModel):
    """Outcome of one validation check."""
    name: str
    passed: bool
    measured: float
    """Measured error or quantity"""
    tolerance: float
    """Threshold the measurement is compared against"""
    reported_only: bool = False
    """Model-contingent claim; never fails the run"""
    detail: str = ""


class ValidationReport(BaseModel):
    """Machine-readable pass/fail list."""
    checks: list[CheckResult] = []
    metadata: dict[str, str] = {}

    @property
    def passed(self) -> bool:
        return all(check.passed or check.reported_only for check in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not (check.passed or check.reported_only)]
