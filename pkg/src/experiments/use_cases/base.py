import logging
import math
from typing import ClassVar

from src import __version__
from src.experiments.exceptions import NonFiniteResult
from src.experiments.models import ScenarioConfig, SweepResult
from src.experiments.pool import WorkerPool
from src.experiments.scenario import scenario_hash

__all__ = ("SweepUseCase",)

logger = logging.getLogger(__name__)


class SweepUseCase:
    """
    Base for runners that evaluate independent grid points on a worker pool.

    Attributes:
        runner: Runner name recorded in result metadata
    """

    runner: ClassVar[str]

    def __init__(self, pool: WorkerPool):
        self._pool = pool

    def _metadata(self, cfg: ScenarioConfig, points: int, **extra: str) -> dict[str, str]:
        quad = cfg.quadrature
        return {
            "runner": self.runner,
            "version": __version__,
            "config_hash": scenario_hash(cfg),
            "points": str(points),
            "quadrature": f"nodes={quad.nodes} initial_panels={quad.initial_panels} "
            f"max_panels={quad.max_panels} rtol={quad.rtol:g}",
            **extra,
        }

    def _log_start(self, cfg: ScenarioConfig, points: int) -> None:
        logger.info("Running %s: %s scenario, %d points", self.runner, cfg.coupling_mode.value, points)

    def _result(self, columns: list[str], rows: list[list[float]], metadata: dict[str, str]) -> SweepResult:
        """
        Wrap evaluated rows in a SweepResult.

        Raises:
            NonFiniteResult: If any cell is NaN or infinite
        """
        for i, row in enumerate(rows):
            bad = [name for name, cell in zip(columns, row) if not math.isfinite(cell)]
            if bad:
                raise NonFiniteResult(
                    f"{self.runner} produced non-finite values in row {i} ({', '.join(bad)})",
                    runner=self.runner,
                    row=i,
                )
        return SweepResult(columns=columns, rows=rows, metadata=metadata)
