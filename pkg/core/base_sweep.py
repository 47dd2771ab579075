from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, List, Optional, Tuple

from tqdm import tqdm

from core.errors import SimulationError
from helpers.constants import SIM_PROGRESS, SIM_THREADS
from helpers.logger import create_logger
from schemas import ExperimentRow, ScenarioPoint, SweepPlan

logger = create_logger(__name__)


class BaseSweep(ABC):
    """
    A sweep walks the plan's points in order and asks ``run_point`` for their
    rows. Point p is (grid index, SNR index) flattened row-major; per-trial
    seeds derive from (master_seed, p, trial) so results do not depend on the
    number of worker threads.
    """
    kind: str = ""
    label_columns: List[str] = []

    def __init__(self, threads: int = SIM_THREADS, progress: bool = SIM_PROGRESS):
        self.threads = max(1, int(threads))
        self.progress = progress
        self.failures: List[str] = []

    @abstractmethod
    def run_point(self, plan: SweepPlan, p: int, point: ScenarioPoint,
                  snr_db: Optional[float]) -> List[ExperimentRow]:
        pass

    def points(self, plan: SweepPlan) -> Iterator[Tuple[int, ScenarioPoint, Optional[float]]]:
        snr_grid = plan.snr_grid_db or [None]
        for gi, point in enumerate(plan.grid):
            for si, snr_db in enumerate(snr_grid):
                yield gi * len(snr_grid) + si, point, snr_db

    def map_trials(self, fn: Callable, items: Iterable) -> list:
        """Order-preserving map, threaded when more than one worker is configured."""
        if self.threads == 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            return list(executor.map(fn, items))

    def __call__(self, plan: SweepPlan) -> List[ExperimentRow]:
        if plan.kind != self.kind:
            raise ValueError(f"{type(self).__name__} runs '{self.kind}' plans, got '{plan.kind}'")

        logger.info(f"Starting {plan.kind} sweep: {len(plan.grid)} scenarios, "
                    f"{len(plan.snr_grid_db) or 1} SNR points, {plan.trials} trials, seed {plan.master_seed}")
        self.failures = []
        rows: List[ExperimentRow] = []
        points = list(self.points(plan))
        for p, point, snr_db in tqdm(points, desc=plan.kind, disable=not self.progress):
            try:
                rows.extend(self.run_point(plan, p, point, snr_db))
            except SimulationError as e:
                diagnostic = f"point {p} (snr_db={snr_db}) aborted: {e}"
                logger.error(diagnostic)
                self.failures.append(diagnostic)

        logger.info(f"Finished {plan.kind} sweep: {len(rows)} rows, {len(self.failures)} failed points")
        return rows
