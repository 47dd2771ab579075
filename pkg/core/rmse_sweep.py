import math
from typing import List, Optional

import numpy as np
import pandas as pd

from core.base_sweep import BaseSweep
from core.sensing_rx import sense
from helpers.logger import create_logger
from helpers.utils import stable_hash
from schemas import ExperimentRow, NoiseSpec, ScenarioPoint, SweepPlan

logger = create_logger(__name__)

SCENARIO_COLUMNS = ["r0", "v0", "r_max", "v_max", "a", "r_res"]


class RmseSweep(BaseSweep):
    """Distance/speed RMSE of the sensing chain over seeded trials."""
    kind = "rmse_vs_speed"
    label_columns = SCENARIO_COLUMNS + ["snr_db"]

    def run_point(self, plan: SweepPlan, p: int, point: ScenarioPoint,
                  snr_db: Optional[float]) -> List[ExperimentRow]:
        target, config = point.target, point.config

        def trial(i: int):
            noise = NoiseSpec(snr_db=snr_db, seed=stable_hash(plan.master_seed, p, i))
            estimate = sense(target, noise, config)
            return estimate.r0_hat - target.r0, estimate.v0_hat - target.v0

        errors = np.array(self.map_trials(trial, range(plan.trials)))
        err_r, err_v = errors[:, 0], errors[:, 1]

        labels = {"r0": target.r0, "v0": target.v0, "r_max": config.r_max, "v_max": config.v_max,
                  "a": config.a, "r_res": config.r_res, "snr_db": snr_db}
        metrics = {
            "rmse_r": math.sqrt(float(np.mean(err_r ** 2))),
            "rmse_v": math.sqrt(float(np.mean(err_v ** 2))),
            "bias_r": float(np.mean(err_r)),
            "bias_v": float(np.mean(err_v)),
        }
        logger.info(f"point {p}: r0={target.r0} v0={target.v0} snr={snr_db} "
                    f"rmse_r={metrics['rmse_r']:.4g} rmse_v={metrics['rmse_v']:.4g}")
        return [ExperimentRow(kind=plan.kind, labels=labels, metric=name, value=value,
                              trials=plan.trials, seed=plan.master_seed)
                for name, value in metrics.items()]


class RmseDistanceSweep(RmseSweep):
    kind = "rmse_vs_distance"


def snr_threshold(rows: List[ExperimentRow], metric: str = "rmse_r", factor: float = 10.0) -> pd.DataFrame:
    """
    Waterfall location per scenario: the highest SNR at which the metric is at
    least ``factor`` times its value at the highest simulated SNR.
    """
    records = []
    scenarios = {}
    for row in rows:
        if row.metric != metric:
            continue
        key = tuple(row.labels.get(column) for column in SCENARIO_COLUMNS)
        scenarios.setdefault(key, []).append((row.labels["snr_db"], row.value))

    for key, curve in scenarios.items():
        curve.sort()
        reference = curve[-1][1]
        degraded = [snr for snr, value in curve if value >= factor * reference]
        record = dict(zip(SCENARIO_COLUMNS, key))
        record.update(reference=reference, threshold_db=max(degraded) if degraded else float("nan"))
        records.append(record)
    return pd.DataFrame(records, columns=SCENARIO_COLUMNS + ["reference", "threshold_db"])
