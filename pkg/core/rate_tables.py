from typing import List, Optional

from core.base_sweep import BaseSweep
from core.params import derive
from schemas import ExperimentRow, ScenarioPoint, SweepPlan


class SamplingRateTable(BaseSweep):
    """Dechirped-receiver sampling rate over resolution and speed grids."""
    kind = "sampling_rate"
    label_columns = ["r_res", "v_max", "a", "r_max"]

    def run_point(self, plan: SweepPlan, p: int, point: ScenarioPoint,
                  snr_db: Optional[float]) -> List[ExperimentRow]:
        config = point.config
        derived = derive(config)
        labels = {"r_res": config.r_res, "v_max": config.v_max, "a": config.a, "r_max": config.r_max}
        return [ExperimentRow(kind=plan.kind, labels=labels, metric="f_s", value=derived.f_s,
                              trials=1, seed=plan.master_seed)]


class DataRateTable(BaseSweep):
    """One bit per triangular symbol: data rate = 1 / T_sym."""
    kind = "data_rate"
    label_columns = ["r_max", "a", "T_sym"]

    def run_point(self, plan: SweepPlan, p: int, point: ScenarioPoint,
                  snr_db: Optional[float]) -> List[ExperimentRow]:
        config = point.config
        derived = derive(config)
        labels = {"r_max": config.r_max, "a": config.a, "T_sym": derived.T_sym}
        return [ExperimentRow(kind=plan.kind, labels=labels, metric="data_rate", value=derived.data_rate,
                              trials=1, seed=plan.master_seed)]
