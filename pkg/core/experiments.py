"""
Entry points for every sweep kind, plus the plan builders used by the CLI,
the reproduction script and the HTTP service.
"""
from typing import List, Optional, Sequence

from core.base_sweep import BaseSweep
from core.ber_sweep import BerSweep
from core.rate_tables import DataRateTable, SamplingRateTable
from core.rmse_sweep import RmseDistanceSweep, RmseSweep
from helpers.constants import SIM_PROGRESS, SIM_THREADS
from schemas import (CompensationResidual, ExperimentRow, ScenarioPoint, SweepPlan,
                     SystemConfig, TargetState)

# Map of available sweep kinds
SWEEP_REGISTRY = {
    "rmse_vs_speed": RmseSweep,
    "rmse_vs_distance": RmseDistanceSweep,
    "ber": BerSweep,
    "sampling_rate": SamplingRateTable,
    "data_rate": DataRateTable,
}


def make_sweep(kind: str, threads: int = SIM_THREADS, progress: bool = SIM_PROGRESS) -> BaseSweep:
    if kind not in SWEEP_REGISTRY:
        raise ValueError(f"Invalid sweep kind: {kind}. Available kinds: {list(SWEEP_REGISTRY.keys())}")
    return SWEEP_REGISTRY[kind](threads=threads, progress=progress)


def rmse_sweep(plan: SweepPlan, threads: int = SIM_THREADS) -> List[ExperimentRow]:
    if plan.kind not in ("rmse_vs_speed", "rmse_vs_distance"):
        raise ValueError(f"rmse_sweep needs an RMSE plan, got '{plan.kind}'")
    return make_sweep(plan.kind, threads)(plan)


def expand_residuals(plan: SweepPlan, residual_scenarios: Sequence[CompensationResidual]) -> SweepPlan:
    """Every (plan scenario, residual) combination, in plan order."""
    grid = [ScenarioPoint(config=point.config, residual=residual)
            for point in plan.grid for residual in residual_scenarios]
    return plan.model_copy(update={"grid": grid})


def ber_sweep(plan: SweepPlan, residual_scenarios: Sequence[CompensationResidual],
              threads: int = SIM_THREADS) -> List[ExperimentRow]:
    if plan.kind != "ber":
        raise ValueError(f"ber_sweep needs a ber plan, got '{plan.kind}'")
    return make_sweep("ber", threads)(expand_residuals(plan, residual_scenarios))


def sampling_rate_table(r_res_grid: Sequence[float], v_max_grid: Sequence[float], a: float,
                        base: SystemConfig) -> List[ExperimentRow]:
    grid = [ScenarioPoint(config=base.with_changes(r_res=r_res, v_max=v_max, a=a))
            for r_res in r_res_grid for v_max in v_max_grid]
    plan = SweepPlan(kind="sampling_rate", grid=grid, trials=1, master_seed=base.master_seed)
    return make_sweep("sampling_rate")(plan)


def data_rate_table(r_max_grid: Sequence[float], a_grid: Sequence[float],
                    base: SystemConfig) -> List[ExperimentRow]:
    grid = [ScenarioPoint(config=base.with_changes(r_max=r_max, a=a))
            for a in a_grid for r_max in r_max_grid]
    plan = SweepPlan(kind="data_rate", grid=grid, trials=1, master_seed=base.master_seed)
    return make_sweep("data_rate")(plan)


def rmse_plan(kind: str, base: SystemConfig, r0_values: Sequence[float], v0_values: Sequence[float],
              snr_grid_db: Sequence[float], trials: int, master_seed: Optional[int] = None) -> SweepPlan:
    """Cartesian grid of targets at a fixed system configuration."""
    grid = [ScenarioPoint(config=base, target=TargetState(r0=r0, v0=v0))
            for v0 in v0_values for r0 in r0_values]
    seed = base.master_seed if master_seed is None else master_seed
    return SweepPlan(kind=kind, grid=grid, snr_grid_db=list(snr_grid_db), trials=trials, master_seed=seed)


def ber_plan(base: SystemConfig, snr_grid_db: Sequence[float], n_bits: int,
             master_seed: Optional[int] = None) -> SweepPlan:
    seed = base.master_seed if master_seed is None else master_seed
    return SweepPlan(kind="ber", grid=[ScenarioPoint(config=base)], snr_grid_db=list(snr_grid_db),
                     trials=n_bits, master_seed=seed)
