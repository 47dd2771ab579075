import math
from typing import List, Optional

import numpy as np
import pandas as pd

from core.base_sweep import BaseSweep
from core.channel import add_awgn
from core.comm_rx import apply_residual, count_bit_errors, demodulate
from core.params import derive
from core.waveform import modulate
from helpers.constants import BER_BATCH_BITS
from helpers.logger import create_logger
from helpers.utils import stable_hash
from schemas import CompensationResidual, ExperimentRow, NoiseSpec, ScenarioPoint, SweepPlan

logger = create_logger(__name__)

SCENARIO_COLUMNS = ["delay_residual", "doppler_residual", "r_max", "a"]


class BerSweep(BaseSweep):
    """
    modulate -> residual compensation error -> AWGN -> demodulate, over
    ``plan.trials`` random bits per point, simulated in fixed-size batches
    that each own their seeds.
    """
    kind = "ber"
    label_columns = SCENARIO_COLUMNS + ["snr_db"]

    def run_point(self, plan: SweepPlan, p: int, point: ScenarioPoint,
                  snr_db: Optional[float]) -> List[ExperimentRow]:
        derived = derive(point.config)
        residual = point.residual or CompensationResidual()
        batches = [(b, min(BER_BATCH_BITS, plan.trials - b * BER_BATCH_BITS))
                   for b in range(math.ceil(plan.trials / BER_BATCH_BITS))]

        def batch(item):
            b, n_bits = item
            rng = np.random.default_rng(stable_hash(plan.master_seed, p, b))
            bits = rng.integers(0, 2, size=n_bits)
            rx = apply_residual(modulate(bits, derived), residual, derived.T_sym)
            rx = add_awgn(rx, NoiseSpec(snr_db=snr_db, seed=stable_hash(plan.master_seed, p, b, 1)))
            return count_bit_errors(bits, demodulate(rx, n_bits, derived))

        bit_errors = sum(self.map_trials(batch, batches))
        ber = bit_errors / plan.trials

        labels = {"delay_residual": residual.delay_residual, "doppler_residual": residual.doppler_residual,
                  "r_max": point.config.r_max, "a": point.config.a, "snr_db": snr_db}
        logger.info(f"point {p}: residual=({residual.delay_residual}, {residual.doppler_residual}) "
                    f"snr={snr_db} ber={ber:.3e} ({bit_errors}/{plan.trials})")
        return [ExperimentRow(kind=plan.kind, labels=labels, metric=name, value=value,
                              trials=plan.trials, seed=plan.master_seed)
                for name, value in (("ber", ber), ("bit_errors", float(bit_errors)))]


def required_snr(rows: List[ExperimentRow], target_ber: float = 1e-4) -> pd.DataFrame:
    """
    SNR at which each scenario's BER curve first reaches ``target_ber``
    (log-linear interpolation between neighbouring points), and the extra
    power it needs over perfect compensation.
    """
    curves = {}
    for row in rows:
        if row.metric == "ber":
            key = (row.labels["delay_residual"], row.labels["doppler_residual"])
            curves.setdefault(key, []).append((row.labels["snr_db"], row.value))

    records = []
    for (delay, doppler), curve in curves.items():
        curve.sort()
        required = float("nan")
        for (s0, b0), (s1, b1) in zip([(None, None)] + curve[:-1], curve):
            if b1 > target_ber:
                continue
            if s0 is None or b0 <= 0:
                required = s1
            elif b1 <= 0:
                required = s1
            else:
                slope = (math.log10(b1) - math.log10(b0)) / (s1 - s0)
                required = s0 + (math.log10(target_ber) - math.log10(b0)) / slope if slope else s1
            break
        records.append({"delay_residual": delay, "doppler_residual": doppler, "required_snr_db": required})

    df = pd.DataFrame(records, columns=["delay_residual", "doppler_residual", "required_snr_db"])
    perfect = df[(df.delay_residual == 0) & (df.doppler_residual == 0)]
    baseline = perfect.required_snr_db.iloc[0] if not perfect.empty else float("nan")
    df["extra_db"] = df.required_snr_db - baseline
    return df
