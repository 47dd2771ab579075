"""
Runs every sweep and table of the evaluation with the default plans and
writes one CSV per result next to a printed summary.

    python reproduce.py --config configs/isl.conf --out-dir results --threads 8
"""
import argparse
import os
import sys
import time

import pandas as pd

from core.ber_sweep import BerSweep, required_snr
from core.experiments import (ber_sweep, ber_plan, data_rate_table, rmse_plan, rmse_sweep,
                              sampling_rate_table)
from core.rcs_link import rcs_table
from core.rmse_sweep import RmseSweep, snr_threshold
from helpers.config_file import load_config
from helpers.constants import SIM_THREADS
from helpers.logger import create_logger
from helpers.utils import rows_to_frame, write_csv

logger = create_logger(__name__)

# distance study speeds, joined by the configured v0
DISTANCE_SPEEDS = [7000.0, 15000.0]


def save(df: pd.DataFrame, out_dir: str, name: str, resolved: dict, seed: int):
    path = os.path.join(out_dir, f"{name}.csv")
    with open(path, "w", encoding="utf-8", newline="") as f:
        write_csv(df, f, resolved, seed)
    print(f"Results saved to {path}")


def main(config_path: str, out_dir: str, threads: int, trials: int, n_bits: int):
    system, run, resolved = load_config(config_path)
    seed = system.master_seed
    os.makedirs(out_dir, exist_ok=True)
    summary = {}

    print("Evaluating RMSE versus target speed...")
    start = time.time()
    speed_rows = rmse_sweep(rmse_plan("rmse_vs_speed", system, [run.r0], run.v0_grid,
                                      run.snr_grid_db, trials), threads)
    save(rows_to_frame(speed_rows, RmseSweep.label_columns), out_dir, "rmse_vs_speed", resolved, seed)
    thresholds = snr_threshold(speed_rows)
    summary["rmse_vs_speed"] = {"seconds": round(time.time() - start, 1),
                                "median_threshold_db": thresholds.threshold_db.median()}

    print("Evaluating RMSE versus target distance...")
    start = time.time()
    wide = system.with_changes(r_max=max(run.r0_grid + [2000.0]))
    speeds = sorted({run.v0, *DISTANCE_SPEEDS})
    distance_rows = rmse_sweep(rmse_plan("rmse_vs_distance", wide, run.r0_grid, speeds,
                                         run.snr_grid_db, trials), threads)
    save(rows_to_frame(distance_rows, RmseSweep.label_columns), out_dir, "rmse_vs_distance", resolved, seed)
    summary["rmse_vs_distance"] = {"seconds": round(time.time() - start, 1),
                                   "median_threshold_db": snr_threshold(distance_rows).threshold_db.median()}

    print("Evaluating sampling rate...")
    start = time.time()
    sampling = pd.concat([
        rows_to_frame(sampling_rate_table(run.r_res_grid, run.v_max_grid, system.a,
                                          system.with_changes(r_max=r_max)),
                      ["r_res", "v_max", "a", "r_max"])
        for r_max in run.r_max_grid
    ], ignore_index=True)
    save(sampling, out_dir, "sampling_rate", resolved, seed)
    summary["sampling_rate"] = {"seconds": round(time.time() - start, 1), "peak_f_s_ghz": sampling.value.max() / 1e9}

    print("Evaluating data rate...")
    start = time.time()
    rates = rows_to_frame(data_rate_table(run.r_max_grid, run.a_grid, system), ["r_max", "a", "T_sym"])
    save(rates, out_dir, "data_rate", resolved, seed)
    summary["data_rate"] = {"seconds": round(time.time() - start, 1), "peak_rate_mbps": rates.value.max() / 1e6}

    print("Evaluating BER under compensation scenarios...")
    start = time.time()
    ber_rows = ber_sweep(ber_plan(system, run.ber_snr_grid_db, n_bits), run.residual_scenarios(), threads)
    save(rows_to_frame(ber_rows, BerSweep.label_columns), out_dir, "ber", resolved, seed)
    required = required_snr(ber_rows)
    save(required, out_dir, "ber_required_snr", resolved, seed)
    summary["ber"] = {"seconds": round(time.time() - start, 1),
                      "perfect_required_snr_db": required.required_snr_db.min()}

    save(rcs_table([system.f_c], run.rcs_x_min, run.rcs_x_max, run.rcs_points), out_dir, "rcs", resolved, seed)

    print("\nEvaluation Results:")
    df = pd.DataFrame(summary).T
    print(df)
    print("\nBER required SNR:")
    print(required)
    logger.info(f"Reproduction finished in {out_dir}")
    return df


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Reproduce every sweep and table into CSV files")
    parser.add_argument("--config", type=str, default="configs/isl.conf", help="Base configuration file")
    parser.add_argument("--out-dir", type=str, default="results", help="Directory for the CSV files")
    parser.add_argument("--threads", type=int, default=SIM_THREADS, help="Worker threads")
    parser.add_argument("--trials", type=int, default=200, help="Trials per RMSE point")
    parser.add_argument("--n-bits", type=int, default=40000, help="Bits per BER point")
    args = parser.parse_args()
    try:
        main(args.config, args.out_dir, args.threads, args.trials, args.n_bits)
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        logger.error(f"Reproduction failed: {e}")
        sys.exit(2)
