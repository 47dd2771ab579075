"""
Command-line front end.

    python simulate.py sweep --config configs/isl.conf --seed 42 --out rmse.csv
    python simulate.py ber --config configs/ber.conf --threads 8
    python simulate.py rates --config configs/isl.conf --set a_grid=1,5.5

Exit status: 0 success, 1 configuration error, 2 runtime error.
"""
import argparse
import sys
from typing import List, Optional

import pandas as pd

from core.channel import add_awgn, comm_propagate, sensing_echo
from core.errors import ConfigError, SimulationError
from core.experiments import data_rate_table, expand_residuals, make_sweep, ber_plan, rmse_plan, sampling_rate_table
from core.params import derive
from core.rcs_link import fspl_comm, fspl_db, rcs_table
from core.sensing_rx import sense
from core.waveform import Direction, RampSpec, dump_signal, symbol_samples
from helpers.config_file import load_config
from helpers.constants import C, SIM_THREADS
from helpers.logger import create_logger
from helpers.utils import rows_to_frame, stable_hash, write_csv
from schemas import LinkState, NoiseSpec, RunConfig, SystemConfig, TargetState

logger = create_logger(__name__)

SENSE_COLUMNS = ["r0", "v0", "snr_db", "r0_hat", "v0_hat", "f_up", "f_down"]
LINK_COLUMNS = ["R", "v", "alpha_los", "fspl_db", "delay_s", "doppler_hz", "rx_power", "data_rate"]


class SweepFailed(SimulationError):
    """Some sweep points were aborted; the remaining rows were still written."""


def _noise(system: SystemConfig, run: RunConfig) -> NoiseSpec:
    snr_db = float("inf") if run.snr_db is None else run.snr_db
    return NoiseSpec(snr_db=snr_db, seed=system.master_seed)


def run_rcs(system: SystemConfig, run: RunConfig, args) -> pd.DataFrame:
    frequencies = [f * 1e9 for f in run.rcs_frequencies_ghz] or [system.f_c]
    return rcs_table(frequencies, run.rcs_x_min, run.rcs_x_max, run.rcs_points)


def run_sense(system: SystemConfig, run: RunConfig, args) -> pd.DataFrame:
    target = TargetState(r0=run.r0, v0=run.v0)
    noise = _noise(system, run)
    estimate = sense(target, noise, system)

    if args.dump:
        # same realisation sense() drew for its up ramp
        spec = RampSpec.from_derived(Direction.UP, derive(system))
        echo = add_awgn(sensing_echo(spec, target), NoiseSpec(snr_db=noise.snr_db, seed=stable_hash(noise.seed, 0)))
        dump_signal(args.dump, echo)
        logger.info(f"Dumped up-ramp echo to {args.dump}")

    return pd.DataFrame([{
        "r0": target.r0, "v0": target.v0, "snr_db": noise.snr_db,
        "r0_hat": estimate.r0_hat, "v0_hat": estimate.v0_hat,
        "f_up": estimate.f_beat_up, "f_down": estimate.f_beat_down,
    }], columns=SENSE_COLUMNS)


def _run_sweep(plan, threads: int) -> pd.DataFrame:
    sweep = make_sweep(plan.kind, threads)
    rows = sweep(plan)
    df = rows_to_frame(rows, sweep.label_columns)
    if sweep.failures:
        raise SweepFailed("; ".join(sweep.failures), df)
    return df


def run_ber(system: SystemConfig, run: RunConfig, args) -> pd.DataFrame:
    plan = expand_residuals(ber_plan(system, run.ber_snr_grid_db, run.n_bits), run.residual_scenarios())
    return _run_sweep(plan, args.threads)


def run_sweep(system: SystemConfig, run: RunConfig, args) -> pd.DataFrame:
    if run.kind == "rmse_vs_speed":
        plan = rmse_plan(run.kind, system, [run.r0], run.v0_grid, run.snr_grid_db, run.trials)
    else:
        plan = rmse_plan(run.kind, system, run.r0_grid, [run.v0], run.snr_grid_db, run.trials)
    return _run_sweep(plan, args.threads)


def run_rates(system: SystemConfig, run: RunConfig, args) -> pd.DataFrame:
    return rows_to_frame(data_rate_table(run.r_max_grid, run.a_grid, system), ["r_max", "a", "T_sym"])


def run_sampling(system: SystemConfig, run: RunConfig, args) -> pd.DataFrame:
    rows = sampling_rate_table(run.r_res_grid, run.v_max_grid, system.a, system)
    return rows_to_frame(rows, ["r_res", "v_max", "a", "r_max"])


def run_link(system: SystemConfig, run: RunConfig, args) -> pd.DataFrame:
    derived = derive(system)
    alpha = fspl_comm(system.f_c, run.R)
    rx = comm_propagate(symbol_samples(0, derived), LinkState(R=run.R, v=run.v), amplitude=alpha)
    return pd.DataFrame([{
        "R": run.R, "v": run.v, "alpha_los": alpha, "fspl_db": fspl_db(system.f_c, run.R),
        "delay_s": run.R / C, "doppler_hz": -system.f_c * run.v / C,
        "rx_power": rx.power, "data_rate": derived.data_rate,
    }], columns=LINK_COLUMNS)


SUBCOMMANDS = {
    "rcs": run_rcs,
    "sense": run_sense,
    "ber": run_ber,
    "rates": run_rates,
    "sampling": run_sampling,
    "sweep": run_sweep,
    "link": run_link,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, required=True, help="Configuration file (key = value lines)")
    common.add_argument("--out", type=str, default=None, help="CSV output path (default: standard output)")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None, help="Master seed override")
    common.add_argument("--threads", type=int, default=SIM_THREADS, help="Worker threads for Monte Carlo trials")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="Override a configuration key (repeatable)")

    parser = argparse.ArgumentParser(description="Triangular FMCW sensing/communication simulator")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    subparsers.add_parser("rcs", parents=[common], help="Normalized RCS table")
    sense_parser = subparsers.add_parser("sense", parents=[common], help="Single sensing run")
    sense_parser.add_argument("--dump", type=str, default=None, help="Write the noisy up-ramp echo to this file")
    subparsers.add_parser("ber", parents=[common], help="BER sweep over compensation scenarios")
    subparsers.add_parser("rates", parents=[common], help="Data rate table")
    subparsers.add_parser("sampling", parents=[common], help="Sampling rate table")
    subparsers.add_parser("sweep", parents=[common], help="Distance/speed RMSE sweep")
    subparsers.add_parser("link", parents=[common], help="Inter-satellite link budget row")
    return parser


def _write(df: pd.DataFrame, args, resolved: dict, master_seed: int):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            write_csv(df, f, resolved, master_seed)
    else:
        write_csv(df, sys.stdout, resolved, master_seed)


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        system, run_cfg, resolved = load_config(args.config, args.set)
        if args.seed is not None:
            system = system.with_changes(master_seed=args.seed)
            resolved["system"] = system.model_dump()
    except (ConfigError, ValueError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        logger.error(f"Configuration error: {e}")
        return 1

    logger.info(f"Running '{args.subcommand}' with {args.config}, seed {system.master_seed}")
    try:
        df = SUBCOMMANDS[args.subcommand](system, run_cfg, args)
    except ConfigError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        logger.error(f"Configuration error: {e}")
        return 1
    except SweepFailed as e:
        message, df = e.args
        print(f"runtime error: {message}", file=sys.stderr)
        _write(df, args, resolved, system.master_seed)
        return 2
    except (SimulationError, ValueError, OSError) as e:
        print(f"runtime error: {e}", file=sys.stderr)
        logger.error(f"Runtime error in '{args.subcommand}': {e}")
        return 2

    _write(df, args, resolved, system.master_seed)
    logger.info(f"'{args.subcommand}' wrote {len(df)} rows")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
