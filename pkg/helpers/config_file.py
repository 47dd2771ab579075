"""
Line-oriented configuration files.

    # default inter-satellite parameters
    f_c_ghz = 340
    B_c_ghz = 1.5
    a = 5.5
    r_max = 500
    v_max_kms = 15
    snr_grid_db = -30, -25, -20

One ``key = value`` per line, ``#`` starts a comment. Unit-suffixed keys are
scaled into SI units. Unknown or repeated keys are errors.
"""
import os
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from core.errors import ConfigError
from core.params import build_config
from schemas import RunConfig, SystemConfig

FLOAT, INT, BOOL, TEXT, FLOAT_LIST = "float", "int", "bool", "text", "float_list"

# key -> (section, field, kind, scale)
KEYS: Dict[str, Tuple[str, str, str, float]] = {
    "f_c": ("system", "f_c", FLOAT, 1.0),
    "f_c_ghz": ("system", "f_c", FLOAT, 1e9),
    "B_c": ("system", "B_c", FLOAT, 1.0),
    "B_c_ghz": ("system", "B_c", FLOAT, 1e9),
    "B_c_mhz": ("system", "B_c", FLOAT, 1e6),
    "r_res": ("system", "r_res", FLOAT, 1.0),
    "r_res_cm": ("system", "r_res", FLOAT, 1e-2),
    "r_res_mm": ("system", "r_res", FLOAT, 1e-3),
    "a": ("system", "a", FLOAT, 1.0),
    "r_max": ("system", "r_max", FLOAT, 1.0),
    "v_max": ("system", "v_max", FLOAT, 1.0),
    "v_max_kms": ("system", "v_max", FLOAT, 1e3),
    "zero_pad_factor": ("system", "zero_pad_factor", INT, 1),
    "nyquist_factor": ("system", "nyquist_factor", FLOAT, 1.0),
    "carrier_correction": ("system", "carrier_correction", TEXT, 1),
    "transition_fit": ("system", "transition_fit", TEXT, 1),
    "master_seed": ("system", "master_seed", INT, 1),
    "peak_interpolation": ("system", "peak_interpolation", BOOL, 1),
    "amplitude_mode": ("system", "amplitude_mode", TEXT, 1),
    "debris_radius": ("system", "debris_radius", FLOAT, 1.0),
    "debris_radius_cm": ("system", "debris_radius", FLOAT, 1e-2),
    "r0": ("run", "r0", FLOAT, 1.0),
    "v0": ("run", "v0", FLOAT, 1.0),
    "v0_kms": ("run", "v0", FLOAT, 1e3),
    "snr_db": ("run", "snr_db", FLOAT, 1.0),
    "R": ("run", "R", FLOAT, 1.0),
    "R_km": ("run", "R", FLOAT, 1e3),
    "v": ("run", "v", FLOAT, 1.0),
    "v_kms": ("run", "v", FLOAT, 1e3),
    "kind": ("run", "kind", TEXT, 1),
    "n_bits": ("run", "n_bits", INT, 1),
    "trials": ("run", "trials", INT, 1),
    "snr_grid_db": ("run", "snr_grid_db", FLOAT_LIST, 1.0),
    "ber_snr_grid_db": ("run", "ber_snr_grid_db", FLOAT_LIST, 1.0),
    "v0_grid": ("run", "v0_grid", FLOAT_LIST, 1.0),
    "r0_grid": ("run", "r0_grid", FLOAT_LIST, 1.0),
    "r_max_grid": ("run", "r_max_grid", FLOAT_LIST, 1.0),
    "a_grid": ("run", "a_grid", FLOAT_LIST, 1.0),
    "r_res_grid": ("run", "r_res_grid", FLOAT_LIST, 1.0),
    "v_max_grid": ("run", "v_max_grid", FLOAT_LIST, 1.0),
    "delay_residuals_ns": ("run", "delay_residuals_ns", FLOAT_LIST, 1.0),
    "doppler_residuals_mhz": ("run", "doppler_residuals_mhz", FLOAT_LIST, 1.0),
    "rcs_x_min": ("run", "rcs_x_min", FLOAT, 1.0),
    "rcs_x_max": ("run", "rcs_x_max", FLOAT, 1.0),
    "rcs_points": ("run", "rcs_points", INT, 1),
    "rcs_frequencies_ghz": ("run", "rcs_frequencies_ghz", FLOAT_LIST, 1.0),
}

TRUE_WORDS = {"1", "true", "yes", "on"}
FALSE_WORDS = {"0", "false", "no", "off"}


def _convert(key: str, raw: str):
    _, _, kind, scale = KEYS[key]
    try:
        if kind == FLOAT:
            return float(raw) * scale
        if kind == INT:
            return int(raw, 0)
        if kind == BOOL:
            word = raw.lower()
            if word not in TRUE_WORDS | FALSE_WORDS:
                raise ValueError(raw)
            return word in TRUE_WORDS
        if kind == FLOAT_LIST:
            return [float(item) * scale for item in raw.split(",") if item.strip()]
        return raw
    except ValueError:
        raise ConfigError(f"cannot parse value '{raw}' for key '{key}' as {kind}", key=key)


def parse_assignments(lines: Sequence[str], origin: str = "<config>") -> List[Tuple[str, str, str]]:
    """(key, raw value, location) triples; comments and blank lines dropped."""
    assignments = []
    for number, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{origin}:{number}: expected 'key = value', got '{text}'")
        key, raw = (part.strip() for part in text.split("=", 1))
        if not key or not raw:
            raise ConfigError(f"{origin}:{number}: empty key or value in '{text}'", key=key or None)
        assignments.append((key, raw, f"{origin}:{number}"))
    return assignments


def resolve(assignments: Sequence[Tuple[str, str, str]],
            overrides: Sequence[Tuple[str, str, str]] = ()) -> Tuple[SystemConfig, RunConfig, dict]:
    """
    Apply file assignments, then overrides, and validate both sections.
    Returns the configs and the resolved field values used for provenance.
    """
    sections = {"system": {}, "run": {}}
    seen: Dict[str, str] = {}

    for index, (key, raw, where) in enumerate(list(assignments) + list(overrides)):
        if key not in KEYS:
            raise ConfigError(f"{where}: unknown key '{key}'", key=key)
        section, field, _, _ = KEYS[key]
        is_override = index >= len(assignments)
        if field in seen and not is_override:
            raise ConfigError(f"{where}: '{key}' repeats '{seen[field]}' already set", key=key)
        seen[field] = key
        if is_override and field in ("B_c", "r_res"):
            # bandwidth and resolution are two views of one quantity
            sections["system"].pop("r_res" if field == "B_c" else "B_c", None)
        sections[section][field] = _convert(key, raw)

    system = build_config(sections["system"])
    try:
        run = RunConfig(**sections["run"])
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or "run"
        raise ConfigError(f"invalid configuration field '{field}': {error['msg']}", key=field) from e

    resolved = {"system": system.model_dump(), "run": run.model_dump()}
    return system, run, resolved


def parse_overrides(pairs: Optional[Sequence[str]]) -> List[Tuple[str, str, str]]:
    overrides = []
    for pair in pairs or []:
        if "=" not in pair:
            raise ConfigError(f"--set expects KEY=VALUE, got '{pair}'")
        key, raw = (part.strip() for part in pair.split("=", 1))
        overrides.append((key, raw, "--set"))
    return overrides


def load_config(path: str, overrides: Optional[Sequence[str]] = None) -> Tuple[SystemConfig, RunConfig, dict]:
    if not os.path.isfile(path):
        raise ConfigError(f"config file not found: {path}", key="config")
    with open(path, "r", encoding="utf-8") as f:
        assignments = parse_assignments(f.readlines(), origin=path)
    return resolve(assignments, parse_overrides(overrides))
