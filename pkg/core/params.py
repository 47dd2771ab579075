import math
from typing import Any, Dict

from pydantic import ValidationError

from core.errors import ConfigError
from helpers.constants import C, MIN_RAMP_SAMPLES
from schemas import DerivedParams, SystemConfig


def build_config(values: Dict[str, Any]) -> SystemConfig:
    """
    Validate raw key/value pairs into a SystemConfig, reporting the first
    violated field by name.
    """
    try:
        return SystemConfig(**values)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or error["msg"].split(":")[0].split()[-1]
        raise ConfigError(f"invalid configuration field '{field}': {error['msg']}", key=field) from e


def derive(config: SystemConfig) -> DerivedParams:
    """
    Compute every quantity the waveform, channel and receivers need.

    One triangular symbol lasts T_sym = a * 2 r_max / c and holds an up and a
    down ramp of T_ramp = T_sym / 2, each sweeping the full bandwidth B_c.
    """
    B_c = config.B_c
    T_ramp = config.a * config.r_max / C
    T_sym = 2.0 * T_ramp
    mu = B_c / T_ramp
    f_beat_max = (2.0 / C) * (config.f_c * config.v_max + mu * config.r_max)
    f_s = config.nyquist_factor * f_beat_max
    n_samples = math.ceil(f_s * T_ramp)

    if n_samples < MIN_RAMP_SAMPLES:
        raise ConfigError(
            f"invalid configuration field 'r_max': ramp holds {n_samples} samples, "
            f"at least {MIN_RAMP_SAMPLES} are required", key="r_max")

    return DerivedParams(
        f_c=config.f_c,
        B_c=B_c,
        r_res=config.r_res,
        a=config.a,
        r_max=config.r_max,
        v_max=config.v_max,
        zero_pad_factor=config.zero_pad_factor,
        nyquist_factor=config.nyquist_factor,
        wavelength=C / config.f_c,
        T_ramp=T_ramp,
        T_sym=T_sym,
        mu=mu,
        f_beat_max=f_beat_max,
        f_s=f_s,
        n_samples=n_samples,
        data_rate=1.0 / T_sym,
        freq_bin=f_s / (config.zero_pad_factor * n_samples),
    )
