import math
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from helpers.constants import C


class SystemConfig(BaseModel):
    """
    Radar/communication parameters of the triangular FMCW link, SI units.

    Exactly one of ``B_c`` (sweep bandwidth) and ``r_res`` (distance
    resolution) must be given; the other is filled in from r_res = c/(2 B_c).
    """
    model_config = ConfigDict(frozen=True)

    f_c: float = Field(gt=0)
    B_c: Optional[float] = Field(default=None, gt=0)
    r_res: Optional[float] = Field(default=None, gt=0)
    a: float = Field(ge=1)
    r_max: float = Field(gt=0)
    v_max: float = Field(gt=0)
    zero_pad_factor: int = Field(default=2, ge=1)
    nyquist_factor: float = Field(default=2.0, ge=1)
    carrier_correction: Literal["paper", "exact"] = "paper"
    transition_fit: Literal["literal_clamped"] = "literal_clamped"
    master_seed: int = Field(default=0, ge=0, lt=2 ** 64)
    peak_interpolation: bool = False
    amplitude_mode: Literal["snr", "link_budget"] = "snr"
    debris_radius: float = Field(default=0.05, gt=0)

    @model_validator(mode="before")
    @classmethod
    def resolve_bandwidth(cls, data):
        if not isinstance(data, dict):
            return data
        b_c, r_res = data.get("B_c"), data.get("r_res")
        if (b_c is None) == (r_res is None):
            raise ValueError("B_c/r_res: exactly one of B_c and r_res must be given")
        data = dict(data)
        if b_c is None:
            if float(r_res) <= 0:
                raise ValueError("r_res: must be > 0")
            data["B_c"] = C / (2.0 * float(r_res))
        else:
            if float(b_c) <= 0:
                raise ValueError("B_c: must be > 0")
            data["r_res"] = C / (2.0 * float(b_c))
        return data

    @field_validator("v_max")
    @classmethod
    def below_light_speed(cls, value: float) -> float:
        if value >= C:
            raise ValueError("v_max must be below the speed of light")
        return value

    def with_changes(self, **changes) -> "SystemConfig":
        """
        Re-validated copy. Changing r_res drops the stored bandwidth and the
        other way round, so the exactly-one rule still holds.
        """
        data = self.model_dump()
        if "r_res" in changes:
            data.pop("B_c")
        else:
            data.pop("r_res")
        data.update(changes)
        return SystemConfig(**data)


class DerivedParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    f_c: float
    B_c: float
    r_res: float
    a: float
    r_max: float
    v_max: float
    zero_pad_factor: int
    nyquist_factor: float
    wavelength: float
    T_ramp: float
    T_sym: float
    mu: float
    f_beat_max: float
    f_s: float
    n_samples: int
    data_rate: float
    freq_bin: float


class TargetState(BaseModel):
    model_config = ConfigDict(frozen=True)

    r0: float = Field(ge=0)
    # positive = receding
    v0: float = 0.0


class LinkState(BaseModel):
    model_config = ConfigDict(frozen=True)

    R: float = Field(ge=0)
    v: float = 0.0


class NoiseSpec(BaseModel):
    """Per-complex-sample SNR at the receiver input; +inf means noiseless."""
    model_config = ConfigDict(frozen=True)

    snr_db: float = math.inf
    seed: int = Field(default=0, ge=0, lt=2 ** 64)

    @field_validator("snr_db")
    @classmethod
    def snr_not_nan(cls, value: float) -> float:
        if math.isnan(value) or value == -math.inf:
            raise ValueError("snr_db must be finite or +inf (noiseless)")
        return value

    @property
    def noiseless(self) -> bool:
        return self.snr_db == math.inf


class CompensationResidual(BaseModel):
    model_config = ConfigDict(frozen=True)

    delay_residual: float = 0.0
    doppler_residual: float = 0.0

    @field_validator("delay_residual", "doppler_residual")
    @classmethod
    def finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("residuals must be finite")
        return value

    @property
    def perfect(self) -> bool:
        return self.delay_residual == 0.0 and self.doppler_residual == 0.0


class SenseEstimate(BaseModel):
    f_beat_up: float
    f_beat_down: float
    v0_hat: float
    r0_hat: float


class ScenarioPoint(BaseModel):
    """One sweep point: a full system binding plus the scenario it simulates."""
    model_config = ConfigDict(frozen=True)

    config: SystemConfig
    target: Optional[TargetState] = None
    residual: Optional[CompensationResidual] = None


SweepKind = Literal["rmse_vs_speed", "rmse_vs_distance", "ber", "sampling_rate", "data_rate"]


class SweepPlan(BaseModel):
    kind: SweepKind
    grid: List[ScenarioPoint] = Field(min_length=1)
    snr_grid_db: List[float] = Field(default_factory=list)
    trials: int = Field(ge=1)
    master_seed: int = Field(default=0, ge=0, lt=2 ** 64)

    @model_validator(mode="after")
    def snr_grid_for_monte_carlo(self):
        if self.kind in ("rmse_vs_speed", "rmse_vs_distance", "ber") and not self.snr_grid_db:
            raise ValueError("snr_grid_db must be non-empty for Monte Carlo sweeps")
        if self.kind.startswith("rmse") and any(p.target is None for p in self.grid):
            raise ValueError("every RMSE point needs a target")
        return self


class ExperimentRow(BaseModel):
    kind: str
    labels: Dict[str, float]
    metric: str
    value: float
    trials: int
    seed: int

    @field_validator("value")
    @classmethod
    def finite_metric(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("metric value must be finite")
        return value


class RunConfig(BaseModel):
    """Scenario keys of a config file, next to the SystemConfig keys."""
    r0: float = 300.0
    v0: float = 7000.0
    snr_db: Optional[float] = None
    R: float = 300e3
    v: float = 7000.0
    kind: Literal["rmse_vs_speed", "rmse_vs_distance"] = "rmse_vs_speed"
    n_bits: int = Field(default=40000, ge=1)
    trials: int = Field(default=200, ge=1)
    snr_grid_db: List[float] = Field(default_factory=lambda: [-30.0, -28.0, -26.0, -24.0, -22.0, -20.0,
                                                              -15.0, -10.0, -5.0, 0.0])
    # BER waterfall sits well below the sensing threshold
    ber_snr_grid_db: List[float] = Field(default_factory=lambda: [-44.0, -42.0, -40.0, -38.0, -36.0, -34.0,
                                                                  -32.0, -30.0, -28.0, -26.0])
    v0_grid: List[float] = Field(default_factory=lambda: [1000.0, 3000.0, 5000.0, 7000.0,
                                                          9000.0, 11000.0, 13000.0, 15000.0])
    r0_grid: List[float] = Field(default_factory=lambda: [300.0, 600.0, 1200.0, 1800.0])
    r_max_grid: List[float] = Field(default_factory=lambda: [100.0, 200.0, 500.0, 1000.0, 1500.0, 2000.0])
    a_grid: List[float] = Field(default_factory=lambda: [1.0, 5.5])
    r_res_grid: List[float] = Field(default_factory=lambda: [0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1])
    v_max_grid: List[float] = Field(default_factory=lambda: [1000.0, 5000.0, 10000.0, 15000.0])
    delay_residuals_ns: List[float] = Field(default_factory=lambda: [0.0, 0.0, 1.67])
    doppler_residuals_mhz: List[float] = Field(default_factory=lambda: [0.0, 0.227, 0.0])
    rcs_x_min: float = Field(default=0.01, gt=0)
    rcs_x_max: float = Field(default=100.0, gt=0)
    rcs_points: int = Field(default=200, ge=2)
    # empty = the configured carrier
    rcs_frequencies_ghz: List[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def paired_residuals(self):
        if len(self.delay_residuals_ns) != len(self.doppler_residuals_mhz):
            raise ValueError("delay_residuals_ns and doppler_residuals_mhz must pair up")
        return self

    def residual_scenarios(self) -> List[CompensationResidual]:
        return [CompensationResidual(delay_residual=d * 1e-9, doppler_residual=f * 1e6)
                for d, f in zip(self.delay_residuals_ns, self.doppler_residuals_mhz)]


class SenseRequest(BaseModel):
    r0: float = 300.0
    v0: float = 7000.0
    # omitted = noiseless
    snr_db: Optional[float] = None
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    overrides: Dict[str, str] = Field(default_factory=dict)
