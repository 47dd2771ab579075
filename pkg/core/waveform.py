"""
Complex-baseband triangular FMCW waveform.

Each ramp is simulated against its own carrier reference: an up ramp sweeps
f_c -> f_c + B_c and is referenced to f_c, a down ramp sweeps back and is
referenced to f_c + B_c. In baseband an up ramp is exp(j pi mu t^2) and a down
ramp exp(-j pi mu t^2); the carrier reference only enters through the phase
rotation a propagation delay applies (see core.channel).

Bit 0 is sent as an up-down symbol, bit 1 as down-up.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from core.errors import SignalError
from helpers.constants import MIN_RAMP_SAMPLES
from schemas import DerivedParams

# t -> (baseband samples, carrier reference per sample)
AnalyticSource = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]

DUMP_MAGIC = b"FMCWSIG1"
DUMP_HEADER = np.dtype([("magic", "S8"), ("f_s", "<f8"), ("n", "<u8"), ("t0", "<f8")])


class Direction(Enum):
    UP = 1
    DOWN = -1


SYMBOL_SHAPES = {
    0: (Direction.UP, Direction.DOWN),
    1: (Direction.DOWN, Direction.UP),
}


def shape_to_bit(shape: Tuple[Direction, Direction]) -> int:
    for bit, candidate in SYMBOL_SHAPES.items():
        if candidate == tuple(shape):
            return bit
    raise ValueError(f"not a triangular symbol shape: {shape}")


@dataclass(frozen=True, eq=False)
class BasebandSignal:
    samples: np.ndarray
    sample_rate: float
    t0: float = 0.0
    # closed-form generator, lets channels evaluate exact delayed copies
    source: Optional[AnalyticSource] = None

    def __post_init__(self):
        if self.samples.size == 0:
            raise SignalError("signal holds no samples")
        if not np.all(np.isfinite(self.samples)):
            raise SignalError("signal holds NaN or Inf samples")

    def __len__(self) -> int:
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.samples.size) / self.sample_rate

    @property
    def power(self) -> float:
        return float(np.mean(np.abs(self.samples) ** 2))


@dataclass(frozen=True)
class RampSpec:
    direction: Direction
    mu_signed: float
    f_ref: float
    duration: float
    sample_rate: float

    @property
    def n_samples(self) -> int:
        return math.ceil(self.sample_rate * self.duration)

    @classmethod
    def from_derived(cls, direction: Direction, derived: DerivedParams) -> "RampSpec":
        up = direction is Direction.UP
        return cls(
            direction=direction,
            mu_signed=derived.mu if up else -derived.mu,
            f_ref=derived.f_c if up else derived.f_c + derived.B_c,
            duration=derived.T_ramp,
            sample_rate=derived.f_s,
        )


def _chirp(mu_signed, t):
    # phase kept in cycles and wrapped before exponentiation
    cycles = 0.5 * mu_signed * t ** 2
    return np.exp(2j * np.pi * np.mod(cycles, 1.0))


def ramp_train_source(mu_signed: Sequence[float], f_ref: Sequence[float],
                      n_samples: int, sample_rate: float) -> AnalyticSource:
    """
    Closed form of consecutive ramps of n_samples each, starting at t = 0.
    Outside the train the signal is zero.
    """
    mu_signed = np.asarray(mu_signed, dtype=float)
    f_ref = np.asarray(f_ref, dtype=float)
    period = n_samples / sample_rate

    def source(t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        t = np.asarray(t, dtype=float)
        k = np.floor(np.round(t * sample_rate, 6) / n_samples).astype(np.int64)
        inside = (k >= 0) & (k < mu_signed.size)
        k = np.clip(k, 0, mu_signed.size - 1)
        local = t - k * period
        values = np.where(inside, _chirp(mu_signed[k], local), 0.0)
        return values, f_ref[k]

    return source


def ramp_samples(spec: RampSpec) -> BasebandSignal:
    n = spec.n_samples
    if n < MIN_RAMP_SAMPLES:
        raise SignalError(f"ramp holds {n} samples, at least {MIN_RAMP_SAMPLES} are required")
    t = np.arange(n) / spec.sample_rate
    return BasebandSignal(
        samples=_chirp(spec.mu_signed, t),
        sample_rate=spec.sample_rate,
        source=ramp_train_source([spec.mu_signed], [spec.f_ref], n, spec.sample_rate),
    )


def _ramp_pair(derived: DerivedParams) -> Tuple[np.ndarray, np.ndarray]:
    up = ramp_samples(RampSpec.from_derived(Direction.UP, derived)).samples
    down = ramp_samples(RampSpec.from_derived(Direction.DOWN, derived)).samples
    return up, down


def _train_source(bits: np.ndarray, derived: DerivedParams) -> AnalyticSource:
    directions = np.array([[d.value for d in SYMBOL_SHAPES[int(b)]] for b in (0, 1)])[bits].reshape(-1)
    mu_signed = directions * derived.mu
    f_ref = np.where(directions > 0, derived.f_c, derived.f_c + derived.B_c)
    return ramp_train_source(mu_signed, f_ref, derived.n_samples, derived.f_s)


def symbol_samples(bit: int, derived: DerivedParams) -> BasebandSignal:
    if bit not in SYMBOL_SHAPES:
        raise ValueError(f"bit must be 0 or 1, got {bit}")
    return modulate([bit], derived)


def modulate(bits: Sequence[int], derived: DerivedParams) -> BasebandSignal:
    bits = np.asarray(bits, dtype=np.int64).reshape(-1)
    if bits.size == 0:
        raise ValueError("cannot modulate an empty bit sequence")
    if np.any((bits != 0) & (bits != 1)):
        raise ValueError("bits must be 0 or 1")

    up, down = _ramp_pair(derived)
    templates = np.stack([np.concatenate([up, down]), np.concatenate([down, up])])
    return BasebandSignal(
        samples=templates[bits].reshape(-1),
        sample_rate=derived.f_s,
        source=_train_source(bits, derived),
    )


def dump_signal(path: str, signal: BasebandSignal):
    """
    Binary dump: 32-byte little-endian header (magic, f_s, n, t0) followed by
    interleaved float64 (re, im) pairs.
    """
    header = np.array([(DUMP_MAGIC, signal.sample_rate, signal.samples.size, signal.t0)], dtype=DUMP_HEADER)
    body = np.empty(2 * signal.samples.size, dtype="<f8")
    body[0::2] = signal.samples.real
    body[1::2] = signal.samples.imag
    with open(path, "wb") as f:
        f.write(header.tobytes())
        f.write(body.tobytes())


def load_signal(path: str) -> BasebandSignal:
    with open(path, "rb") as f:
        raw = f.read()
    if len(raw) < DUMP_HEADER.itemsize:
        raise SignalError(f"{path}: truncated header")
    header = np.frombuffer(raw[:DUMP_HEADER.itemsize], dtype=DUMP_HEADER)[0]
    if header["magic"] != DUMP_MAGIC:
        raise SignalError(f"{path}: not a signal dump")
    n = int(header["n"])
    body = np.frombuffer(raw[DUMP_HEADER.itemsize:], dtype="<f8")
    if body.size != 2 * n:
        raise SignalError(f"{path}: expected {n} samples, found {body.size // 2}")
    return BasebandSignal(samples=body[0::2] + 1j * body[1::2],
                          sample_rate=float(header["f_s"]), t0=float(header["t0"]))
