"""
Sensing receiver: dechirp, periodogram peak picking, and inversion of the
triangular up/down beat frequencies into target speed and distance.
"""
from typing import Literal, Tuple

import numpy as np
import scipy.fft

from core.channel import add_awgn, sensing_echo
from core.errors import ConfigError, SignalError, SingularityError
from core.params import derive
from core.rcs_link import echo_amplitude
from core.waveform import BasebandSignal, Direction, RampSpec, ramp_samples
from helpers.constants import C
from helpers.logger import create_logger
from helpers.utils import stable_hash
from schemas import DerivedParams, NoiseSpec, SenseEstimate, SystemConfig, TargetState

logger = create_logger(__name__)

CarrierMode = Literal["paper", "exact"]


def dechirp(tx: BasebandSignal, rx: BasebandSignal) -> BasebandSignal:
    if tx.samples.size != rx.samples.size:
        raise SignalError(f"length mismatch: tx {tx.samples.size} vs rx {rx.samples.size}")
    if tx.sample_rate != rx.sample_rate:
        raise SignalError(f"sample rate mismatch: tx {tx.sample_rate} vs rx {rx.sample_rate}")
    return BasebandSignal(samples=tx.samples * np.conj(rx.samples), sample_rate=tx.sample_rate, t0=tx.t0)


def _parabolic_offset(magnitude: np.ndarray, k: int) -> float:
    n = magnitude.size
    left, centre, right = np.log(magnitude[[(k - 1) % n, k, (k + 1) % n]] + 1e-300)
    denominator = left - 2.0 * centre + right
    if denominator == 0:
        return 0.0
    return 0.5 * (left - right) / denominator


def estimate_tone(beat: BasebandSignal, zero_pad_factor: int, interpolate: bool = False) -> float:
    """
    Signed frequency of the strongest periodogram bin after zero padding to
    zero_pad_factor * N points. Ties go to the lowest |frequency|.
    """
    if zero_pad_factor < 1:
        raise ValueError(f"zero_pad_factor must be >= 1, got {zero_pad_factor}")
    if not np.any(beat.samples):
        raise SignalError("all-zero beat signal has no spectral peak")

    n_fft = zero_pad_factor * beat.samples.size
    magnitude = np.abs(scipy.fft.fft(beat.samples, n=n_fft))

    bins = np.arange(n_fft)
    bins[bins > n_fft // 2] -= n_fft
    candidates = np.flatnonzero(magnitude == magnitude.max())
    k = int(candidates[np.argmin(np.abs(bins[candidates]))])

    offset = _parabolic_offset(magnitude, k) if interpolate else 0.0
    return (bins[k] + offset) * beat.sample_rate / n_fft


def beat_frequencies(target: TargetState, derived: DerivedParams,
                     mode: CarrierMode = "paper") -> Tuple[float, float]:
    """
    Analytic up/down beat frequencies at t = 0. ``exact`` uses the down ramp's
    own carrier reference f_c + B_c for its Doppler term.
    """
    r0, v0, mu = target.r0, target.v0, derived.mu
    f_down_carrier = derived.f_c if mode == "paper" else derived.f_c + derived.B_c
    coupling = 2.0 * mu * r0 * v0 / C
    f_up = (2.0 / C) * (derived.f_c * v0 + mu * r0 - coupling)
    f_down = (2.0 / C) * (f_down_carrier * v0 - mu * r0 + coupling)
    return f_up, f_down


def invert(f_up: float, f_down: float, derived: DerivedParams,
           mode: CarrierMode = "paper") -> Tuple[float, float]:
    """Speed and distance from the triangular beat pair."""
    if not (np.isfinite(f_up) and np.isfinite(f_down)):
        raise ValueError("beat frequencies must be finite")

    difference = f_up - f_down
    if mode == "paper":
        v0_hat = C / (4.0 * derived.f_c) * (f_up + f_down)
    else:
        v0_hat = C * (f_up + f_down) / (2.0 * (2.0 * derived.f_c + derived.B_c))
        # the down ramp's extra B_c of carrier leaves -2 B_c v0 / c in the difference
        difference += 2.0 * derived.B_c * v0_hat / C

    scale = 1.0 - 2.0 * v0_hat / C
    if scale <= 0:
        raise SingularityError(f"speed estimate {v0_hat:.6g} m/s makes 1 - 2v/c = {scale:.3g} <= 0")
    r0_hat = C * difference / (4.0 * derived.mu * scale)
    return v0_hat, r0_hat


def _check_target(target: TargetState, derived: DerivedParams):
    if not 0 < target.r0 <= derived.r_max:
        raise ConfigError(f"invalid target field 'r0': {target.r0} m outside (0, {derived.r_max}]", key="r0")
    if abs(target.v0) > derived.v_max:
        raise ConfigError(f"invalid target field 'v0': |{target.v0}| m/s exceeds v_max {derived.v_max}", key="v0")


def sense(target: TargetState, noise: NoiseSpec, cfg: SystemConfig) -> SenseEstimate:
    """
    Full sensing chain for one triangular symbol: synthesize both echoes, add
    independent noise to each ramp, dechirp, pick both peaks and invert.
    """
    derived = derive(cfg)
    _check_target(target, derived)

    amplitude = 1.0
    if cfg.amplitude_mode == "link_budget":
        amplitude = echo_amplitude(cfg.f_c, target.r0, cfg.debris_radius)

    tones = []
    for index, direction in enumerate((Direction.UP, Direction.DOWN)):
        spec = RampSpec.from_derived(direction, derived)
        tx = ramp_samples(spec)
        echo = sensing_echo(spec, target, amplitude)
        rx = add_awgn(echo, NoiseSpec(snr_db=noise.snr_db, seed=stable_hash(noise.seed, index)))
        # the down ramp's negative chirp rate already yields the signed down beat
        tones.append(estimate_tone(dechirp(tx, rx), derived.zero_pad_factor, cfg.peak_interpolation))

    f_up, f_down = tones
    v0_hat, r0_hat = invert(f_up, f_down, derived, cfg.carrier_correction)
    logger.debug(f"sense r0={target.r0} v0={target.v0} snr={noise.snr_db} -> r0_hat={r0_hat:.4f} v0_hat={v0_hat:.2f}")
    return SenseEstimate(f_beat_up=f_up, f_beat_down=f_down, v0_hat=v0_hat, r0_hat=r0_hat)
