"""
Line-of-sight channels: the two-way sensing echo, the one-way inter-satellite
link, and additive white Gaussian noise.

Delays follow tau(t) = 2 (r0 + v0 t) / c for sensing and (R + v t) / c for
the link. A delayed copy is regenerated from the signal's analytic source
when it has one; otherwise the envelope is shifted by the nearest whole
sample and only the carrier rotation uses the exact delay.
"""
from typing import Callable, Optional

import numpy as np

from core.errors import AmbiguityError, SignalError
from core.waveform import BasebandSignal, RampSpec
from helpers.constants import C
from helpers.logger import create_logger
from schemas import LinkState, NoiseSpec, TargetState

logger = create_logger(__name__)

DelayFn = Callable[[np.ndarray], np.ndarray]


def _check_delay(tau: np.ndarray, limit: Optional[float], what: str):
    if limit is not None and np.max(np.abs(tau)) >= limit:
        raise AmbiguityError(
            f"{what} delay {np.max(np.abs(tau)):.6g} s reaches the {limit:.6g} s unambiguous window")


def sensing_echo(spec: RampSpec, target: TargetState, amplitude: float = 1.0) -> BasebandSignal:
    """Closed-form echo of one ramp off a point target at (r0, v0)."""
    if amplitude < 0:
        raise ValueError(f"amplitude must be >= 0, got {amplitude}")

    t = np.arange(spec.n_samples) / spec.sample_rate
    tau = 2.0 * (target.r0 + target.v0 * t) / C
    _check_delay(tau, spec.duration, "round-trip")

    cycles = 0.5 * spec.mu_signed * (t - tau) ** 2 - spec.f_ref * tau
    return BasebandSignal(samples=amplitude * np.exp(2j * np.pi * np.mod(cycles, 1.0)),
                          sample_rate=spec.sample_rate)


def delayed_copy(signal: BasebandSignal, delay_fn: DelayFn, window_offset: float = 0.0,
                 f_ref: Optional[float] = None, amplitude: float = 1.0,
                 doppler: float = 0.0) -> BasebandSignal:
    """
    y(t) = amplitude * s(t - tau(t)) * exp(-j 2 pi f_ref tau(t)) * exp(j 2 pi doppler t)

    evaluated on the input's sample grid moved by ``window_offset``. f_ref
    defaults to the per-ramp carrier the analytic source reports.
    """
    n = signal.samples.size
    t = signal.times + window_offset
    tau = delay_fn(t)

    if signal.source is not None:
        values, carrier = signal.source(t - tau)
    else:
        if f_ref is None and np.any(tau != 0):
            raise SignalError("signal has no analytic source, a carrier reference f_ref is required")
        shift = np.rint((t - tau - signal.t0) * signal.sample_rate).astype(np.int64)
        valid = (shift >= 0) & (shift < n)
        values = np.where(valid, signal.samples[np.clip(shift, 0, n - 1)], 0.0)
        carrier = np.zeros(n)
    if f_ref is not None:
        carrier = np.full(n, f_ref)

    rotation = np.exp(2j * np.pi * np.mod(doppler * t - carrier * tau, 1.0))

    source = None
    if signal.source is not None:
        base_source = signal.source

        def source(tq):
            tq = np.asarray(tq, dtype=float)
            tau_q = delay_fn(tq)
            v, ref = base_source(tq - tau_q)
            if f_ref is not None:
                ref = np.full(tq.shape, f_ref)
            return amplitude * v * np.exp(2j * np.pi * np.mod(doppler * tq - ref * tau_q, 1.0)), ref

    return BasebandSignal(samples=amplitude * values * rotation, sample_rate=signal.sample_rate,
                          t0=signal.t0 + window_offset, source=source)


def comm_propagate(signal: BasebandSignal, link: LinkState, f_ref: Optional[float] = None,
                   amplitude: float = 1.0, symbol_duration: Optional[float] = None) -> BasebandSignal:
    """
    One-way LoS propagation. The receive window opens at the nominal arrival
    time R/c, so only the motion-induced part of the delay moves the envelope.
    ``symbol_duration`` enables the unambiguity guard on the total delay.
    """
    def delay(t):
        return (link.R + link.v * t) / C

    _check_delay(delay(signal.times + link.R / C), symbol_duration, "link")
    return delayed_copy(signal, delay, window_offset=link.R / C, f_ref=f_ref, amplitude=amplitude)


def add_awgn(signal: BasebandSignal, noise: NoiseSpec) -> BasebandSignal:
    """Circularly-symmetric complex Gaussian noise at noise.snr_db per sample."""
    if noise.noiseless:
        return signal

    variance = signal.power / 10.0 ** (noise.snr_db / 10.0)
    rng = np.random.default_rng(noise.seed)
    w = rng.standard_normal(2 * signal.samples.size).view(np.complex128)
    logger.debug(f"AWGN snr={noise.snr_db} dB variance={variance:.3e} seed={noise.seed}")
    return BasebandSignal(samples=signal.samples + np.sqrt(variance / 2.0) * w,
                          sample_rate=signal.sample_rate, t0=signal.t0)
