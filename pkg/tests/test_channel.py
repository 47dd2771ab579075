import numpy as np
import pytest

from core.channel import add_awgn, comm_propagate, sensing_echo
from core.errors import AmbiguityError
from core.params import derive
from core.rcs_link import fspl_comm
from core.sensing_rx import beat_frequencies, dechirp, estimate_tone
from core.waveform import BasebandSignal, Direction, RampSpec, modulate, ramp_samples, symbol_samples
from helpers.constants import C
from schemas import LinkState, NoiseSpec, TargetState


def _tone(frequency, n=4096, sample_rate=1e9):
    t = np.arange(n) / sample_rate
    return BasebandSignal(samples=np.exp(2j * np.pi * frequency * t), sample_rate=sample_rate)


def test_zero_delay_echo_is_the_ramp(nominal):
    spec = RampSpec.from_derived(Direction.UP, derive(nominal))
    echo = sensing_echo(spec, TargetState(r0=0.0, v0=0.0))
    assert np.allclose(echo.samples, ramp_samples(spec).samples, atol=1e-12)


def test_beat_phase_matches_closed_form(nominal):
    derived = derive(nominal)
    target = TargetState(r0=300.0, v0=7000.0)
    spec = RampSpec.from_derived(Direction.UP, derived)
    beat = dechirp(ramp_samples(spec), sensing_echo(spec, target))

    t = np.arange(derived.n_samples) / derived.f_s
    tau = 2 * (target.r0 + target.v0 * t) / C
    cycles = 0.5 * derived.mu * t ** 2 - 0.5 * derived.mu * (t - tau) ** 2 + derived.f_c * tau
    residual = np.angle(beat.samples * np.exp(-2j * np.pi * np.mod(cycles, 1.0))) / (2 * np.pi)
    assert np.max(np.abs(residual)) <= 1e-6


def test_beat_starts_at_analytic_frequency(nominal):
    derived = derive(nominal)
    target = TargetState(r0=300.0, v0=7000.0)
    spec = RampSpec.from_derived(Direction.UP, derived)
    beat = dechirp(ramp_samples(spec), sensing_echo(spec, target)).samples

    f_up, _ = beat_frequencies(target, derived)
    assert f_up == pytest.approx(343.125e6, rel=1e-3)
    start = np.angle(beat[1] * np.conj(beat[0])) / (2 * np.pi) * derived.f_s
    assert start == pytest.approx(f_up, rel=1e-5)


def test_static_target_dechirps_to_tone(nominal):
    derived = derive(nominal)
    spec = RampSpec.from_derived(Direction.UP, derived)
    beat = dechirp(ramp_samples(spec), sensing_echo(spec, TargetState(r0=200.0, v0=0.0))).samples
    step = np.angle(beat[1:] * np.conj(beat[:-1])) / (2 * np.pi) * derived.f_s
    assert np.allclose(step, derived.mu * 2 * 200.0 / C, rtol=1e-9)


def test_echo_beyond_window_is_ambiguous():
    spec = RampSpec(direction=Direction.UP, mu_signed=1e14, f_ref=340e9, duration=1e-6, sample_rate=1e9)
    with pytest.raises(AmbiguityError):
        sensing_echo(spec, TargetState(r0=200.0, v0=0.0))


def test_link_at_rest_is_identity(small):
    signal = modulate([0, 1], derive(small))
    out = comm_propagate(signal, LinkState(R=0.0, v=0.0))
    assert np.allclose(out.samples, signal.samples, atol=1e-9)


def test_link_doppler_shifts_tone():
    f0, v, f_ref = 100e6, 7000.0, 340e9
    out = comm_propagate(_tone(f0), LinkState(R=0.0, v=v), f_ref=f_ref)
    measured = estimate_tone(out, zero_pad_factor=8)
    assert abs(measured - (f0 - f_ref * v / C)) <= 1e9 / (2 * 8 * 4096)


def test_link_loss_scales_power(small):
    derived = derive(small)
    alpha = fspl_comm(small.f_c, 300e3)
    out = comm_propagate(symbol_samples(0, derived), LinkState(R=300e3, v=0.0), amplitude=alpha)
    assert out.power == pytest.approx(alpha ** 2, rel=1e-9)
    assert out.t0 == pytest.approx(300e3 / C)


def test_link_guard_uses_symbol_duration(small):
    derived = derive(small)
    with pytest.raises(AmbiguityError):
        comm_propagate(symbol_samples(0, derived), LinkState(R=300e3, v=0.0), symbol_duration=derived.T_sym)


def test_noiseless_returns_input():
    signal = _tone(1e6)
    assert add_awgn(signal, NoiseSpec()) is signal


def test_noise_power_and_whiteness():
    signal = _tone(1e6, n=2 ** 17)
    noisy = add_awgn(signal, NoiseSpec(snr_db=0.0, seed=3))
    w = noisy.samples - signal.samples
    power = np.mean(np.abs(w) ** 2)
    assert power == pytest.approx(1.0, rel=0.05)
    lag_one = np.abs(np.sum(w[1:] * np.conj(w[:-1]))) / np.sum(np.abs(w) ** 2)
    assert lag_one < 0.02
    assert abs(np.mean(w.real ** 2) - np.mean(w.imag ** 2)) < 0.05


def test_noise_is_seeded():
    signal = _tone(1e6)
    first = add_awgn(signal, NoiseSpec(snr_db=-10.0, seed=11)).samples
    again = add_awgn(signal, NoiseSpec(snr_db=-10.0, seed=11)).samples
    other = add_awgn(signal, NoiseSpec(snr_db=-10.0, seed=12)).samples
    assert np.array_equal(first, again)
    assert not np.array_equal(first, other)


def test_noise_spec_rejects_nan():
    with pytest.raises(ValueError):
        NoiseSpec(snr_db=float("nan"))
