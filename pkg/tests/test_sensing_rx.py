import math

import numpy as np
import pytest

from core.errors import ConfigError, SignalError, SingularityError
from core.params import derive
from core.sensing_rx import beat_frequencies, dechirp, estimate_tone, invert, sense
from core.waveform import BasebandSignal, Direction, RampSpec, ramp_samples
from helpers.constants import C
from schemas import NoiseSpec, TargetState


def _tone(frequency, n, sample_rate):
    t = np.arange(n) / sample_rate
    return BasebandSignal(samples=np.exp(2j * np.pi * frequency * t), sample_rate=sample_rate)


def test_tone_on_bin_is_exact():
    sample_rate, n = 1e9, 1024
    bin_width = sample_rate / (2 * n)
    assert estimate_tone(_tone(100 * bin_width, n, sample_rate), 2) == pytest.approx(100 * bin_width, rel=1e-12)


def test_negative_tone_stays_negative():
    assert estimate_tone(_tone(-100e6, 1200, 1.2e9), 2) == pytest.approx(-100e6, rel=1e-9)


@pytest.mark.parametrize("fraction", [0.1, 0.3, 0.5])
def test_off_bin_error_within_half_bin(fraction):
    sample_rate, n = 1e9, 1024
    bin_width = sample_rate / (2 * n)
    frequency = (200 + fraction) * bin_width
    assert abs(estimate_tone(_tone(frequency, n, sample_rate), 2) - frequency) <= bin_width / 2 + 1e-6


def test_interpolated_estimate_stays_near_tone():
    sample_rate, n = 1e9, 1024
    bin_width = sample_rate / (2 * n)
    frequency = 200.3 * bin_width
    assert abs(estimate_tone(_tone(frequency, n, sample_rate), 2, interpolate=True) - frequency) <= bin_width


def test_estimate_tone_rejects_degenerate_input():
    with pytest.raises(SignalError):
        estimate_tone(BasebandSignal(samples=np.zeros(64, dtype=complex), sample_rate=1e6), 2)
    with pytest.raises(ValueError):
        estimate_tone(_tone(1e3, 64, 1e6), 0)


def test_self_dechirp_is_flat(nominal):
    ramp = ramp_samples(RampSpec.from_derived(Direction.UP, derive(nominal)))
    assert np.allclose(dechirp(ramp, ramp).samples, 1.0)


def test_dechirp_length_mismatch():
    with pytest.raises(SignalError):
        dechirp(_tone(1e3, 64, 1e6), _tone(1e3, 65, 1e6))


@pytest.mark.parametrize("mode", ["paper", "exact"])
def test_inversion_round_trip(nominal, mode):
    derived = derive(nominal)
    for r0, v0 in [(300.0, 7000.0), (50.0, -15000.0), (480.0, 1.0)]:
        f_up, f_down = beat_frequencies(TargetState(r0=r0, v0=v0), derived, mode)
        v0_hat, r0_hat = invert(f_up, f_down, derived, mode)
        assert v0_hat == pytest.approx(v0, rel=1e-9)
        assert r0_hat == pytest.approx(r0, rel=1e-9)


def test_exact_mode_removes_down_carrier_offset(nominal):
    derived = derive(nominal)
    f_up, f_down = beat_frequencies(TargetState(r0=300.0, v0=15000.0), derived, "exact")
    _, uncorrected = invert(f_up, f_down, derived, "paper")
    _, r0_hat = invert(f_up, f_down, derived, "exact")
    assert r0_hat == pytest.approx(300.0, abs=1e-6)
    # reading exact-mode beats with the shared carrier misplaces the target by about v0 * T_ramp / 2
    assert 300.0 - uncorrected == pytest.approx(15000.0 * derived.T_ramp / 2, rel=0.05)


def test_forward_beat_values(nominal):
    f_up, f_down = beat_frequencies(TargetState(r0=300.0, v0=7000.0), derive(nominal))
    assert f_up == pytest.approx(343.125e6, rel=1e-3)
    assert f_down == pytest.approx(-311.391e6, rel=1e-3)


def test_inversion_trivial_cases(nominal):
    derived = derive(nominal)
    assert invert(0.0, 0.0, derived) == (0.0, 0.0)
    v0_hat, r0_hat = invert(2e8, -2e8, derived)
    assert v0_hat == 0.0
    assert r0_hat == pytest.approx(C * 2e8 / (2 * derived.mu))


def test_inversion_singularity(nominal):
    derived = derive(nominal)
    with pytest.raises(SingularityError):
        invert(nominal.f_c, nominal.f_c, derived)


def test_noiseless_sense_within_quantization(nominal):
    estimate = sense(TargetState(r0=300.0, v0=7000.0), NoiseSpec(), nominal)
    # ramp averaging adds v0 * T_ramp, the shared-carrier inversion takes back half of it
    assert abs(estimate.r0_hat - 300.0) <= 0.05
    assert abs(estimate.v0_hat - 7000.0) <= 30.0


def test_bin_aligned_static_target(nominal):
    derived = derive(nominal)
    r0 = 5000 * derived.freq_bin * C / (2 * derived.mu)
    estimate = sense(TargetState(r0=r0, v0=0.0), NoiseSpec(), nominal)
    assert estimate.r0_hat == pytest.approx(r0, abs=1e-6)
    assert estimate.v0_hat == pytest.approx(0.0, abs=1e-6)


def test_echo_amplitude_does_not_move_peaks(nominal):
    target = TargetState(r0=300.0, v0=7000.0)
    unit = sense(target, NoiseSpec(), nominal)
    scaled = sense(target, NoiseSpec(), nominal.with_changes(amplitude_mode="link_budget"))
    assert scaled.f_beat_up == pytest.approx(unit.f_beat_up)
    assert scaled.f_beat_down == pytest.approx(unit.f_beat_down)


def test_noisy_sense_is_seeded(nominal):
    target = TargetState(r0=300.0, v0=7000.0)
    first = sense(target, NoiseSpec(snr_db=-20.0, seed=5), nominal)
    again = sense(target, NoiseSpec(snr_db=-20.0, seed=5), nominal)
    assert first == again


def test_below_threshold_still_returns_estimate(nominal):
    estimate = sense(TargetState(r0=300.0, v0=7000.0), NoiseSpec(snr_db=-40.0, seed=1), nominal)
    assert math.isfinite(estimate.r0_hat) and math.isfinite(estimate.v0_hat)


@pytest.mark.parametrize("target,key", [
    (TargetState(r0=600.0, v0=0.0), "r0"),
    (TargetState(r0=0.0, v0=0.0), "r0"),
    (TargetState(r0=300.0, v0=16000.0), "v0"),
])
def test_target_outside_configured_limits(nominal, target, key):
    with pytest.raises(ConfigError) as info:
        sense(target, NoiseSpec(), nominal)
    assert info.value.key == key


def test_error_shrinks_with_snr(nominal):
    target = TargetState(r0=300.0, v0=7000.0)

    def median_error(snr_db):
        return np.median([abs(sense(target, NoiseSpec(snr_db=snr_db, seed=seed), nominal).r0_hat - target.r0)
                          for seed in range(100)])

    assert median_error(-10.0) <= median_error(-30.0)
