import numpy as np
import pytest

from core.channel import add_awgn
from core.comm_rx import apply_residual, correlate_symbols, count_bit_errors, demodulate, detect_symbol
from core.errors import AmbiguityError, SignalError
from core.experiments import ber_plan, ber_sweep
from core.params import derive
from core.waveform import BasebandSignal, modulate, symbol_samples
from schemas import CompensationResidual, NoiseSpec


def test_matched_template_wins(small):
    derived = derive(small)
    rx = symbol_samples(0, derived)
    k0, k1 = correlate_symbols(rx, 1, derived)
    assert k0[0] == pytest.approx(1.0, abs=1e-9)
    assert k1[0] < 0.1
    assert detect_symbol(rx, derived) == 0


def test_detection_ignores_amplitude(small):
    derived = derive(small)
    one = symbol_samples(1, derived)
    faint = BasebandSignal(samples=0.01 * one.samples, sample_rate=one.sample_rate)
    assert detect_symbol(faint, derived) == 1


def test_tie_resolves_to_zero(small):
    derived = derive(small)
    silence = BasebandSignal(samples=np.zeros(2 * derived.n_samples, dtype=complex), sample_rate=derived.f_s)
    assert detect_symbol(silence, derived) == 0


def test_noiseless_round_trip(small):
    derived = derive(small)
    bits = np.random.default_rng(0).integers(0, 2, size=256)
    assert np.array_equal(demodulate(modulate(bits, derived), bits.size, derived), bits)


def test_high_snr_round_trip(small):
    derived = derive(small)
    bits = np.random.default_rng(1).integers(0, 2, size=128)
    rx = add_awgn(modulate(bits, derived), NoiseSpec(snr_db=-10.0, seed=2))
    assert count_bit_errors(bits, demodulate(rx, bits.size, derived)) == 0


def test_pure_noise_is_a_coin_flip(small):
    derived = derive(small)
    n_bits = 1000
    rng = np.random.default_rng(4)
    noise = rng.standard_normal(2 * n_bits * 2 * derived.n_samples).view(np.complex128)
    received = demodulate(BasebandSignal(samples=noise, sample_rate=derived.f_s), n_bits, derived)
    bits = rng.integers(0, 2, size=n_bits)
    assert count_bit_errors(bits, received) / n_bits == pytest.approx(0.5, abs=0.07)


def test_length_mismatch(small):
    derived = derive(small)
    with pytest.raises(SignalError):
        demodulate(modulate([0, 1], derived), 3, derived)


def test_perfect_compensation_is_identity(small):
    signal = modulate([0, 1], derive(small))
    assert apply_residual(signal, CompensationResidual()) is signal


def test_doppler_residual_shifts_spectrum():
    sample_rate, n, f0, f_d = 1e9, 1024, 50e6, 0.227e6
    t = np.arange(n) / sample_rate
    tone = BasebandSignal(samples=np.exp(2j * np.pi * f0 * t), sample_rate=sample_rate)
    shifted = apply_residual(tone, CompensationResidual(doppler_residual=f_d))
    assert np.allclose(shifted.samples, np.exp(2j * np.pi * (f0 + f_d) * t), atol=1e-9)


def test_delay_residual_breaks_correlation(small):
    derived = derive(small)
    rx = apply_residual(symbol_samples(0, derived), CompensationResidual(delay_residual=1.67e-9), derived.T_sym)
    k0, _ = correlate_symbols(rx, 1, derived)
    assert k0[0] < 0.5


def test_delay_residual_beyond_symbol(small):
    derived = derive(small)
    with pytest.raises(AmbiguityError):
        apply_residual(symbol_samples(0, derived), CompensationResidual(delay_residual=derived.T_sym), derived.T_sym)


def test_count_bit_errors():
    assert count_bit_errors([0, 1, 1, 0], [0, 0, 1, 1]) == 2
    assert count_bit_errors([1, 1], [1, 1]) == 0


@pytest.mark.slow
def test_error_rate_symmetric_in_bit_value(small):
    derived = derive(small)
    n_bits, batch = 10000, 1000
    rates = []
    for bit in (0, 1):
        errors = 0
        for b in range(n_bits // batch):
            bits = np.full(batch, bit)
            rx = add_awgn(modulate(bits, derived), NoiseSpec(snr_db=-30.0, seed=100 * bit + b))
            errors += count_bit_errors(bits, demodulate(rx, batch, derived))
        rates.append(errors / n_bits)
    p = sum(rates) / 2
    assert 0 < p < 0.5
    assert abs(rates[0] - rates[1]) <= 4 * np.sqrt(2 * p * (1 - p) / n_bits)


@pytest.mark.slow
def test_error_rate_falls_with_snr(small):
    grid = [-45.0, -42.0, -39.0, -36.0, -33.0, -30.0]
    n_bits = 4000
    rows = ber_sweep(ber_plan(small, grid, n_bits), [CompensationResidual()], threads=4)
    curve = [row.value for row in sorted(rows, key=lambda row: row.labels["snr_db"]) if row.metric == "ber"]
    for louder, quieter in zip(curve[1:], curve[:-1]):
        assert louder <= quieter + 3 * np.sqrt(0.25 / n_bits)


@pytest.mark.slow
def test_perfect_compensation_clean_above_waterfall(nominal):
    rows = ber_sweep(ber_plan(nominal, [-30.0], 10000), [CompensationResidual()], threads=4)
    # BER here is about 1e-5, so one stray error in 10^4 bits is still inside that
    assert next(row.value for row in rows if row.metric == "bit_errors") <= 1
