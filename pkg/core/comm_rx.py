"""
Communication receiver for chirp-polarity symbols.

After compensation each symbol window is correlated against both triangular
templates (up-down and down-up) and the larger correlation magnitude decides
the bit.
"""
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from core.channel import delayed_copy
from core.errors import AmbiguityError, SignalError
from core.waveform import BasebandSignal, symbol_samples
from schemas import CompensationResidual, DerivedParams


def apply_residual(signal: BasebandSignal, res: CompensationResidual,
                   symbol_duration: Optional[float] = None) -> BasebandSignal:
    """r'(t) = r(t - delay_residual) * exp(j 2 pi doppler_residual t)."""
    if res.perfect:
        return signal
    if symbol_duration is not None and abs(res.delay_residual) >= symbol_duration:
        raise AmbiguityError(
            f"residual delay {res.delay_residual:.6g} s reaches the {symbol_duration:.6g} s symbol")
    return delayed_copy(signal, lambda t: np.full(np.shape(t), res.delay_residual),
                        doppler=res.doppler_residual)


@lru_cache(maxsize=8)
def _templates(derived: DerivedParams) -> np.ndarray:
    # rows: conj of bit-0 and bit-1 symbols
    return np.conj(np.stack([symbol_samples(0, derived).samples, symbol_samples(1, derived).samples]))


def correlate_symbols(rx: BasebandSignal, n_bits: int, derived: DerivedParams) -> Tuple[np.ndarray, np.ndarray]:
    """Normalized correlation magnitudes (k_0, k_1) for every symbol window."""
    symbol_length = 2 * derived.n_samples
    if rx.samples.size != n_bits * symbol_length:
        raise SignalError(
            f"length mismatch: {rx.samples.size} samples for {n_bits} symbols of {symbol_length}")
    windows = rx.samples.reshape(n_bits, symbol_length)
    k = np.abs(windows @ _templates(derived).T) / symbol_length
    return k[:, 0], k[:, 1]


def detect_symbol(rx: BasebandSignal, derived: DerivedParams) -> int:
    k0, k1 = correlate_symbols(rx, 1, derived)
    return int(k1[0] > k0[0])


def demodulate(rx: BasebandSignal, n_bits: int, derived: DerivedParams) -> np.ndarray:
    k0, k1 = correlate_symbols(rx, n_bits, derived)
    # ties resolve to 0
    return (k1 > k0).astype(np.int64)


def count_bit_errors(sent: Sequence[int], received: Sequence[int]) -> int:
    return int(np.count_nonzero(np.asarray(sent) != np.asarray(received)))
