"""
Radar cross section of spherical debris and free-space link attenuation.

The normalized RCS follows the size-estimation-model fit: a Rayleigh branch
for electrically small spheres, the optical limit for large ones, and the
minimum of three straight lines in between.
"""
import math
from typing import List, Sequence

import numpy as np
import pandas as pd

from helpers.constants import C, RCS_FLOOR

OPTICAL_X = 2.523
RAYLEIGH_X = 0.1876

# transition-region fit, sigma_hat = min(a0 x + b0, c0 x + d0, e0 x + f0)
FIT_COEFFICIENTS = {
    "a0": 11.0346, "b0": -11.2369,
    "c0": 4.9409, "d0": -4.8158,
    "e0": 157.2653, "f0": -45.6594,
}


def _check_positive(name: str, value: float):
    if not value > 0:
        raise ValueError(f"{name} must be > 0, got {value}")


def rcs_regime(x: float) -> str:
    _check_positive("x", x)
    if x > OPTICAL_X:
        return "optical"
    if x < RAYLEIGH_X:
        return "rayleigh"
    return "transition"


def normalized_rcs(x: float, coefficients: dict = None) -> float:
    """
    sigma / lambda^2 as a function of x = r / lambda.

    The transition lines go negative below x ~ 1.02, so that branch is
    clamped at RCS_FLOOR. Branch selection happens before the min().
    """
    regime = rcs_regime(x)
    if regime == "optical":
        return x ** 2 / (4.0 * math.pi)
    if regime == "rayleigh":
        return 9.0 * math.pi ** 2 * x ** 6 / 4.0

    k = coefficients or FIT_COEFFICIENTS
    lines = (k["a0"] * x + k["b0"], k["c0"] * x + k["d0"], k["e0"] * x + k["f0"])
    return max(min(lines), RCS_FLOOR)


def rcs(r: float, wavelength: float) -> float:
    _check_positive("r", r)
    _check_positive("wavelength", wavelength)
    return normalized_rcs(r / wavelength) * wavelength ** 2


def optical_threshold_radius(wavelength: float) -> float:
    """Smallest radius treated in the optical regime."""
    _check_positive("wavelength", wavelength)
    return OPTICAL_X * wavelength


def fspl_comm(f_c: float, R: float) -> float:
    """One-way free-space amplitude gain c / (4 pi f_c R)."""
    _check_positive("f_c", f_c)
    _check_positive("R", R)
    return C / (4.0 * math.pi * f_c * R)


def fspl_db(f_c: float, R: float) -> float:
    return -20.0 * math.log10(fspl_comm(f_c, R))


def sensing_amplitude(f_c: float, r0: float, sigma: float) -> float:
    """Two-way amplitude gain: one-way FSPL times the reflection term."""
    _check_positive("f_c", f_c)
    _check_positive("r0", r0)
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    return fspl_comm(f_c, r0) * math.sqrt(sigma / (4.0 * math.pi * r0 ** 2))


def echo_amplitude(f_c: float, r0: float, debris_radius: float) -> float:
    return sensing_amplitude(f_c, r0, rcs(debris_radius, C / f_c))


def rcs_table(frequencies: Sequence[float], x_min: float, x_max: float, points: int) -> pd.DataFrame:
    """Log-spaced normalized-radius grid evaluated at each carrier frequency."""
    _check_positive("x_min", x_min)
    if x_max <= x_min:
        raise ValueError("x_max must exceed x_min")

    xs = np.logspace(math.log10(x_min), math.log10(x_max), points)
    rows: List[dict] = []
    for f_c in frequencies:
        wavelength = C / f_c
        onset_mm = optical_threshold_radius(wavelength) * 1e3
        for x in xs:
            sigma_hat = normalized_rcs(float(x))
            rows.append({
                "f_c": f_c,
                "x": float(x),
                "sigma_hat": sigma_hat,
                "r_m": float(x) * wavelength,
                "sigma_m2": sigma_hat * wavelength ** 2,
                "regime": rcs_regime(float(x)),
                "optical_onset_mm": onset_mm,
            })
    return pd.DataFrame(rows, columns=["f_c", "x", "sigma_hat", "r_m", "sigma_m2", "regime", "optical_onset_mm"])
