import os

import pytest

from schemas import SystemConfig

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


@pytest.fixture
def nominal():
    """Default inter-satellite parameters: 340 GHz, 1.5 GHz sweep, a = 5.5, 500 m, 15 km/s."""
    return SystemConfig(f_c=340e9, B_c=1.5e9, a=5.5, r_max=500.0, v_max=15e3, master_seed=42)


@pytest.fixture
def small():
    # same carrier and sweep with a short window, a few thousand samples per symbol
    return SystemConfig(f_c=340e9, B_c=1.5e9, a=5.5, r_max=100.0, v_max=15e3, master_seed=7)


@pytest.fixture
def config_path():
    return os.path.join(ROOT, "configs", "isl.conf")
