import numpy as np
import pytest

from mqret.core import C


@pytest.fixture
def lam():
    return 1e-6  # 1 um donor transition wavelength


@pytest.fixture
def omega(lam):
    return 2.0 * np.pi * C / lam


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
