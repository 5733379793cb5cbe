import numpy as np
import pytest
from hypothesis import settings

from gftfrac.fracseries import FracPowerSeries

settings.register_profile("suite", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("suite")


def random_series(rng, N=64, mu=1.0, scale=1.0, power=2.0, real=False):
    """Class member with ``|a_n| <= scale / n^power`` (inside every A_mu bound for scale <= 1)."""
    n = np.arange(2, N + 1)
    mag = scale * rng.uniform(0, 1, N - 1) / n ** power
    if real:
        c = mag * rng.choice([-1.0, 1.0], N - 1)
    else:
        c = mag * np.exp(2j * np.pi * rng.uniform(0, 1, N - 1))
    return FracPowerSeries(mu, np.concatenate([[1.0], c]))


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)
