import numpy as np
import pytest

from quartic import potential


@pytest.fixture
def rng():
    return np.random.default_rng(20191015)


@pytest.fixture
def free():
    return potential.zero()


@pytest.fixture
def cosine():
    """V(t) = 2 cos 2 pi t, so V_1 = V_-1 = 1."""
    return potential.from_cosines({1: 2.0})


@pytest.fixture
def two_cosines():
    return potential.from_cosines({1: 2.0, 2: 1.0})


@pytest.fixture
def inverse_n():
    """V_n = 1/n for 1 <= |n| <= 12."""
    return potential.trig({n: 1.0 / n for n in range(1, 13)})


def random_trig(rng, harmonics=3, scale=1.0):
    coeffs = {n: scale * complex(*rng.normal(size=2)) / n for n in range(1, harmonics + 1)}
    return potential.trig(coeffs)


def random_lambda(rng, z_max=25.0):
    """lambda = z^4 with z uniform in the sector |arg z| <= pi/4, |z| <= z_max."""
    r = z_max * np.sqrt(rng.uniform(0.01, 1.0))
    phi = rng.uniform(-np.pi / 4, np.pi / 4)
    return complex((r * np.exp(1j * phi)) ** 4)
