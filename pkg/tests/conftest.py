import numpy as np
import pytest

from multop import Truncation, annulus, pants


@pytest.fixture(scope="session")
def pants_default():
    return pants(0.5, 0.2, 0.2)


@pytest.fixture(scope="session")
def annulus_default():
    return annulus(0.5)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def trunc40():
    return Truncation(40)
