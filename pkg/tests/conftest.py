import numpy as np
import pytest

from phasekit.model import ToleranceSet


@pytest.fixture
def tol():
    return ToleranceSet()


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
