import numpy as np
import pytest

from symtest.oracle import DEFAULT_SEED


@pytest.fixture
def rng():
    return np.random.default_rng(DEFAULT_SEED)
