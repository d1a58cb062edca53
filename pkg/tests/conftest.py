import math

import numpy as np
import pytest

from scallop.dynamics import SwimmerParams


@pytest.fixture
def params() -> SwimmerParams:
    """The reference swimmer: disk a=10, plate b=0.1, drag (1, 2), mass 1."""
    return SwimmerParams.default()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260825)


@pytest.fixture
def theta_mid() -> tuple[float, float]:
    """The worked interval used by the frozen reference values."""
    return math.pi / 6.0, math.pi / 3.0
