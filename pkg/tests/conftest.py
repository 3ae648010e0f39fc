import random

import pytest

from crown.geometry import SurfaceChart


@pytest.fixture
def chart2():
    return SurfaceChart(2)


@pytest.fixture
def chart3():
    return SurfaceChart(3)


@pytest.fixture
def rng():
    return random.Random(20240817)
