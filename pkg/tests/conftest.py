import numpy as np
import pytest
from hypothesis import settings

from biharm import CircleData, LineData

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_circle(rng, degree, decay=1.0):
    n = np.arange(1, degree + 1)
    return CircleData(rng.normal(), rng.normal(size=degree) / n**decay, rng.normal(size=degree) / n**decay)


def random_line(rng, degree, decay=1.0):
    return LineData(random_circle(rng, degree, decay))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def smooth_line(rng, degree=4):
    """LineData with a0, a_n, b_n uniform in [-1, 1] / n^2 (bounded pullback derivative)."""
    n = np.arange(1, degree + 1)
    return LineData(CircleData(rng.uniform(-1, 1), rng.uniform(-1, 1, degree) / n**2, rng.uniform(-1, 1, degree) / n**2))
