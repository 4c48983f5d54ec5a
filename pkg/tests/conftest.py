import numpy as np
import pytest

from aslface.landmarks import LandmarkFrame, SentenceClass


def random_integer_points(rng, low=0, high=10000):
    """68 integer-valued points with no landmark coinciding with index 8.

    Integer coordinates keep the translation/reflection arithmetic exact
    in the invariance tests.
    """
    pts = rng.integers(low, high, size=(68, 2)).astype(np.float64)
    origin = pts[8]
    for i in range(68):
        if i != 8 and pts[i, 0] == origin[0] and pts[i, 1] == origin[1]:
            pts[i, 0] += 1.0
    return pts


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def simple_frame(rng):
    return LandmarkFrame("f0", random_integer_points(rng), SentenceClass.AS)
