import numpy as np
import pytest

from ringreps.groups import group_from_descriptors


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(12345)


def group(scheme, ring):
    return group_from_descriptors(scheme, ring)
