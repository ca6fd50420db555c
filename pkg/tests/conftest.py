import numpy as np
import pytest

from manifoldq import PointCloud
from manifoldq.persistence import PersistenceDiagram


def random_cloud(rng, n, dim, spread=1.0):
    return PointCloud(rng.uniform(-spread, spread, size=(n, dim)))


def random_diagram(rng, dim=1, max_pairs=8, with_infinite=False):
    m = int(rng.integers(0, max_pairs + 1))
    births = rng.uniform(0.0, 2.0, size=m)
    deaths = births + rng.uniform(0.01, 2.0, size=m)
    pairs = np.column_stack([births, deaths])
    if with_infinite and m and rng.uniform() < 0.5:
        pairs[int(rng.integers(0, m)), 1] = np.inf
    return PersistenceDiagram.from_pairs(dim, pairs)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
