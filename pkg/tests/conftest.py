import numpy as np
import pytest

from covergraph.geometry import Metric, PointCloud

METRICS = [Metric("euclidean"), Metric("l1"), Metric("cosine")]


def random_cloud(rng, n=None, dim=None, cloud_id="random", nonzero=False):
    """Small random cloud; `nonzero` keeps every vector away from 0 so the
    cosine metric is defined."""
    n = int(rng.integers(5, 60)) if n is None else n
    dim = int(rng.integers(1, 6)) if dim is None else dim
    pts = rng.normal(size=(n, dim))
    if nonzero:
        norms = np.linalg.norm(pts, axis=1)
        pts[norms < 0.1] += 1.0
    return PointCloud(points=pts, id=cloud_id)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
