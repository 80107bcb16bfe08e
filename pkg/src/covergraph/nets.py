"""Greedy and equivariant epsilon-net selection.

A net is a subset L of cloud indices such that every point lies within
epsilon of some landmark. The greedy scan appends a point iff it is
farther than epsilon from every landmark chosen so far; the equivariant
variant appends the point's whole orbit instead, which makes the landmark
set invariant under the group while keeping coverage.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidOrder, StaleNet
from .geometry import GroupAction, Metric, PointCloud, distances


@dataclass(frozen=True)
class EpsNet:
    """Landmark indices in insertion order, plus the provenance needed to
    re-check coverage and to refuse mismatched clouds later (StaleNet)."""

    landmarks: tuple[int, ...]
    epsilon: float
    cloud_id: str
    metric: Metric
    algorithm: str  # "greedy" | "equivariant" | "manual"
    order_seed: int | None = None

    def __len__(self) -> int:
        return len(self.landmarks)

    def check_cloud(self, cloud: PointCloud, metric: Metric) -> None:
        if self.cloud_id != cloud.id or self.metric != metric:
            raise StaleNet(
                f"net was built on cloud {self.cloud_id!r} with {self.metric.kind}, "
                f"got cloud {cloud.id!r} with {metric.kind}"
            )


def seeded_order(n: int, seed: int) -> np.ndarray:
    """Deterministic shuffle of 0..n-1 used by the CLI and sweep harness."""
    return np.random.default_rng(seed).permutation(n)


def _resolve_order(cloud: PointCloud, order, order_seed) -> np.ndarray:
    n = cloud.n_points
    if order is not None:
        arr = np.asarray(order, dtype=np.int64).reshape(-1)
        if arr.shape[0] != n or not np.array_equal(np.sort(arr), np.arange(n)):
            raise InvalidOrder(f"order must be a permutation of 0..{n - 1}")
        return arr
    if order_seed is not None:
        return seeded_order(n, order_seed)
    return np.arange(n, dtype=np.int64)


def _check_epsilon(epsilon: float) -> float:
    eps = float(epsilon)
    if not eps > 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    return eps


def greedy_net(
    cloud: PointCloud,
    metric: Metric,
    epsilon: float,
    order=None,
    order_seed: int | None = None,
) -> EpsNet:
    """Greedy net: scan in `order`, keep every point still uncovered.

    Deterministic given (cloud, metric, epsilon, order). An empty cloud
    yields an empty net. Every landmark was farther than epsilon from all
    prior landmarks at insertion time, so landmarks are pairwise > epsilon
    apart; every point ends within epsilon of some landmark.
    """
    eps = _check_epsilon(epsilon)
    scan = _resolve_order(cloud, order, order_seed)
    landmarks: list[int] = []
    min_dist = np.full(cloud.n_points, np.inf)
    for i in scan:
        if min_dist[i] > eps:
            landmarks.append(int(i))
            np.minimum(min_dist, distances(metric, cloud.points, cloud.points[i]), out=min_dist)
    return EpsNet(
        landmarks=tuple(landmarks),
        epsilon=eps,
        cloud_id=cloud.id,
        metric=metric,
        algorithm="greedy",
        order_seed=order_seed,
    )


def equivariant_net(
    cloud: PointCloud,
    metric: Metric,
    epsilon: float,
    action: GroupAction,
    order=None,
    order_seed: int | None = None,
) -> EpsNet:
    """Equivariant net: when a point is uncovered, append its whole orbit.

    Orbit members already present are skipped (set semantics); members
    within epsilon of existing landmarks are still appended, which is what
    makes g(L) = L for every group element. Coverage holds as in the
    greedy scan.
    """
    eps = _check_epsilon(epsilon)
    if action.cloud_id != cloud.id:
        raise StaleNet(f"action is on cloud {action.cloud_id!r}, net requested on {cloud.id!r}")
    if cloud.n_points and action.n_indices != cloud.n_points:
        raise StaleNet("action permutes a different number of indices than the cloud has")
    scan = _resolve_order(cloud, order, order_seed)
    landmarks: list[int] = []
    chosen = np.zeros(cloud.n_points, dtype=bool)
    min_dist = np.full(cloud.n_points, np.inf)
    for i in scan:
        if min_dist[i] > eps:
            for j in action.orbit(int(i)).members:
                j = int(j)
                if not chosen[j]:
                    chosen[j] = True
                    landmarks.append(j)
                    np.minimum(
                        min_dist, distances(metric, cloud.points, cloud.points[j]), out=min_dist
                    )
    return EpsNet(
        landmarks=tuple(landmarks),
        epsilon=eps,
        cloud_id=cloud.id,
        metric=metric,
        algorithm="equivariant",
        order_seed=order_seed,
    )


def net_from_landmarks(cloud: PointCloud, metric: Metric, epsilon: float, landmarks) -> EpsNet:
    """Wrap an explicit landmark list as a net, verifying coverage.

    For fixtures and externally chosen landmarks; no separation claim is
    recorded (algorithm "manual").
    """
    eps = _check_epsilon(epsilon)
    marks = [int(i) for i in landmarks]
    if cloud.n_points:
        if not marks:
            raise ValueError("a non-empty cloud needs at least one landmark")
        min_dist = np.full(cloud.n_points, np.inf)
        for i in marks:
            if not 0 <= i < cloud.n_points:
                raise IndexError(f"landmark {i} out of range")
            np.minimum(min_dist, distances(metric, cloud.points, cloud.points[i]), out=min_dist)
        worst = int(np.argmax(min_dist))
        if min_dist[worst] > eps:
            raise ValueError(
                f"not an epsilon-net: point {worst} is {min_dist[worst]:.6g} from the "
                f"nearest landmark (epsilon={eps:.6g})"
            )
    return EpsNet(
        landmarks=tuple(marks),
        epsilon=eps,
        cloud_id=cloud.id,
        metric=metric,
        algorithm="manual",
        order_seed=None,
    )
