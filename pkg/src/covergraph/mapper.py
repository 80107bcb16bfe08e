"""Classical Mapper: interval covers of a lens range, clustered preimages.

Also home of the two clustering backends (deterministic DBSCAN and
radius-components, i.e. single linkage at a fixed threshold) shared with
the Mapper-on-Ball-Mapper construction. DBSCAN with min_pts=1 degenerates
to radius-components, which the tests use as a cross-check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

import numpy as np

from .geometry import Metric, PointCloud, pairwise_distances
from .nerve import CoverGraph, Vertex, edges_from_cover

MAX_COVER_DIM = 3  # k^n cubes blow up beyond this; use MoBM for high-D lenses

_BLOCK_ROWS = 512  # row-block size for neighbor scans; keeps memory flat


@dataclass(frozen=True)
class IntervalCover:
    """Overlapping closed cubes over a lens bounding box.

    `axes[d]` is the tuple of (lo, hi) intervals along axis d; `cubes`
    enumerates per-axis interval choices in row-major order. Consecutive
    intervals along an axis overlap by exactly `gain` of their length.
    """

    axes: tuple[tuple[tuple[float, float], ...], ...]
    gain: float

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def cubes(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(len(a)) for a in self.axes)))

    def cube_bounds(self, cube: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
        lo = np.array([self.axes[d][i][0] for d, i in enumerate(cube)])
        hi = np.array([self.axes[d][i][1] for d, i in enumerate(cube)])
        return lo, hi

    def members(self, lens: np.ndarray, cube: tuple[int, ...]) -> np.ndarray:
        lo, hi = self.cube_bounds(cube)
        inside = np.all((lens >= lo) & (lens <= hi), axis=1)
        return np.flatnonzero(inside)


def _as_lens(lens) -> np.ndarray:
    arr = np.asarray(lens, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    return arr


def cover_range(lens, k, gain: float) -> IntervalCover:
    """Cover the lens range with k intervals per axis, overlap fraction `gain`.

    With k intervals of common length len overlapping by gain*len, the
    axis range r gives len = r / (k - (k-1)*gain). A zero-width axis
    degenerates to the single interval [v, v] regardless of k.
    """
    arr = _as_lens(lens)
    n = arr.shape[1]
    if n > MAX_COVER_DIM:
        raise ValueError(
            f"interval covers are capped at {MAX_COVER_DIM} axes (got {n}); "
            "use Mapper on Ball Mapper for high-dimensional lenses"
        )
    if not 0.0 <= gain < 1.0:
        raise ValueError(f"gain must be in [0, 1), got {gain}")
    ks = [k] * n if np.isscalar(k) else list(k)
    if len(ks) != n or any(int(ki) < 1 for ki in ks):
        raise ValueError("k must be a positive count per lens axis")
    axes = []
    for d in range(n):
        lo, hi = float(arr[:, d].min()), float(arr[:, d].max())
        ki = int(ks[d])
        if hi == lo:
            axes.append(((lo, hi),))
            continue
        length = (hi - lo) / (ki - (ki - 1) * gain)
        step = length * (1.0 - gain)
        intervals = tuple((lo + i * step, lo + i * step + length) for i in range(ki))
        # Close the last interval on the exact max so boundary points are kept.
        intervals = intervals[:-1] + ((intervals[-1][0], max(intervals[-1][1], hi)),)
        axes.append(intervals)
    return IntervalCover(axes=tuple(axes), gain=float(gain))


@dataclass(frozen=True)
class ClusteringSpec:
    """Clustering used on cover-element preimages.

    kind "radius": connected components of the eps_db-threshold graph.
    kind "dbscan": deterministic DBSCAN; min_pts counts the point itself,
    so min_pts=1 reduces to "radius".
    """

    kind: str = "radius"
    eps_db: float = 1.0
    min_pts: int = 1

    def __post_init__(self):
        kind = {"radius": "radius", "radius-components": "radius", "dbscan": "dbscan"}.get(
            self.kind
        )
        if kind is None:
            raise ValueError(f"unknown clustering kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if not self.eps_db > 0:
            raise ValueError("eps_db must be > 0")
        if self.min_pts < 1:
            raise ValueError("min_pts must be >= 1")


def _neighbor_blocks(points: np.ndarray, others: np.ndarray, metric: Metric, radius: float):
    """Yield (row_offset, boolean block) of the <=radius adjacency, row-blocked."""
    m = points.shape[0]
    for start in range(0, m, _BLOCK_ROWS):
        stop = min(start + _BLOCK_ROWS, m)
        block = pairwise_distances(metric, points[start:stop], others) <= radius
        yield start, block


def _threshold_components(pts: np.ndarray, metric: Metric, radius: float) -> np.ndarray:
    """Component labels of the <=radius graph, via vectorized BFS.

    Each point lands in exactly one BFS frontier, so the total distance
    work is one full pairwise pass regardless of component shape. Labels
    are numbered by ascending smallest member.
    """
    m = pts.shape[0]
    labels = np.full(m, -1, dtype=np.int64)
    current = 0
    for seed in range(m):
        if labels[seed] >= 0:
            continue
        labels[seed] = current
        frontier = np.array([seed], dtype=np.int64)
        while frontier.shape[0]:
            reach = np.zeros(m, dtype=bool)
            for off, block in _neighbor_blocks(pts[frontier], pts, metric, radius):
                reach |= block.any(axis=0)
            fresh = reach & (labels < 0)
            labels[fresh] = current
            frontier = np.flatnonzero(fresh)
        current += 1
    return labels


def cluster(
    cloud: PointCloud, indices, metric: Metric, spec: ClusteringSpec
) -> tuple[list[np.ndarray], np.ndarray]:
    """Cluster a subset of cloud points; returns (clusters, noise).

    Clusters are disjoint index arrays (original cloud indices), ordered
    by smallest member; with min_pts=1 they cover the subset and noise is
    empty. DBSCAN border points reachable from several cores go to the
    earliest-indexed core's cluster, so labels are reproducible.
    """
    idx = np.unique(np.asarray(indices, dtype=np.int64))
    if idx.shape[0] == 0:
        raise ValueError("cannot cluster an empty subset")
    pts = cloud.points[idx]
    m = idx.shape[0]

    if spec.kind == "radius" or spec.min_pts == 1:
        labels = _threshold_components(pts, metric, spec.eps_db)
        clusters = [idx[labels == r] for r in range(int(labels.max()) + 1)]
        return clusters, np.empty(0, dtype=np.int64)

    # DBSCAN. Neighborhoods include the point itself, matching the usual
    # |N_eps(p)| >= min_pts core rule.
    neighbor_count = np.zeros(m, dtype=np.int64)
    for off, block in _neighbor_blocks(pts, pts, metric, spec.eps_db):
        neighbor_count[off : off + block.shape[0]] = block.sum(axis=1)
    core_pos = np.flatnonzero(neighbor_count >= spec.min_pts)

    labels = np.full(m, -1, dtype=np.int64)
    if core_pos.shape[0]:
        core_labels = _threshold_components(pts[core_pos], metric, spec.eps_db)
        labels[core_pos] = core_labels
        # Border points adopt the cluster of their earliest-indexed core
        # neighbor; points with no core neighbor are noise.
        border_pos = np.flatnonzero(labels < 0)
        if border_pos.shape[0]:
            core_pts = pts[core_pos]
            for off, block in _neighbor_blocks(pts[border_pos], core_pts, metric, spec.eps_db):
                hit = block.any(axis=1)
                first = block.argmax(axis=1)  # first True = smallest core index
                rows = border_pos[off : off + block.shape[0]]
                labels[rows[hit]] = core_labels[first[hit]]
    clusters = [idx[labels == r] for r in np.unique(labels[labels >= 0])]
    clusters.sort(key=lambda c: int(c[0]))
    noise = idx[labels < 0]
    return clusters, noise


def build_mapper(
    cloud: PointCloud,
    lens,
    cover: IntervalCover,
    metric: Metric,
    spec: ClusteringSpec,
    min_shared: int = 1,
    graph_id: str | None = None,
    lens_name: str = "lens",
) -> CoverGraph:
    """Mapper graph: cluster each cube preimage, connect clusters sharing points.

    Vertex ids are "<cube ordinal>:<cluster ordinal>"; DBSCAN noise points
    become singleton vertices "<cube ordinal>:n<k>" so the graph still
    covers the cloud.
    """
    arr = _as_lens(lens)
    if arr.shape[0] != cloud.n_points:
        raise ValueError(
            f"lens has {arr.shape[0]} values for {cloud.n_points} points"
        )
    if arr.shape[1] != cover.dim:
        raise ValueError(f"lens dimension {arr.shape[1]} vs cover dimension {cover.dim}")
    vertices: list[Vertex] = []
    for cube_ord, cube in enumerate(cover.cubes):
        members = cover.members(arr, cube)
        if members.shape[0] == 0:
            continue
        clusters, noise = cluster(cloud, members, metric, spec)
        for j, c in enumerate(clusters):
            vertices.append(Vertex(id=f"{cube_ord}:{j}", covered=c))
        for t, p in enumerate(noise):
            vertices.append(Vertex(id=f"{cube_ord}:n{t}", covered=np.array([p])))
    edge_pos = edges_from_cover([v.covered for v in vertices], min_shared)
    edges = tuple((vertices[i].id, vertices[j].id, w) for i, j, w in edge_pos)
    params = {
        "algorithm": "mapper",
        "lens": lens_name,
        "resolution": [len(a) for a in cover.axes],
        "gain": cover.gain,
        "metric": metric.kind,
        "clustering": {"kind": spec.kind, "eps_db": spec.eps_db, "min_pts": spec.min_pts},
        "min_shared": min_shared,
        "n_points": cloud.n_points,
    }
    gid = graph_id if graph_id is not None else f"mapper:{cloud.id}:{lens_name}"
    return CoverGraph(
        id=gid, source_cloud_id=cloud.id, vertices=tuple(vertices), edges=edges, params=params
    )
