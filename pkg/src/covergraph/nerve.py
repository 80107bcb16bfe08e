"""Cover graphs: the 1-dimensional nerve of a cover of a point cloud.

One vertex per cover element (for Ball Mapper: per landmark ball), an
undirected edge wherever two elements share at least `min_shared` points,
edge weight = number of shared points. Vertices keep their full covered
index lists; everything downstream (colorings, relation colorings, MoBM
pullbacks, induced group actions) reads them.
"""
from __future__ import annotations

import math
from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from .errors import CoveringConditionViolated, GraphCloudMismatch, StaleNet
from .geometry import GroupAction, Metric, PointCloud, distances, _frozen
from .nets import EpsNet


@dataclass(frozen=True, eq=False)
class Vertex:
    id: str
    covered: np.ndarray  # sorted point indices, non-empty
    landmark: int | None = None

    def __post_init__(self):
        idx = np.unique(np.asarray(self.covered, dtype=np.int64))
        if idx.shape[0] == 0:
            raise ValueError(f"vertex {self.id!r} covers no points")
        object.__setattr__(self, "covered", _frozen(idx))

    @property
    def size(self) -> int:
        return int(self.covered.shape[0])


@dataclass(frozen=True, eq=False)
class CoverGraph:
    """Immutable nerve graph over a source cloud.

    `edges` are (u, v, weight) triples with u, v vertex ids, u preceding v
    in vertex order; `params` records the full construction provenance.
    """

    id: str
    source_cloud_id: str
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str, int], ...]
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "params", dict(self.params))

    @cached_property
    def _by_id(self) -> dict[str, Vertex]:
        table = {v.id: v for v in self.vertices}
        if len(table) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        return table

    def vertex(self, vertex_id: str) -> Vertex:
        return self._by_id[vertex_id]

    @property
    def vertex_ids(self) -> list[str]:
        return [v.id for v in self.vertices]

    @cached_property
    def adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v.id: [] for v in self.vertices}
        for u, v, _w in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree(self, vertex_id: str) -> int:
        return len(self.adjacency[vertex_id])

    def connected_components(self) -> list[list[str]]:
        """Components as vertex-id lists, in vertex order (deterministic)."""
        seen: set[str] = set()
        out: list[list[str]] = []
        for v in self.vertices:
            if v.id in seen:
                continue
            comp = []
            stack = [v.id]
            seen.add(v.id)
            while stack:
                cur = stack.pop()
                comp.append(cur)
                for nxt in self.adjacency[cur]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            out.append(sorted(comp, key=self._vertex_pos))
        return out

    def _vertex_pos(self, vertex_id: str) -> int:
        return self._positions[vertex_id]

    @cached_property
    def _positions(self) -> dict[str, int]:
        return {v.id: i for i, v in enumerate(self.vertices)}

    @property
    def covered_points(self) -> np.ndarray:
        """Union of all covered indices (sorted)."""
        if not self.vertices:
            return np.empty(0, dtype=np.int64)
        return np.unique(np.concatenate([v.covered for v in self.vertices]))

    def equals(self, other: "CoverGraph") -> bool:
        if (
            self.id != other.id
            or self.source_cloud_id != other.source_cloud_id
            or self.edges != other.edges
            or self.params != other.params
            or len(self.vertices) != len(other.vertices)
        ):
            return False
        return all(
            a.id == b.id
            and a.landmark == b.landmark
            and np.array_equal(a.covered, b.covered)
            for a, b in zip(self.vertices, other.vertices)
        )


def edges_from_cover(covered: list[np.ndarray], min_shared: int = 1) -> list[tuple[int, int, int]]:
    """Shared-point edges between cover elements, as position triples.

    Returns (i, j, weight) with i < j, sorted, weight = |covered_i n
    covered_j|, keeping pairs with weight >= min_shared. Used by every
    graph builder; the tests check it against a brute-force double loop.
    """
    if min_shared < 1:
        raise ValueError("min_shared must be >= 1")
    if not covered:
        return []
    points = np.concatenate(covered)
    owners = np.repeat(np.arange(len(covered)), [c.shape[0] for c in covered])
    by_point = np.argsort(points, kind="stable")
    points = points[by_point]
    owners = owners[by_point]
    counts: dict[tuple[int, int], int] = {}
    start = 0
    n = points.shape[0]
    while start < n:
        stop = start
        while stop < n and points[stop] == points[start]:
            stop += 1
        group = np.sort(owners[start:stop])
        for a in range(group.shape[0]):
            for b in range(a + 1, group.shape[0]):
                key = (int(group[a]), int(group[b]))
                counts[key] = counts.get(key, 0) + 1
        start = stop
    return sorted(
        (u, v, w) for (u, v), w in counts.items() if w >= min_shared
    )


def _ball_memberships(
    cloud: PointCloud, metric: Metric, landmarks: tuple[int, ...], eps: float, workers: int
) -> list[np.ndarray]:
    def one(l: int) -> np.ndarray:
        return np.flatnonzero(distances(metric, cloud.points, cloud.points[l]) <= eps)

    if workers <= 1 or len(landmarks) < 2:
        return [one(l) for l in landmarks]
    # Parallel distance evaluation; assembly stays in landmark order so the
    # result is identical to the serial build.
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, landmarks))


def build_ball_mapper(
    cloud: PointCloud,
    metric: Metric,
    net: EpsNet,
    min_shared: int = 1,
    workers: int = 1,
    graph_id: str | None = None,
) -> CoverGraph:
    """Ball Mapper graph: one vertex per landmark's closed epsilon-ball.

    Vertex ids are landmark ordinals as strings ("0", "1", ...). Raises
    StaleNet when the net was built for a different cloud or metric.
    """
    net.check_cloud(cloud, metric)
    covered = _ball_memberships(cloud, metric, net.landmarks, net.epsilon, workers)
    vertices = tuple(
        Vertex(id=str(pos), covered=idx, landmark=l)
        for pos, (l, idx) in enumerate(zip(net.landmarks, covered))
    )
    edge_pos = edges_from_cover([v.covered for v in vertices], min_shared)
    edges = tuple((vertices[i].id, vertices[j].id, w) for i, j, w in edge_pos)
    params = {
        "algorithm": f"ball_mapper/{net.algorithm}",
        "epsilon": net.epsilon,
        "metric": metric.kind,
        "order_seed": net.order_seed,
        "min_shared": min_shared,
        "n_points": cloud.n_points,
    }
    gid = graph_id if graph_id is not None else f"bm:{cloud.id}:eps={net.epsilon:g}"
    return CoverGraph(
        id=gid,
        source_cloud_id=cloud.id,
        vertices=vertices,
        edges=edges,
        params=params,
    )


@dataclass(frozen=True)
class VertexColoring:
    """Induced function on a graph: per-vertex mean of a point column, plus
    the population standard deviation as the variation measure."""

    graph_id: str
    column: str
    values: Mapping[str, float]
    variation: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "values", dict(self.values))
        object.__setattr__(self, "variation", dict(self.variation))


def color(graph: CoverGraph, cloud: PointCloud, column: str) -> VertexColoring:
    """Mean and population std of `column` over each vertex's covered points.

    Sums use math.fsum (exactly rounded), so the result is independent of
    point order and negating the column negates every mean bit-exactly.
    """
    if graph.source_cloud_id != cloud.id:
        raise GraphCloudMismatch(
            f"graph {graph.id!r} was built on cloud {graph.source_cloud_id!r}, got {cloud.id!r}"
        )
    col = cloud.column(column)
    values: dict[str, float] = {}
    variation: dict[str, float] = {}
    for v in graph.vertices:
        vals = col[v.covered]
        mean = math.fsum(vals) / vals.shape[0]
        var = math.fsum((x - mean) ** 2 for x in vals) / vals.shape[0]
        values[v.id] = mean
        variation[v.id] = math.sqrt(var)
    return VertexColoring(graph_id=graph.id, column=column, values=values, variation=variation)


@dataclass(frozen=True)
class InducedAutomorphism:
    """Graph automorphism induced by one group element (by its position in
    the action's element enumeration)."""

    element_id: int
    vertex_map: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", dict(self.vertex_map))

    def __call__(self, vertex_id: str) -> str:
        return self.vertex_map[vertex_id]


def induce_action(graph: CoverGraph, action: GroupAction) -> list[InducedAutomorphism]:
    """Induced action on vertices: v(l) -> v(g(l)) for each group element.

    Verifies the covering condition — covered(g^(v)) must equal
    g(covered(v)) exactly — and edge preservation, raising
    CoveringConditionViolated otherwise (the net was not equivariant).
    """
    if action.cloud_id != graph.source_cloud_id:
        raise GraphCloudMismatch(
            f"action on cloud {action.cloud_id!r} vs graph over {graph.source_cloud_id!r}"
        )
    by_landmark: dict[int, Vertex] = {}
    for v in graph.vertices:
        if v.landmark is None:
            raise CoveringConditionViolated(
                f"vertex {v.id!r} has no landmark; induced actions need a Ball Mapper graph"
            )
        by_landmark[v.landmark] = v
    edge_set = {(u, v) for u, v, _w in graph.edges}

    def has_edge(a: str, b: str) -> bool:
        return (a, b) in edge_set or (b, a) in edge_set

    out = []
    for elem_id, g in enumerate(action.elements):
        vmap: dict[str, str] = {}
        for v in graph.vertices:
            target_landmark = int(g[v.landmark])
            target = by_landmark.get(target_landmark)
            if target is None:
                raise CoveringConditionViolated(
                    f"image landmark {target_landmark} of vertex {v.id!r} is not a landmark"
                )
            image_points = np.sort(g[v.covered])
            if not np.array_equal(image_points, target.covered):
                raise CoveringConditionViolated(
                    f"element {elem_id}: images of points covered by {v.id!r} do not fill "
                    f"ball {target.id!r} exactly"
                )
            vmap[v.id] = target.id
        for u, v, w in graph.edges:
            if not has_edge(vmap[u], vmap[v]):
                raise CoveringConditionViolated(
                    f"element {elem_id} does not preserve edge ({u}, {v})"
                )
        out.append(InducedAutomorphism(element_id=elem_id, vertex_map=vmap))
    return out
