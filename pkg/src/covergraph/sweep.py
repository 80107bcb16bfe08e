"""Stability sweeps: rebuild a Ball Mapper over a parameter grid.

Graphs should be inspected for a range of radii and input permutations;
this harness reports the structural diagnostics (vertex, edge, component,
isolated-vertex counts) for every (epsilon, seed) pair.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .geometry import GroupAction, Metric, PointCloud
from .nerve import build_ball_mapper
from .nets import equivariant_net, greedy_net


@dataclass(frozen=True)
class SweepRow:
    epsilon: float
    order_seed: int
    n_vertices: int
    n_edges: int
    n_components: int
    n_isolated: int


def sweep(
    cloud: PointCloud,
    metric: Metric,
    epsilons,
    seeds,
    action: GroupAction | None = None,
    min_shared: int = 1,
) -> list[SweepRow]:
    if not len(list(epsilons)):
        raise ValueError("epsilon list must be non-empty")
    rows = []
    for eps in epsilons:
        for seed in seeds:
            if action is None:
                net = greedy_net(cloud, metric, eps, order_seed=int(seed))
            else:
                net = equivariant_net(cloud, metric, eps, action, order_seed=int(seed))
            graph = build_ball_mapper(cloud, metric, net, min_shared=min_shared)
            rows.append(
                SweepRow(
                    epsilon=float(eps),
                    order_seed=int(seed),
                    n_vertices=len(graph.vertices),
                    n_edges=len(graph.edges),
                    n_components=len(graph.connected_components()),
                    n_isolated=sum(1 for v in graph.vertices if graph.degree(v.id) == 0),
                )
            )
    return rows


def sweep_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["epsilon", "order_seed", "vertices", "edges", "components", "isolated"])
    for r in rows:
        writer.writerow(
            [f"{r.epsilon:g}", r.order_seed, r.n_vertices, r.n_edges, r.n_components, r.n_isolated]
        )
    return buf.getvalue()
