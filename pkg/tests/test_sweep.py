import numpy as np

from covergraph.datasets import generate_tictactoe
from covergraph.geometry import Metric, PointCloud
from covergraph.nerve import build_ball_mapper
from covergraph.nets import greedy_net
from covergraph.sweep import sweep, sweep_csv

EUC = Metric("euclidean")


def test_single_cell_matches_direct_build(rng):
    cloud = PointCloud(points=rng.normal(size=(30, 2)), id="c30")
    (row,) = sweep(cloud, EUC, [0.8], [5])
    net = greedy_net(cloud, EUC, 0.8, order_seed=5)
    graph = build_ball_mapper(cloud, EUC, net)
    assert row.n_vertices == len(graph.vertices)
    assert row.n_edges == len(graph.edges)
    assert row.n_components == len(graph.connected_components())
    assert row.n_isolated == sum(1 for v in graph.vertices if graph.degree(v.id) == 0)


def test_epsilon_above_diameter_gives_one_isolated_vertex(rng):
    cloud = PointCloud(points=rng.normal(size=(20, 2)), id="c20")
    (row,) = sweep(cloud, EUC, [1e6], [0])
    assert (row.n_vertices, row.n_edges, row.n_components, row.n_isolated) == (1, 0, 1, 1)


def test_tictactoe_component_count_stable_across_seeds():
    cloud, action = generate_tictactoe()
    rows = sweep(cloud, Metric("l1"), [2.5], [0, 1, 2, 3, 4], action=action)
    assert {r.n_components for r in rows} == {18}  # 1 win + 1 lose + 16 ties
    assert {r.n_isolated for r in rows} == {16}


def test_sweep_csv_format(rng):
    cloud = PointCloud(points=rng.normal(size=(10, 2)), id="c10")
    text = sweep_csv(sweep(cloud, EUC, [0.5, 1.0], [0]))
    lines = text.strip().split("\n")
    assert lines[0] == "epsilon,order_seed,vertices,edges,components,isolated"
    assert len(lines) == 3
