"""Acceptance criteria, one test per criterion, at their stated tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS line per
criterion; any assertion failure marks that criterion FAILED.
"""
import itertools
import json
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from covergraph.datasets import generate_cylinder, generate_tictactoe, mapping_demo
from covergraph.geometry import GroupAction, Metric, PointCloud, pairwise_distances
from covergraph.knots import augment_mirrors, mirror_vectors, trefoil_and_unknot, vectorize
from covergraph.mapper import ClusteringSpec, cluster
from covergraph.mobm import build_mobm, cluster_split_counts, image_ball_mapper
from covergraph.nerve import build_ball_mapper, color, induce_action
from covergraph.nets import equivariant_net, greedy_net
from covergraph.relations import full_matrix, map_selection
from covergraph.serialize import export

L1 = Metric("l1")
EUC = Metric("euclidean")

CIRCLE_SEED = 0
EPSILON_GRID = np.geomspace(0.05, 2.0, 40)  # geometric sweep grid for the circle


def announce(name):
    print(f"\nACCEPTANCE {name}: PASS")


@pytest.fixture(scope="module")
def tictactoe():
    return generate_tictactoe()


@pytest.fixture(scope="module")
def tictactoe_eqbm(tictactoe):
    cloud, action = tictactoe
    net = equivariant_net(cloud, L1, 2.5, action)
    return build_ball_mapper(cloud, L1, net)


@pytest.fixture(scope="module")
def circle_cycle():
    """First epsilon on the geometric grid whose Ball Mapper is one cycle."""
    circle, _, _ = generate_cylinder(seed=CIRCLE_SEED)
    for eps in EPSILON_GRID:
        net = greedy_net(circle, EUC, float(eps))
        graph = build_ball_mapper(circle, EUC, net)
        if (
            len(graph.vertices) >= 8
            and len(graph.edges) == len(graph.vertices)
            and all(graph.degree(v.id) == 2 for v in graph.vertices)
            and len(graph.connected_components()) == 1
        ):
            return float(eps), graph
    return None, None


def test_tictactoe_separation(tictactoe, tictactoe_eqbm):
    start = time.perf_counter()
    cloud, action = tictactoe
    graph = tictactoe_eqbm
    outcome = cloud.column("outcome")

    # (a) every connected component is outcome-pure
    components = graph.connected_components()
    for comp in components:
        values = np.unique(
            np.concatenate([outcome[graph.vertex(v).covered] for v in comp])
        )
        assert values.size == 1, f"component {comp[:4]}... mixes outcomes {values}"

    # (b) exactly 16 isolated single-orbit tie components
    isolated_ties = [
        comp
        for comp in components
        if len(comp) == 1
        and graph.degree(comp[0]) == 0
        and np.all(outcome[graph.vertex(comp[0]).covered] == 0.0)
    ]
    assert len(isolated_ties) == 16
    for comp in isolated_ties:
        vertex = graph.vertex(comp[0])
        assert vertex.size == 1  # one board per tie cluster
        assert len(action.orbit(int(vertex.covered[0]))) <= 8

    # (c) the 8 induced automorphisms preserve edges and the outcome coloring
    autos = induce_action(graph, action)  # edge preservation verified inside
    assert len(autos) == 8
    coloring = color(graph, cloud, "outcome")
    for auto in autos:
        for vid in graph.vertex_ids:
            assert coloring.values[auto(vid)] == coloring.values[vid]

    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"took {elapsed:.1f}s, budget 5s"
    announce("tictactoe-separation")


def test_tictactoe_distance_bounds(tictactoe):
    start = time.perf_counter()
    cloud, _ = tictactoe
    outcome = cloud.column("outcome")
    groups = {name: cloud.points[outcome == value]
              for name, value in (("win", 1.0), ("lose", -1.0), ("tie", 0.0))}

    def min_distance(a, b, same=False):
        d = pairwise_distances(L1, a, b)
        if same:
            np.fill_diagonal(d, np.inf)
        return float(d.min())

    assert min_distance(groups["win"], groups["lose"]) >= 3.0
    assert min_distance(groups["tie"], groups["tie"], same=True) == 4.0
    assert min_distance(groups["tie"], groups["win"]) >= 4.0
    assert min_distance(groups["tie"], groups["lose"]) >= 3.0
    # the bounds are tight: these are the exact minima
    assert min_distance(groups["win"], groups["lose"]) == 3.0
    assert min_distance(groups["tie"], groups["win"]) == 4.0
    assert min_distance(groups["tie"], groups["lose"]) == 3.0

    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"took {elapsed:.1f}s, budget 10s"
    announce("tictactoe-distance-bounds")


def test_circle_cycle(circle_cycle):
    start = time.perf_counter()
    eps, graph = circle_cycle
    assert eps is not None, "no epsilon on the grid produced a single cycle"
    assert len(graph.vertices) >= 8
    assert len(graph.edges) == len(graph.vertices)
    assert all(graph.degree(v.id) == 2 for v in graph.vertices)
    assert len(graph.connected_components()) == 1
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"took {elapsed:.1f}s, budget 10s"
    announce(f"circle-cycle (epsilon={eps:.4f}, |V|={len(graph.vertices)})")


def test_cylinder_mobm_single_cycle(circle_cycle):
    start = time.perf_counter()
    eps, _ = circle_cycle
    assert eps is not None
    circle, product, projection = generate_cylinder(seed=CIRCLE_SEED)
    image = image_ball_mapper(circle, projection, EUC, eps)
    mobm = build_mobm(
        product, circle, projection, EUC, eps, EUC,
        ClusteringSpec(kind="radius", eps_db=0.6),
        image_graph=image,
    )
    counts = cluster_split_counts(mobm, image)
    assert set(counts.values()) == {1}
    assert len(mobm.vertices) == len(image.vertices)
    assert len(mobm.edges) == len(mobm.vertices)
    assert all(mobm.degree(v.id) == 2 for v in mobm.vertices)
    assert len(mobm.connected_components()) == 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"took {elapsed:.1f}s, budget 60s"
    announce(f"cylinder-mobm ({elapsed:.1f}s at 50000 points)")


def test_fraction_matrix_fixture():
    demo = mapping_demo()
    matrix = full_matrix(demo.domain_graph, demo.codomain_graph, demo.relation)
    assert matrix.rows == (
        (Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1)),
        (Fraction(1), Fraction(1), Fraction(1)),
    )
    announce("fraction-matrix-fixture")


def test_table1_vectorization_and_mirrors():
    alexander = vectorize(trefoil_and_unknot("alexander"), span=(-2, 2))
    assert alexander.points[1].tolist() == [0, 1, -1, 1, 0]

    jones = vectorize(trefoil_and_unknot("jones"), symmetric=True)
    assert jones.points[1].tolist() == [0, 0, 0, 0, 0, 1, 0, 1, -1]

    augmented, action = augment_mirrors(jones)
    # reversal involution on every row
    assert np.array_equal(
        mirror_vectors(mirror_vectors(augmented.points, "jones"), "jones"),
        augmented.points,
    )
    # pairing permutation negates the signature column
    sigma = augmented.column("signature")
    pairing = action.elements[1]
    assert np.array_equal(sigma[pairing], -sigma)
    announce("table1-vectorization")


def _random_cloud(rng):
    n = int(rng.integers(5, 201))
    dim = int(rng.integers(1, 7))
    return PointCloud(points=rng.normal(size=(n, dim)), id=f"oracle-{n}-{dim}")


def test_oracle_suites():
    start = time.perf_counter()
    rng = np.random.default_rng(1234)

    # (a) + (b): nerve brute-force equivalence, net coverage and separation
    mismatches = 0
    for _ in range(100):
        cloud = _random_cloud(rng)
        metric = (EUC, L1)[int(rng.integers(2))]
        eps = float(rng.uniform(0.3, 2.0))
        order = rng.permutation(cloud.n_points)
        net = greedy_net(cloud, metric, eps, order=order)
        dists = pairwise_distances(metric, cloud.points, cloud.points[list(net.landmarks)])
        assert dists.min(axis=1).max() <= eps  # coverage
        if len(net) > 1:
            marks = cloud.points[list(net.landmarks)]
            pd = pairwise_distances(metric, marks, marks)
            np.fill_diagonal(pd, np.inf)
            assert pd.min() > eps  # Algorithm-1 separation
        graph = build_ball_mapper(cloud, metric, net)
        covered = [set(v.covered.tolist()) for v in graph.vertices]
        brute = sorted(
            (i, j, len(covered[i] & covered[j]))
            for i, j in itertools.combinations(range(len(covered)), 2)
            if covered[i] & covered[j]
        )
        pos = {vid: k for k, vid in enumerate(graph.vertex_ids)}
        engine = sorted((pos[u], pos[v], w) for u, v, w in graph.edges)
        mismatches += engine != brute
    assert mismatches == 0

    # (c) DBSCAN(min_pts=1) == radius-components on 100 instances
    for _ in range(100):
        cloud = _random_cloud(rng)
        eps_db = float(rng.uniform(0.2, 1.5))
        a = cluster(cloud, range(cloud.n_points), EUC, ClusteringSpec("radius", eps_db))[0]
        b = cluster(cloud, range(cloud.n_points), EUC,
                    ClusteringSpec("dbscan", eps_db, min_pts=1))[0]
        assert [c.tolist() for c in a] == [c.tolist() for c in b]

    # (d) equivariance automorphism property on 50 mirrored clouds
    for _ in range(50):
        half = int(rng.integers(4, 101))
        base = rng.normal(size=(half, int(rng.integers(2, 6))))
        cloud = PointCloud(points=np.vstack([base, base[:, ::-1]]), id="mirrored")
        perm = np.concatenate([np.arange(half) + half, np.arange(half)])
        action = GroupAction.from_permutations([perm], cloud_id="mirrored")
        eps = float(rng.uniform(0.5, 2.0))
        net = equivariant_net(cloud, EUC, eps, action, order=rng.permutation(2 * half))
        marks = set(net.landmarks)
        assert {int(perm[i]) for i in marks} == marks
        graph = build_ball_mapper(cloud, EUC, net)
        autos = induce_action(graph, action)  # raises if not an automorphism
        assert len(autos) == action.order

    # (e) selection-growth monotonicity on 50 instances
    for _ in range(50):
        xs = PointCloud(points=rng.normal(size=(int(rng.integers(10, 60)), 2)), id="mx")
        ys = PointCloud(points=rng.normal(size=(int(rng.integers(10, 40)), 2)), id="my")
        gx = build_ball_mapper(xs, EUC, greedy_net(xs, EUC, float(rng.uniform(0.5, 1.2))))
        gy = build_ball_mapper(ys, EUC, greedy_net(ys, EUC, float(rng.uniform(0.5, 1.2))))
        pairs = np.column_stack([
            rng.integers(xs.n_points, size=60), rng.integers(ys.n_points, size=60)
        ])
        from covergraph.relations import relation_from_pairs

        rel = relation_from_pairs(xs, ys, pairs)
        ids = gx.vertex_ids
        small = list(rng.choice(ids, size=int(rng.integers(1, len(ids) + 1)), replace=False))
        rest = [v for v in ids if v not in small]
        extra = list(rng.choice(rest, size=int(rng.integers(0, len(rest) + 1)),
                                replace=False)) if rest else []
        f_small = map_selection(gx, gy, rel, small).fractions
        f_big = map_selection(gx, gy, rel, small + extra).fractions
        assert all(f_small[w] <= f_big[w] for w in gy.vertex_ids)

    elapsed = time.perf_counter() - start
    assert elapsed < 120.0, f"took {elapsed:.1f}s, budget 120s"
    announce(f"oracle-suites ({elapsed:.1f}s)")


_DETERMINISM_SCRIPT = """
import sys
import numpy as np
from covergraph.datasets import generate_cylinder, generate_tictactoe, mapping_demo
from covergraph.geometry import Metric
from covergraph.nerve import build_ball_mapper, color
from covergraph.nets import equivariant_net, greedy_net
from covergraph.relations import full_matrix
from covergraph.serialize import export

workers = int(sys.argv[1])
out = []
cloud, action = generate_tictactoe()
net = equivariant_net(cloud, Metric("l1"), 2.5, action)
graph = build_ball_mapper(cloud, Metric("l1"), net, workers=workers)
out.append(export(graph, [color(graph, cloud, "outcome")], fmt="json"))
circle, _, _ = generate_cylinder(n_circle=200, n_interval=10, seed=7)
bm = build_ball_mapper(circle, Metric("euclidean"),
                       greedy_net(circle, Metric("euclidean"), 0.5, order_seed=3),
                       workers=workers)
out.append(export(bm, [color(bm, circle, "alpha")], fmt="json"))
demo = mapping_demo()
out.append(full_matrix(demo.domain_graph, demo.codomain_graph, demo.relation).to_csv().encode())
sys.stdout.buffer.write(b"".join(out))
"""


def test_determinism_across_runs_and_threads(tmp_path):
    blobs = {}
    for run, (workers, hash_seed) in enumerate(
        ((1, "0"), (4, "1"), (1, "31337"), (4, "2"))
    ):
        result = subprocess.run(
            [sys.executable, "-c", _DETERMINISM_SCRIPT, str(workers)],
            capture_output=True,
            env={"PYTHONHASHSEED": hash_seed, "PATH": "/usr/bin:/bin"},
        )
        assert result.returncode == 0, result.stderr.decode()
        blobs[run] = result.stdout
    assert blobs[0] == blobs[1] == blobs[2] == blobs[3]
    announce("determinism (1 and 4 workers, varied hash seeds)")
