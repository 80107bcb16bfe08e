import json

import numpy as np
import pytest

from covergraph.cli import main
from covergraph.datasets import load_csv, mapping_demo, save_cloud_csv
from covergraph.relations import save_relation_pairs
from covergraph.serialize import load_graph, save_graph


def run(*argv):
    return main([str(a) for a in argv])


def test_gen_tictactoe_then_eqbm(tmp_path, capsys):
    boards = tmp_path / "ttt.csv"
    perms = tmp_path / "dihedral.csv"
    out = tmp_path / "eqbm.json"
    assert run("gen", "tictactoe", "--out", boards, "--action-out", perms) == 0
    assert run(
        "eqbm", "--cloud", boards, "--coloring", "outcome", "--cloud-id", "tictactoe",
        "--action", perms, "--metric", "l1", "--epsilon", "2.5", "--out", out,
    ) == 0
    graph, colorings = load_graph(out)
    assert len(graph.connected_components()) == 18
    assert {c.column for c in colorings} == {"outcome"}


def test_bm_deterministic_output(tmp_path, rng):
    cloud_path = tmp_path / "cloud.csv"
    from covergraph.geometry import PointCloud

    save_cloud_csv(PointCloud(points=rng.normal(size=(40, 3)), id="c"), cloud_path)
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["bm", "--cloud", cloud_path, "--cloud-id", "c", "--epsilon", "0.9",
            "--order-seed", "7", "--full"]
    assert run(*args, "--out", out1) == 0
    assert run(*args, "--out", out2) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_mapper_cli(tmp_path):
    t = np.linspace(0, 2 * np.pi, 48, endpoint=False)
    from covergraph.geometry import PointCloud

    cloud_path = tmp_path / "circle.csv"
    save_cloud_csv(PointCloud(points=np.column_stack([np.cos(t), np.sin(t)]), id="circ"),
                   cloud_path)
    out = tmp_path / "mapper.json"
    assert run(
        "mapper", "--cloud", cloud_path, "--cloud-id", "circ", "--lens-coords", "1",
        "--resolution", "5", "--gain", "0.25", "--cluster", "radius", "--eps-db", "0.4",
        "--out", out,
    ) == 0
    graph, _ = load_graph(out)
    assert len(graph.vertices) == 8 and len(graph.edges) == 8


def test_mobm_cli_identity(tmp_path):
    from covergraph.geometry import PointCloud

    t = np.linspace(0, 2 * np.pi, 30, endpoint=False)
    cloud_path = tmp_path / "ring.csv"
    save_cloud_csv(PointCloud(points=np.column_stack([np.cos(t), np.sin(t)]), id="ring"),
                   cloud_path)
    out = tmp_path / "mobm.json"
    image_out = tmp_path / "image.json"
    assert run(
        "mobm", "--domain-cloud", cloud_path, "--domain-cloud-id", "ring",
        "--codomain-cloud", cloud_path, "--codomain-cloud-id", "ring",
        "--relation", "identity", "--epsilon", "0.5", "--eps-db", "10",
        "--image-out", image_out, "--out", out,
    ) == 0
    graph, _ = load_graph(out)
    image, _ = load_graph(image_out)
    assert len(graph.vertices) == len(image.vertices)


def test_map_relation_cli_full_matrix(tmp_path):
    demo = mapping_demo()
    gx_path, gy_path = tmp_path / "gx.json", tmp_path / "gy.json"
    save_graph(demo.domain_graph, gx_path)
    save_graph(demo.codomain_graph, gy_path)
    rel_path = tmp_path / "rel.csv"
    save_relation_pairs(demo.relation, rel_path)
    out = tmp_path / "matrix.csv"
    assert run("map-relation", "--domain-graph", gx_path, "--codomain-graph", gy_path,
               "--relation", rel_path, "--out", out) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[1] == "0,1.000000,0.000000,0.000000"
    assert lines[4] == "3,1.000000,1.000000,1.000000"


def test_sweep_cli(tmp_path, capsys):
    from covergraph.geometry import PointCloud

    rng = np.random.default_rng(1)
    cloud_path = tmp_path / "c.csv"
    save_cloud_csv(PointCloud(points=rng.normal(size=(25, 2)), id="c"), cloud_path)
    out = tmp_path / "sweep.csv"
    assert run("sweep", "--cloud", cloud_path, "--epsilons", "0.5,1.0", "--seeds", "0,1",
               "--out", out) == 0
    assert len(out.read_text().strip().split("\n")) == 5


def test_knots_vectorize_and_mirror_cli(tmp_path):
    from covergraph.knots import trefoil_and_unknot, write_knot_csv

    knot_path = tmp_path / "jones.csv"
    write_knot_csv(trefoil_and_unknot("jones"), knot_path)
    out = tmp_path / "cloud.csv"
    assert run("knots", "vectorize", "--kind", "jones", "--in", knot_path, "--out", out,
               "--symmetric") == 0
    cloud = load_csv(out, colorings=["signature", "crossings"])
    assert cloud.dim == 9
    assert cloud.points[1].tolist() == [0, 0, 0, 0, 0, 1, 0, 1, -1]

    mirrored = tmp_path / "mirrored.csv"
    perms = tmp_path / "pairing.csv"
    assert run("knots", "mirror", "--kind", "jones", "--in", knot_path, "--out", mirrored,
               "--action-out", perms) == 0
    aug = load_csv(mirrored, colorings=["signature", "crossings"])
    assert aug.n_points == 3
    assert aug.column("signature").tolist() == [0.0, -2.0, 2.0]


def test_validation_errors_exit_2(tmp_path):
    missing_col = tmp_path / "c.csv"
    missing_col.write_text("a,b\n1,2\n")
    out = tmp_path / "x.json"
    assert run("bm", "--cloud", missing_col, "--coloring", "nope",
               "--epsilon", "1.0", "--out", out) == 2
    bad_eps = run("bm", "--cloud", missing_col, "--epsilon", "-1.0", "--out", out)
    assert bad_eps == 2


def test_io_errors_exit_1(tmp_path):
    out = tmp_path / "x.json"
    assert run("bm", "--cloud", tmp_path / "absent.csv", "--epsilon", "1.0",
               "--out", out) == 1


def test_gen_cylinder_cli(tmp_path):
    c_path, p_path, r_path = (tmp_path / n for n in ("c.csv", "p.csv", "pi.csv"))
    assert run("gen", "cylinder", "--n-circle", "40", "--n-interval", "5", "--seed", "2",
               "--out-circle", c_path, "--out-product", p_path, "--out-relation", r_path) == 0
    circle = load_csv(c_path, colorings=["alpha"])
    product = load_csv(p_path, colorings=["alpha", "height"])
    assert circle.n_points == 40 and circle.dim == 7
    assert product.n_points == 200 and product.dim == 8
    pairs = np.loadtxt(r_path, delimiter=",", skiprows=1, dtype=np.int64)
    assert pairs.shape == (200, 2)
