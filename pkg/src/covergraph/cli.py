"""Command-line interface.

Exit codes: 0 success, 2 validation/domain errors, 1 I/O errors.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import datasets, knots, serialize
from .errors import CoverGraphError
from .geometry import Metric, PointCloud
from .mapper import ClusteringSpec, build_mapper, cover_range
from .mobm import build_mobm, image_ball_mapper
from .nerve import build_ball_mapper, color
from .nets import equivariant_net, greedy_net
from .relations import (
    Relation,
    full_matrix,
    identity_relation,
    load_relation_pairs,
    map_selection,
    relation_by_key,
    relation_from_pairs,
    save_relation_pairs,
)
from .service import GraphStore, demo_store, serve
from .sweep import sweep, sweep_csv


def _add_cloud_args(parser: argparse.ArgumentParser, prefix: str = "") -> None:
    dash = f"--{prefix}-" if prefix else "--"
    parser.add_argument(f"{dash}cloud", required=True, help="numeric CSV point cloud")
    parser.add_argument(
        f"{dash}coloring", action="append", default=[], help="column used for coloring (repeatable)"
    )
    parser.add_argument(f"{dash}key", default=None, help="join-key column")
    parser.add_argument(f"{dash}manifest", default=None, help="JSON column-role manifest")
    parser.add_argument(f"{dash}cloud-id", default=None, help="identifier override")


def _load_cloud(args, prefix: str = "") -> PointCloud:
    pre = f"{prefix}_" if prefix else ""
    return datasets.load_csv(
        getattr(args, f"{pre}cloud"),
        cloud_id=getattr(args, f"{pre}cloud_id"),
        colorings=getattr(args, f"{pre}coloring"),
        key=getattr(args, f"{pre}key"),
        manifest=getattr(args, f"{pre}manifest"),
    )


def _add_common_graph_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--metric", default="euclidean", help="euclidean | l1 | cosine")
    parser.add_argument("--min-shared", type=int, default=1, help="minimum shared points per edge")
    parser.add_argument("--order-seed", type=int, default=None, help="seeded scan permutation")
    parser.add_argument("--out", required=True, help="output path")
    parser.add_argument("--format", default="json", choices=list(serialize.FORMATS))
    parser.add_argument("--full", action="store_true", help="embed covered index lists")
    parser.add_argument("--graph-id", default=None)
    parser.add_argument("--workers", type=int, default=1)


def _add_cluster_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cluster", default="radius", choices=["radius", "dbscan"])
    parser.add_argument("--eps-db", type=float, required=True, help="clustering radius")
    parser.add_argument("--min-pts", type=int, default=1)


def _write_graph(args, graph, cloud) -> None:
    colorings = [color(graph, cloud, name) for name in sorted(cloud.columns)]
    full = args.full or sum(v.size for v in graph.vertices) <= 50_000
    serialize.save_graph(graph, args.out, colorings, fmt=args.format, full=full)
    print(
        f"{graph.id}: {len(graph.vertices)} vertices, {len(graph.edges)} edges, "
        f"{len(graph.connected_components())} components -> {args.out}"
    )


def _cmd_bm(args) -> int:
    cloud = _load_cloud(args)
    metric = Metric(args.metric)
    net = greedy_net(cloud, metric, args.epsilon, order_seed=args.order_seed)
    graph = build_ball_mapper(
        cloud, metric, net, min_shared=args.min_shared, workers=args.workers,
        graph_id=args.graph_id,
    )
    _write_graph(args, graph, cloud)
    return 0


def _cmd_eqbm(args) -> int:
    cloud = _load_cloud(args)
    metric = Metric(args.metric)
    action = datasets.load_action_csv(args.action, cloud)
    net = equivariant_net(cloud, metric, args.epsilon, action, order_seed=args.order_seed)
    graph = build_ball_mapper(
        cloud, metric, net, min_shared=args.min_shared, workers=args.workers,
        graph_id=args.graph_id,
    )
    _write_graph(args, graph, cloud)
    return 0


def _cmd_mapper(args) -> int:
    cloud = _load_cloud(args)
    metric = Metric(args.metric)
    if args.lens:
        names = args.lens.split(",")
        lens = np.column_stack([cloud.column(n) for n in names])
        lens_name = ",".join(names)
    else:
        coords = [int(c) for c in args.lens_coords.split(",")]
        lens = cloud.points[:, coords]
        lens_name = f"coords[{args.lens_coords}]"
    ks = [int(k) for k in str(args.resolution).split(",")]
    cover = cover_range(lens, ks if len(ks) > 1 else ks[0], args.gain)
    spec = ClusteringSpec(kind=args.cluster, eps_db=args.eps_db, min_pts=args.min_pts)
    graph = build_mapper(
        cloud, lens, cover, metric, spec, min_shared=args.min_shared,
        graph_id=args.graph_id, lens_name=lens_name,
    )
    _write_graph(args, graph, cloud)
    return 0


def _resolve_relation(spec: str, domain: PointCloud, codomain: PointCloud) -> Relation:
    if spec == "identity":
        if domain.id != codomain.id and domain.n_points != codomain.n_points:
            raise CoverGraphError("identity relation needs clouds of equal size")
        rel = identity_relation(domain)
        return Relation(
            domain_cloud_id=domain.id, codomain_cloud_id=codomain.id, pairs=rel.pairs
        )
    if spec.startswith("by-key:"):
        return relation_by_key(domain, codomain, spec.split(":", 1)[1])
    return relation_from_pairs(domain, codomain, load_relation_pairs(spec))


def _cmd_mobm(args) -> int:
    domain = _load_cloud(args, "domain")
    codomain = _load_cloud(args, "codomain")
    rel = _resolve_relation(args.relation, domain, codomain)
    spec = ClusteringSpec(kind=args.cluster, eps_db=args.eps_db, min_pts=args.min_pts)
    image = image_ball_mapper(
        codomain, rel, Metric(args.metric_codomain), args.epsilon, order_seed=args.order_seed
    )
    graph = build_mobm(
        domain,
        codomain,
        rel,
        Metric(args.metric_codomain),
        args.epsilon,
        Metric(args.metric_domain),
        spec,
        order_seed=args.order_seed,
        min_shared=args.min_shared,
        image_graph=image,
        graph_id=args.graph_id,
    )
    if args.image_out:
        image_colorings = [color(image, codomain, n) for n in sorted(codomain.columns)]
        serialize.save_graph(image, args.image_out, image_colorings)
    _write_graph(args, graph, domain)
    return 0


def _cmd_map_relation(args) -> int:
    gx, _ = serialize.load_graph(args.domain_graph)
    gy, _ = serialize.load_graph(args.codomain_graph)
    pairs = load_relation_pairs(args.relation)
    rel = Relation(
        domain_cloud_id=gx.source_cloud_id, codomain_cloud_id=gy.source_cloud_id, pairs=pairs
    )
    if args.select is not None:
        chosen = [s for s in args.select.split(",") if s]
        coloring = map_selection(gx, gy, rel, chosen)
        rows = sorted(coloring.formatted().items())
        text = "\n".join(f"{k},{v}" for k, v in rows) + "\n"
    else:
        text = full_matrix(gx, gy, rel).to_csv()
    with open(args.out, "w") as fh:
        fh.write(text)
    print(f"wrote {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    cloud = _load_cloud(args)
    metric = Metric(args.metric)
    action = datasets.load_action_csv(args.action, cloud) if args.action else None
    epsilons = [float(e) for e in args.epsilons.split(",")]
    seeds = [int(s) for s in args.seeds.split(",")]
    rows = sweep(cloud, metric, epsilons, seeds, action=action, min_shared=args.min_shared)
    text = sweep_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    print(text, end="")
    return 0


def _cmd_serve(args) -> int:
    if args.fixture == "mapping-demo":
        store = demo_store()
    else:
        store = GraphStore()
    for path in args.graph:
        graph, colorings = serialize.load_graph(path)
        store.add_graph(graph, {c.column: c for c in colorings})
    for spec in args.relation:
        name, rest = spec.split("=", 1)
        path, clouds = rest.split("@", 1)
        domain_id, codomain_id = clouds.split(":", 1)
        store.add_relation(
            name,
            Relation(
                domain_cloud_id=domain_id,
                codomain_cloud_id=codomain_id,
                pairs=load_relation_pairs(path),
            ),
        )
    serve(store, host=args.host, port=args.port)
    return 0


def _cmd_gen_tictactoe(args) -> int:
    cloud, action = datasets.generate_tictactoe()
    datasets.save_cloud_csv(cloud, args.out)
    if args.action_out:
        datasets.save_action_csv(action, args.action_out)
    print(f"{cloud.n_points} boards -> {args.out}")
    return 0


def _cmd_gen_cylinder(args) -> int:
    circle, product, projection = datasets.generate_cylinder(
        n_circle=args.n_circle, n_interval=args.n_interval, seed=args.seed
    )
    datasets.save_cloud_csv(circle, args.out_circle)
    datasets.save_cloud_csv(product, args.out_product)
    save_relation_pairs(projection, args.out_relation)
    print(
        f"|C| = {circle.n_points} -> {args.out_circle}; "
        f"|CxL| = {product.n_points} -> {args.out_product}"
    )
    return 0


def _parse_span(text):
    if text is None:
        return None
    lo, hi = text.split(":")
    return int(lo), int(hi)


def _cmd_knots_vectorize(args) -> int:
    records = knots.read_knot_csv(args.infile, args.kind)
    if args.kind == "homflypt":
        span_a, span_z = _parse_span(args.span_a), _parse_span(args.span_z)
        span = None if span_a is None and span_z is None else (span_a, span_z)
    else:
        span = _parse_span(args.span)
    cloud = knots.vectorize(records, span=span, symmetric=args.symmetric, cloud_id=args.cloud_id)
    datasets.save_cloud_csv(cloud, args.out)
    print(f"{cloud.n_points} knots, dimension {cloud.dim} -> {args.out}")
    return 0


def _cmd_knots_mirror(args) -> int:
    records = knots.read_knot_csv(args.infile, args.kind)
    cloud = knots.vectorize(records, symmetric=True, cloud_id=args.cloud_id)
    augmented, action = knots.augment_mirrors(cloud, args.kind)
    datasets.save_cloud_csv(augmented, args.out)
    if args.action_out:
        datasets.save_action_csv(action, args.action_out)
    print(
        f"{cloud.n_points} knots -> {augmented.n_points} with mirrors, "
        f"group order {action.order} -> {args.out}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="covergraph")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bm", help="Ball Mapper graph of a cloud")
    _add_cloud_args(p)
    p.add_argument("--epsilon", type=float, required=True)
    _add_common_graph_args(p)
    p.set_defaults(func=_cmd_bm)

    p = sub.add_parser("eqbm", help="Equivariant Ball Mapper graph")
    _add_cloud_args(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--action", required=True, help="CSV of generator permutations")
    _add_common_graph_args(p)
    p.set_defaults(func=_cmd_eqbm)

    p = sub.add_parser("mapper", help="classical Mapper graph")
    _add_cloud_args(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--lens", help="comma-separated coloring columns used as the lens")
    group.add_argument("--lens-coords", help="comma-separated coordinate positions")
    p.add_argument("--resolution", required=True, help="intervals per axis, e.g. 5 or 5,3")
    p.add_argument("--gain", type=float, required=True, help="overlap fraction in [0,1)")
    _add_cluster_args(p)
    _add_common_graph_args(p)
    p.set_defaults(func=_cmd_mapper)

    p = sub.add_parser("mobm", help="Mapper on Ball Mapper through a relation")
    _add_cloud_args(p, "domain")
    _add_cloud_args(p, "codomain")
    p.add_argument("--relation", required=True, help="pairs CSV, 'identity', or 'by-key:<column>'")
    p.add_argument("--epsilon", type=float, required=True, help="codomain ball radius")
    p.add_argument("--metric-codomain", default="euclidean")
    p.add_argument("--metric-domain", default="euclidean")
    _add_cluster_args(p)
    p.add_argument("--image-out", default=None, help="save the codomain image Ball Mapper")
    _add_common_graph_args(p)
    p.set_defaults(func=_cmd_mobm)

    p = sub.add_parser("map-relation", help="selection fractions between two graphs")
    p.add_argument("--domain-graph", required=True)
    p.add_argument("--codomain-graph", required=True)
    p.add_argument("--relation", required=True, help="pairs CSV")
    p.add_argument("--select", default=None, help="comma-separated domain vertex ids")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_map_relation)

    p = sub.add_parser("sweep", help="stability diagnostics over radii and seeds")
    _add_cloud_args(p)
    p.add_argument("--metric", default="euclidean")
    p.add_argument("--epsilons", required=True, help="comma-separated radii")
    p.add_argument("--seeds", default="0", help="comma-separated order seeds")
    p.add_argument("--action", default=None, help="CSV of generator permutations (equivariant)")
    p.add_argument("--min-shared", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("serve", help="HTTP service for the explorer UI")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8750)
    p.add_argument("--graph", action="append", default=[], help="full graph JSON (repeatable)")
    p.add_argument(
        "--relation",
        action="append",
        default=[],
        help="NAME=pairs.csv@DOMAIN_CLOUD_ID:CODOMAIN_CLOUD_ID (repeatable)",
    )
    p.add_argument("--fixture", choices=["mapping-demo"], default=None)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("gen", help="bundled dataset generators")
    gen_sub = p.add_subparsers(dest="generator", required=True)
    g = gen_sub.add_parser("tictactoe")
    g.add_argument("--out", required=True)
    g.add_argument("--action-out", default=None)
    g.set_defaults(func=_cmd_gen_tictactoe)
    g = gen_sub.add_parser("cylinder")
    g.add_argument("--n-circle", type=int, default=500)
    g.add_argument("--n-interval", type=int, default=100)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out-circle", required=True)
    g.add_argument("--out-product", required=True)
    g.add_argument("--out-relation", required=True)
    g.set_defaults(func=_cmd_gen_cylinder)

    p = sub.add_parser("knots", help="knot coefficient tables")
    knot_sub = p.add_subparsers(dest="knot_command", required=True)
    k = knot_sub.add_parser("vectorize")
    k.add_argument("--kind", required=True, choices=list(knots.INVARIANT_KINDS))
    k.add_argument("--in", dest="infile", required=True)
    k.add_argument("--out", required=True)
    k.add_argument("--span", default=None, help="lo:hi exponent span override (1-variable)")
    k.add_argument("--span-a", default=None, help="lo:hi span for a (homflypt)")
    k.add_argument("--span-z", default=None, help="lo:hi span for z (homflypt)")
    k.add_argument("--symmetric", action="store_true")
    k.add_argument("--cloud-id", default=None)
    k.set_defaults(func=_cmd_knots_vectorize)
    k = knot_sub.add_parser("mirror")
    k.add_argument("--kind", required=True, choices=list(knots.MIRRORABLE_KINDS))
    k.add_argument("--in", dest="infile", required=True)
    k.add_argument("--out", required=True)
    k.add_argument("--action-out", default=None)
    k.add_argument("--cloud-id", default=None)
    k.set_defaults(func=_cmd_knots_mirror)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CoverGraphError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
