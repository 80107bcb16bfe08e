"""Mapper on Ball Mapper: pull a Ball Mapper cover of the lens image back
through a relation and cluster the preimages.

The lens image is whatever subset of the codomain the relation actually
hits; a Ball Mapper cover of that subset is pulled back to the domain,
each ball preimage is clustered, and the clusters form the vertices of
the final graph. Vertex ids are "<codomain ball id>:<cluster ordinal>",
keeping the provenance auditable.
"""
from __future__ import annotations

import numpy as np

from .errors import EmptyImage, GraphCloudMismatch, ProvenanceMismatch
from .geometry import Metric, PointCloud
from .mapper import ClusteringSpec, cluster
from .nerve import CoverGraph, Vertex, build_ball_mapper, edges_from_cover
from .nets import greedy_net
from .relations import Relation


def image_ball_mapper(
    codomain: PointCloud,
    rel: Relation,
    metric: Metric,
    epsilon: float,
    order=None,
    order_seed: int | None = None,
    graph_id: str | None = None,
) -> CoverGraph:
    """Ball Mapper of the relation's image inside the codomain cloud.

    The net is greedy over the hit subset only (scan order is a
    permutation of that subset); covered indices in the returned graph are
    original codomain indices.
    """
    if rel.codomain_cloud_id != codomain.id:
        raise GraphCloudMismatch(
            f"relation ends at cloud {rel.codomain_cloud_id!r}, got {codomain.id!r}"
        )
    hit = np.unique(rel.pairs[:, 1]) if len(rel) else np.empty(0, dtype=np.int64)
    if hit.shape[0] == 0:
        raise EmptyImage("the relation hits no codomain point")
    if hit.max() >= codomain.n_points:
        raise GraphCloudMismatch("relation references codomain indices out of range")
    sub = codomain.subcloud(hit, id=f"{codomain.id}[image]")
    net = greedy_net(sub, metric, epsilon, order=order, order_seed=order_seed)
    gid = graph_id if graph_id is not None else f"bm-image:{codomain.id}:eps={epsilon:g}"
    sub_graph = build_ball_mapper(sub, metric, net, graph_id=gid)
    # Translate subset indices back to original codomain indices.
    sub_graph_vertices = [
        Vertex(id=v.id, covered=hit[v.covered], landmark=int(hit[v.landmark]))
        for v in sub_graph.vertices
    ]
    params = dict(sub_graph.params)
    params["image_of"] = rel.domain_cloud_id
    params["n_points"] = codomain.n_points
    params["n_image_points"] = int(hit.shape[0])
    return CoverGraph(
        id=gid,
        source_cloud_id=codomain.id,
        vertices=tuple(sub_graph_vertices),
        edges=sub_graph.edges,
        params=params,
    )


def build_mobm(
    domain: PointCloud,
    codomain: PointCloud,
    rel: Relation,
    metric_codomain: Metric,
    epsilon: float,
    metric_domain: Metric,
    spec: ClusteringSpec,
    order=None,
    order_seed: int | None = None,
    min_shared: int = 1,
    image_graph: CoverGraph | None = None,
    graph_id: str | None = None,
) -> CoverGraph:
    """Mapper-on-Ball-Mapper graph of the domain cloud.

    Steps: (1) Ball Mapper of the relation's image at radius `epsilon`
    under `metric_codomain` (or the pre-built `image_graph`), (2) cluster
    each ball's relation-preimage under `metric_domain` with `spec`,
    (3) nerve of the resulting cover of the domain.
    """
    if rel.domain_cloud_id != domain.id:
        raise GraphCloudMismatch(
            f"relation starts at cloud {rel.domain_cloud_id!r}, got {domain.id!r}"
        )
    if image_graph is None:
        image_graph = image_ball_mapper(
            codomain, rel, metric_codomain, epsilon, order=order, order_seed=order_seed
        )
    elif image_graph.source_cloud_id != codomain.id:
        raise GraphCloudMismatch(
            f"image graph covers {image_graph.source_cloud_id!r}, expected {codomain.id!r}"
        )

    vertices: list[Vertex] = []
    clusters_per_ball: dict[str, int] = {}
    for ball in image_graph.vertices:
        pre = rel.preimage_of(ball.covered)
        if pre.shape[0] == 0:
            continue
        clusters, noise = cluster(domain, pre, metric_domain, spec)
        clusters_per_ball[ball.id] = len(clusters) + int(noise.shape[0])
        for j, c in enumerate(clusters):
            vertices.append(Vertex(id=f"{ball.id}:{j}", covered=c))
        for t, p in enumerate(noise):
            vertices.append(Vertex(id=f"{ball.id}:n{t}", covered=np.array([p])))
    edge_pos = edges_from_cover([v.covered for v in vertices], min_shared)
    edges = tuple((vertices[i].id, vertices[j].id, w) for i, j, w in edge_pos)
    params = {
        "algorithm": "mobm",
        "epsilon": epsilon,
        "metric_codomain": metric_codomain.kind,
        "metric_domain": metric_domain.kind,
        "clustering": {"kind": spec.kind, "eps_db": spec.eps_db, "min_pts": spec.min_pts},
        "order_seed": order_seed,
        "min_shared": min_shared,
        "image_graph_id": image_graph.id,
        "image_graph_params": dict(image_graph.params),
        "codomain_cloud_id": codomain.id,
        "clusters_per_ball": clusters_per_ball,
        "n_points": domain.n_points,
    }
    gid = graph_id if graph_id is not None else f"mobm:{domain.id}->{codomain.id}:eps={epsilon:g}"
    return CoverGraph(
        id=gid, source_cloud_id=domain.id, vertices=tuple(vertices), edges=edges, params=params
    )


def cluster_split_counts(mobm: CoverGraph, image_graph: CoverGraph) -> dict[str, int]:
    """Number of clusters each codomain ball's preimage produced.

    Balls whose preimage split into several clusters mark regions where
    the domain descriptor separates points the codomain descriptor lumps
    together.
    """
    if mobm.params.get("algorithm") != "mobm":
        raise ProvenanceMismatch(f"graph {mobm.id!r} is not a Mapper-on-Ball-Mapper graph")
    if mobm.params.get("image_graph_id") != image_graph.id:
        raise ProvenanceMismatch(
            f"MoBM {mobm.id!r} was built from {mobm.params.get('image_graph_id')!r}, "
            f"not {image_graph.id!r}"
        )
    counts: dict[str, int] = dict(mobm.params["clusters_per_ball"])
    known = set(image_graph.vertex_ids)
    stray = sorted(set(counts) - known)
    if stray:
        raise ProvenanceMismatch(f"MoBM references unknown codomain balls: {stray}")
    return counts
