"""
Mapper on Ball Mapper: high-dimensional lenses
==============================================

Interval covers need k^n cubes for an n-dimensional lens; MoBM replaces
them with the adaptive cover a Ball Mapper builds on the lens image.

Example 1: a cylinder in R^8 (circle embedded in R^7, crossed with an
interval) is projected onto its circle factor. The pullback of the
circle's ball cover clusters into a single piece per ball, so the MoBM
graph is the same cycle as the base circle: the product with a
contractible interval changes nothing.

Example 2: two disjoint circles are related onto ONE circle. Every ball
preimage splits into two clusters and the MoBM graph is two disjoint
cycles: the split counts expose that the domain separates points the
codomain identifies.
"""
import numpy as np

from covergraph import (
    EUCLIDEAN,
    ClusteringSpec,
    build_mobm,
    cluster_split_counts,
    image_ball_mapper,
)
from covergraph.datasets import generate_cylinder
from covergraph.geometry import PointCloud
from covergraph.relations import relation_from_pairs


def describe(name, graph, counts):
    degrees = [graph.degree(v.id) for v in graph.vertices]
    print(f"{name}: {len(graph.vertices)} vertices, {len(graph.edges)} edges, "
          f"{len(graph.connected_components())} component(s), "
          f"degrees all 2: {all(d == 2 for d in degrees)}")
    print(f"  clusters per codomain ball: {sorted(set(counts.values()))}")


# --- cylinder -> circle ----------------------------------------------------
circle, product, projection = generate_cylinder(seed=0)
print(f"|C| = {circle.n_points} in R^{circle.dim}; "
      f"|C x L| = {product.n_points} in R^{product.dim}")

eps = 0.44  # radius at which the circle's Ball Mapper is a single cycle
image = image_ball_mapper(circle, projection, EUCLIDEAN, eps)
mobm = build_mobm(
    product, circle, projection, EUCLIDEAN, eps, EUCLIDEAN,
    ClusteringSpec(kind="radius", eps_db=0.6), image_graph=image,
)
describe("cylinder MoBM", mobm, cluster_split_counts(mobm, image))

# --- two circles -> one circle ----------------------------------------------
n = 40
t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
ring = np.column_stack([np.cos(t), np.sin(t)])
domain = PointCloud(points=np.vstack([ring, ring + [100.0, 0.0]]), id="two-circles")
codomain = PointCloud(points=ring, id="one-circle")
double_cover = relation_from_pairs(domain, codomain, [(i, i % n) for i in range(2 * n)])

image2 = image_ball_mapper(codomain, double_cover, EUCLIDEAN, 0.4)
mobm2 = build_mobm(
    domain, codomain, double_cover, EUCLIDEAN, 0.4, EUCLIDEAN,
    ClusteringSpec(kind="radius", eps_db=1.0), image_graph=image2,
)
describe("double-cover MoBM", mobm2, cluster_split_counts(mobm2, image2))
