"""
Knot polynomial coefficients as symmetric point clouds
======================================================

Coefficient tables of polynomial knot invariants become aligned vectors
by zero-padding onto a common exponent span. Mirror knots relate by
reversing the jones vector (or the a-columns of the homflypt matrix) and
negating the signature, so augmenting a table with its mirrors yields a
point cloud with an exact order-2 symmetry, ready for the equivariant
net construction.
"""
import numpy as np

from covergraph import L1, build_ball_mapper, color, equivariant_net, induce_action
from covergraph.knots import (
    KnotRecord,
    augment_mirrors,
    trefoil_and_unknot,
    vectorize,
)

records = trefoil_and_unknot("jones")
cloud = vectorize(records, symmetric=True)
print("jones vectors on the symmetrized span", cloud.meta["span"])
for name, row in zip(cloud.meta["names"], cloud.points):
    print(f"  {name:>8}: {row.astype(int).tolist()}")

augmented, mirror_action = augment_mirrors(cloud)
print("\nafter mirror augmentation:")
for name, row, sig in zip(
    augmented.meta["names"], augmented.points, augmented.column("signature")
):
    print(f"  {name:>13}: {row.astype(int).tolist()}  sigma={int(sig):+d}")

# a slightly larger synthetic table, then the equivariant Ball Mapper of it
more = records + [
    KnotRecord("figure-eight", "jones", {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}, 0, 4),
    KnotRecord("cinquefoil", "jones", {2: 1, 4: 1, 5: -1, 6: 1, 7: -1}, -4, 5),
    KnotRecord("granny", "jones", {2: 1, 4: 2, 5: -2, 6: 1, 7: -2, 8: 1}, -4, 6),
]
cloud = vectorize(more, symmetric=True)
augmented, action = augment_mirrors(cloud)
print(f"\n{len(more)} knots -> {augmented.n_points} rows with mirrors, "
      f"pairing group order {action.order}")

net = equivariant_net(augmented, L1, 3.0, action)
graph = build_ball_mapper(augmented, L1, net)
autos = induce_action(graph, action)
sigma = color(graph, augmented, "signature")
print(f"EqBM at l1 radius 3: {len(graph.vertices)} vertices, "
      f"{len(graph.edges)} edges, {len(autos)} automorphisms")
swap = autos[1]
for v in graph.vertex_ids:
    print(f"  vertex {v}: mean signature {sigma.values[v]:+.1f}  "
          f"<-> mirror vertex {swap(v)} at {sigma.values[swap(v)]:+.1f}")
