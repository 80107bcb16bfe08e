"""
Ball Mapper on a sampled circle
===============================

Builds greedy epsilon-nets of a noisy-free circle sample at a range of
radii and shows the Ball Mapper graph turning into a single cycle: the
nerve of the ball cover recovers the topology of the underlying circle.
"""
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from covergraph import EUCLIDEAN, build_ball_mapper, color, greedy_net
from covergraph.geometry import PointCloud

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

# 500 points on the unit circle in the plane
rng = np.random.default_rng(7)
theta = np.sort(rng.uniform(0.0, 2.0 * np.pi, 500))
cloud = PointCloud(
    points=np.column_stack([np.cos(theta), np.sin(theta)]),
    columns={"angle": theta},
    id="circle2d",
)

print("epsilon  vertices  edges  degrees==2  components")
for eps in (0.05, 0.1, 0.2, 0.4, 0.8):
    net = greedy_net(cloud, EUCLIDEAN, eps)
    graph = build_ball_mapper(cloud, EUCLIDEAN, net)
    all_deg_2 = all(graph.degree(v.id) == 2 for v in graph.vertices)
    print(
        f"{eps:7.2f}  {len(graph.vertices):8d}  {len(graph.edges):5d}"
        f"  {str(all_deg_2):>10}  {len(graph.connected_components()):10d}"
    )

# draw one of the cycles: each vertex at its landmark, colored by the
# induced mean angle
eps = 0.4
net = greedy_net(cloud, EUCLIDEAN, eps)
graph = build_ball_mapper(cloud, EUCLIDEAN, net)
angles = color(graph, cloud, "angle")

fig, ax = plt.subplots(figsize=(5, 5))
ax.scatter(*cloud.points.T, s=4, c="lightgray")
xy = {v.id: cloud.points[v.landmark] for v in graph.vertices}
for u, v, _w in graph.edges:
    ax.plot(*zip(xy[u], xy[v]), c="steelblue", lw=1)
ax.scatter(
    [xy[v][0] for v in graph.vertex_ids],
    [xy[v][1] for v in graph.vertex_ids],
    c=[angles.values[v] for v in graph.vertex_ids],
    cmap="twilight", zorder=3, s=60, edgecolors="k",
)
ax.set_aspect("equal")
ax.set_title(f"Ball Mapper, eps={eps}: {len(graph.vertices)}-vertex cycle")
fig.savefig(out_dir / "ball_mapper_circle.png", dpi=150)
print(f"\nfigure -> {out_dir / 'ball_mapper_circle.png'}")
