"""
Equivariant Ball Mapper on Tic-Tac-Toe endgames
===============================================

The 958 final boards, encoded in R^9 with crosses +1 / noughts -1 /
empty 0, carry the dihedral-8 symmetry of the grid. The equivariant net
at l1 radius 2.5 separates the three outcomes perfectly: one component
of first-player wins, one of losses, and sixteen isolated tie boards.
The board symmetries survive as graph automorphisms.
"""
from collections import Counter
from pathlib import Path

import numpy as np

from covergraph import L1, build_ball_mapper, color, equivariant_net, induce_action
from covergraph.datasets import generate_tictactoe
from covergraph.serialize import save_graph
from covergraph.sweep import sweep, sweep_csv

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

cloud, action = generate_tictactoe()
outcome = cloud.column("outcome")
print(f"{cloud.n_points} boards; outcomes:",
      {k: int(v) for k, v in Counter(outcome.tolist()).items()})
print("orbit lengths:", dict(sorted(Counter(len(o) for o in action.orbits()).items())))

net = equivariant_net(cloud, L1, 2.5, action)
graph = build_ball_mapper(cloud, L1, net)
print(f"\nEqBM at eps=2.5: {len(graph.vertices)} vertices, {len(graph.edges)} edges")

components = graph.connected_components()
pure = Counter()
for comp in components:
    values = np.unique(np.concatenate([outcome[graph.vertex(v).covered] for v in comp]))
    pure[float(values[0]) if values.size == 1 else "mixed"] += 1
print(f"{len(components)} components, by outcome:", dict(pure))

autos = induce_action(graph, action)
coloring = color(graph, cloud, "outcome")
moved = sum(
    1 for auto in autos for v in graph.vertex_ids if auto(v) != v
)
print(f"{len(autos)} induced automorphisms verified; {moved} vertex moves total")

save_graph(graph, out_dir / "tictactoe_eqbm.json", [coloring])
save_graph(graph, out_dir / "tictactoe_eqbm.dot", [coloring], fmt="dot")
print(f"graph -> {out_dir / 'tictactoe_eqbm.json'} (+ .dot)")

# stability: the component structure is independent of the scan order
rows = sweep(cloud, L1, [2.2, 2.5, 2.8], [0, 1, 2], action=action)
print("\nsweep over radii and scan seeds:")
print(sweep_csv(rows), end="")
