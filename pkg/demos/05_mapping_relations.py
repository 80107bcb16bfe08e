"""
Relation colorings between two cover graphs
===========================================

Given graphs over a domain and codomain cloud and a relation between the
clouds, selecting domain vertices colors every codomain vertex by the
fraction of its covered points hit by the selection's image. The bundled
fixture has four domain balls (think A, B, C, D) over three codomain
balls (J, K, L): A, B, C each saturate one target ball, D reaches all
three.
"""
from covergraph import full_matrix, map_selection
from covergraph.datasets import mapping_demo

demo = mapping_demo()
gx, gy, rel = demo.domain_graph, demo.codomain_graph, demo.relation
labels_x = dict(zip(gx.vertex_ids, "ABCD"))
labels_y = dict(zip(gy.vertex_ids, "JKL"))

matrix = full_matrix(gx, gy, rel)
print("fractions of each codomain ball reached by each single domain ball:")
print("     " + "  ".join(f"{labels_y[c]:>5}" for c in matrix.col_ids))
for rid, row in zip(matrix.row_ids, matrix.rows):
    print(f"  {labels_x[rid]}  " + "  ".join(f"{float(x):5.2f}" for x in row))

print("\nselection {A, B}:")
coloring = map_selection(gx, gy, rel, ["0", "1"])
for w, frac in coloring.fractions.items():
    print(f"  {labels_y[w]}: {float(frac):.6f}")

print("\nCSV export of the full matrix:")
print(matrix.to_csv(), end="")
