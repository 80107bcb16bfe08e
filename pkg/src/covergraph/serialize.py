"""Graph documents: deterministic export and round-trip import.

The JSON document is the wire format of the HTTP service and the on-disk
format of the CLI; exports are byte-stable across runs and worker counts
(sorted keys, insertion-ordered nodes, shortest-round-trip floats). The
schema ships in docs/graph-schema.json.
"""
from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable

from .errors import UnknownFormat
from .nerve import CoverGraph, Vertex, VertexColoring

SCHEMA_VERSION = 1

FORMATS = ("json", "dot", "csv-matrix")


def graph_document(
    graph: CoverGraph, colorings: Iterable[VertexColoring] = (), full: bool = True
) -> dict:
    """Plain-dict form of a graph; `full=False` omits covered index lists."""
    colorings = list(colorings)
    for c in colorings:
        if c.graph_id != graph.id:
            raise ValueError(f"coloring of graph {c.graph_id!r} does not belong to {graph.id!r}")
    nodes = []
    for v in graph.vertices:
        node = {"id": v.id, "size": v.size}
        if v.landmark is not None:
            node["landmark_index"] = v.landmark
        if full:
            node["covered_indices"] = v.covered.tolist()
        if colorings:
            node["colors"] = {
                c.column: {"mean": c.values[v.id], "variation": c.variation[v.id]}
                for c in colorings
            }
        nodes.append(node)
    return {
        "schema_version": SCHEMA_VERSION,
        "id": graph.id,
        "source_cloud_id": graph.source_cloud_id,
        "params": dict(graph.params),
        "nodes": nodes,
        "edges": [{"source": u, "target": v, "weight": w} for u, v, w in graph.edges],
    }


def _dot(graph: CoverGraph, colorings: list[VertexColoring]) -> str:
    lines = ["graph covergraph {"]
    for v in graph.vertices:
        attrs = [f'label="{v.id}"', f"size={v.size}"]
        for c in colorings:
            attrs.append(f'{c.column}="{c.values[v.id]:.6f}"')
        lines.append(f'  "{v.id}" [{", ".join(attrs)}];')
    for u, v, w in graph.edges:
        lines.append(f'  "{u}" -- "{v}" [weight={w}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _csv_matrix(graph: CoverGraph, colorings: list[VertexColoring]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    head = ["vertex", "size"]
    for c in colorings:
        head += [f"{c.column}:mean", f"{c.column}:variation"]
    writer.writerow(head)
    for v in graph.vertices:
        row = [v.id, v.size]
        for c in colorings:
            row += [f"{c.values[v.id]:.6f}", f"{c.variation[v.id]:.6f}"]
        writer.writerow(row)
    return buf.getvalue()


def export(
    graph: CoverGraph,
    colorings: Iterable[VertexColoring] = (),
    fmt: str = "json",
    full: bool = True,
) -> bytes:
    """Serialize a graph as json, dot, or a csv-matrix of vertex statistics."""
    colorings = list(colorings)
    if fmt == "json":
        doc = graph_document(graph, colorings, full=full)
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()
    if fmt == "dot":
        return _dot(graph, colorings).encode()
    if fmt == "csv-matrix":
        return _csv_matrix(graph, colorings).encode()
    raise UnknownFormat(f"unknown export format {fmt!r}; expected one of {FORMATS}")


def import_graph(data) -> tuple[CoverGraph, list[VertexColoring]]:
    """Rebuild a graph (and its colorings) from a full JSON document.

    Slim documents (no covered_indices) cannot be rebuilt: covered sets
    are what every downstream computation consumes.
    """
    if isinstance(data, (bytes, str)):
        doc = json.loads(data)
    else:
        doc = data
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise UnknownFormat(
            f"unsupported schema_version {doc.get('schema_version')!r} (expected {SCHEMA_VERSION})"
        )
    vertices = []
    color_values: dict[str, dict[str, float]] = {}
    color_variation: dict[str, dict[str, float]] = {}
    for node in doc["nodes"]:
        if "covered_indices" not in node:
            raise UnknownFormat(
                f"node {node.get('id')!r} has no covered_indices; re-export with full=True"
            )
        vertices.append(
            Vertex(
                id=node["id"],
                covered=node["covered_indices"],
                landmark=node.get("landmark_index"),
            )
        )
        for column, stats in node.get("colors", {}).items():
            color_values.setdefault(column, {})[node["id"]] = stats["mean"]
            color_variation.setdefault(column, {})[node["id"]] = stats["variation"]
    graph = CoverGraph(
        id=doc["id"],
        source_cloud_id=doc["source_cloud_id"],
        vertices=tuple(vertices),
        edges=tuple((e["source"], e["target"], e["weight"]) for e in doc["edges"]),
        params=doc.get("params", {}),
    )
    colorings = [
        VertexColoring(
            graph_id=graph.id,
            column=column,
            values=color_values[column],
            variation=color_variation[column],
        )
        for column in sorted(color_values)
    ]
    return graph, colorings


def load_graph(path) -> tuple[CoverGraph, list[VertexColoring]]:
    with open(path, "rb") as fh:
        return import_graph(fh.read())


def save_graph(
    graph: CoverGraph, path, colorings: Iterable[VertexColoring] = (), fmt: str = "json",
    full: bool = True,
) -> None:
    with open(path, "wb") as fh:
        fh.write(export(graph, colorings, fmt=fmt, full=full))
