"""HTTP service backing the explorer UI.

All state is loaded before serving and immutable afterwards, so identical
requests always produce identical responses. Graphs are served slim by
default (no covered index lists), but the store keeps the full graphs in
memory because /map-selection needs the covered sets.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .errors import GraphCloudMismatch, UnknownVertex
from .nerve import CoverGraph, VertexColoring
from .relations import Relation, map_selection
from .serialize import graph_document

SLIM_POINT_LIMIT = 50_000  # graphs covering more points than this ship slim


@dataclass
class GraphStore:
    """Named graphs (with colorings) and named relations."""

    graphs: dict[str, CoverGraph] = field(default_factory=dict)
    colorings: dict[str, dict[str, VertexColoring]] = field(default_factory=dict)
    relations: dict[str, Relation] = field(default_factory=dict)

    def add_graph(self, graph: CoverGraph, colorings: dict[str, VertexColoring] | None = None):
        self.graphs[graph.id] = graph
        self.colorings[graph.id] = dict(colorings or {})
        return self

    def add_relation(self, name: str, relation: Relation):
        self.relations[name] = relation
        return self


class SelectionRequest(BaseModel):
    domain_graph: str
    codomain_graph: str
    relation: str
    selected_vertices: list[str] = []


def demo_store() -> GraphStore:
    """Store preloaded with the bundled four-to-three mapping fixture."""
    from .datasets import mapping_demo
    from .nerve import color

    demo = mapping_demo()
    store = GraphStore()
    store.add_graph(
        demo.domain_graph,
        {"group": color(demo.domain_graph, demo.domain_cloud, "group")},
    )
    store.add_graph(
        demo.codomain_graph,
        {"group": color(demo.codomain_graph, demo.codomain_cloud, "group")},
    )
    store.add_relation("demo", demo.relation)
    return store


def create_app(store: GraphStore) -> FastAPI:
    app = FastAPI(title="covergraph service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def _graph(graph_id: str) -> CoverGraph:
        graph = store.graphs.get(graph_id)
        if graph is None:
            raise HTTPException(status_code=404, detail=f"unknown graph {graph_id!r}")
        return graph

    @app.get("/graphs")
    def list_graphs():
        return [
            {"id": gid, "params": dict(store.graphs[gid].params)}
            for gid in sorted(store.graphs)
        ]

    @app.get("/graphs/{graph_id}")
    def get_graph(graph_id: str, full: bool = Query(default=False)):
        graph = _graph(graph_id)
        covered = sum(v.size for v in graph.vertices)
        include_points = full or covered <= SLIM_POINT_LIMIT
        return graph_document(
            graph, store.colorings[graph_id].values(), full=include_points
        )

    @app.get("/graphs/{graph_id}/colorings")
    def list_colorings(graph_id: str):
        _graph(graph_id)
        return sorted(store.colorings[graph_id])

    @app.get("/relations")
    def list_relations():
        return [
            {
                "name": name,
                "domain_cloud_id": rel.domain_cloud_id,
                "codomain_cloud_id": rel.codomain_cloud_id,
                "pairs": len(rel),
            }
            for name, rel in sorted(store.relations.items())
        ]

    @app.post("/map-selection")
    def post_map_selection(req: SelectionRequest):
        gx = _graph(req.domain_graph)
        gy = _graph(req.codomain_graph)
        rel = store.relations.get(req.relation)
        if rel is None:
            raise HTTPException(status_code=404, detail=f"unknown relation {req.relation!r}")
        try:
            coloring = map_selection(gx, gy, rel, req.selected_vertices)
        except UnknownVertex as exc:
            raise HTTPException(
                status_code=400, detail=f"unknown domain vertex ids: {exc.ids}"
            ) from None
        except GraphCloudMismatch as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from None
        return {
            "domain_graph": coloring.domain_graph_id,
            "codomain_graph": coloring.codomain_graph_id,
            "relation": req.relation,
            "selection": list(coloring.selection),
            "fractions": coloring.as_floats(),
        }

    return app


def serve(store: GraphStore, host: str = "127.0.0.1", port: int = 8750) -> None:
    import uvicorn

    if not store.graphs:
        raise ValueError("load at least one graph before serving")
    uvicorn.run(create_app(store), host=host, port=port, log_level="warning")
