"""Cover graphs from point clouds: Ball Mapper, Equivariant Ball Mapper,
classical Mapper, Mapper on Ball Mapper, and relation colorings."""

from .errors import CoverGraphError
from .geometry import (
    COSINE,
    EUCLIDEAN,
    L1,
    GroupAction,
    Metric,
    Orbit,
    PointCloud,
    build_action_from_coordinate_maps,
    distance,
    distances,
    orbit,
    pairwise_distances,
)
from .mapper import ClusteringSpec, IntervalCover, build_mapper, cluster, cover_range
from .mobm import build_mobm, cluster_split_counts, image_ball_mapper
from .nerve import (
    CoverGraph,
    InducedAutomorphism,
    Vertex,
    VertexColoring,
    build_ball_mapper,
    color,
    induce_action,
)
from .nets import EpsNet, equivariant_net, greedy_net, net_from_landmarks, seeded_order
from .relations import (
    Relation,
    SelectionColoring,
    SelectionMatrix,
    full_matrix,
    identity_relation,
    map_selection,
    relation_by_key,
    relation_from_pairs,
)
from .sweep import SweepRow, sweep

__version__ = "0.1.0"

__all__ = [
    "COSINE",
    "EUCLIDEAN",
    "L1",
    "ClusteringSpec",
    "CoverGraph",
    "CoverGraphError",
    "EpsNet",
    "GroupAction",
    "InducedAutomorphism",
    "IntervalCover",
    "Metric",
    "Orbit",
    "PointCloud",
    "Relation",
    "SelectionColoring",
    "SelectionMatrix",
    "SweepRow",
    "Vertex",
    "VertexColoring",
    "build_action_from_coordinate_maps",
    "build_ball_mapper",
    "build_mapper",
    "build_mobm",
    "cluster",
    "cluster_split_counts",
    "color",
    "cover_range",
    "distance",
    "distances",
    "equivariant_net",
    "full_matrix",
    "greedy_net",
    "identity_relation",
    "image_ball_mapper",
    "induce_action",
    "map_selection",
    "net_from_landmarks",
    "orbit",
    "pairwise_distances",
    "relation_by_key",
    "relation_from_pairs",
    "seeded_order",
    "sweep",
]
