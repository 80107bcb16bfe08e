"""Relations between point clouds and selection-induced fraction colorings.

A relation is a set of (domain index, codomain index) pairs; functions are
the special case of one pair per domain index. Selecting vertices on a
domain graph colors every codomain vertex by the fraction of its covered
points hit by the image of the selection:

    fraction(w) = |covered(w) n image(selection)| / |covered(w)|

Fractions are exact rationals internally and rendered with six decimals.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from collections.abc import Iterable, Mapping

import numpy as np

from .errors import GraphCloudMismatch, UnknownVertex
from .geometry import PointCloud, _frozen
from .nerve import CoverGraph


@dataclass(frozen=True, eq=False)
class Relation:
    """Bipartite index pairs linking a domain cloud to a codomain cloud."""

    domain_cloud_id: str
    codomain_cloud_id: str
    pairs: np.ndarray  # (M, 2) int64, lexicographically sorted, unique

    def __post_init__(self):
        arr = np.asarray(self.pairs, dtype=np.int64).reshape(-1, 2)
        if arr.shape[0]:
            arr = np.unique(arr, axis=0)
            if arr.min() < 0:
                raise ValueError("relation indices must be non-negative")
        object.__setattr__(self, "pairs", _frozen(arr))

    def __len__(self) -> int:
        return int(self.pairs.shape[0])

    @cached_property
    def _by_domain(self) -> tuple[np.ndarray, np.ndarray]:
        # pairs are sorted by (x, y); searchsorted slices give image lookups
        return self.pairs[:, 0], self.pairs[:, 1]

    def image_of(self, domain_indices) -> np.ndarray:
        """Sorted unique codomain indices related to any of `domain_indices`."""
        xs, ys = self._by_domain
        wanted = np.unique(np.asarray(domain_indices, dtype=np.int64))
        lo = np.searchsorted(xs, wanted, side="left")
        hi = np.searchsorted(xs, wanted, side="right")
        chunks = [ys[a:b] for a, b in zip(lo, hi) if b > a]
        if not chunks:
            return np.empty(0, dtype=np.int64)
        return np.unique(np.concatenate(chunks))

    def preimage_of(self, codomain_indices) -> np.ndarray:
        wanted = np.unique(np.asarray(codomain_indices, dtype=np.int64))
        mask = np.isin(self.pairs[:, 1], wanted)
        return np.unique(self.pairs[mask, 0])

    def domain_coverage(self, n_domain: int) -> float:
        """Fraction of domain indices that appear at all (totality report)."""
        if n_domain == 0:
            return 1.0
        return float(np.unique(self.pairs[:, 0]).shape[0] / n_domain)


def identity_relation(cloud: PointCloud) -> Relation:
    n = cloud.n_points
    pairs = np.stack([np.arange(n), np.arange(n)], axis=1)
    return Relation(domain_cloud_id=cloud.id, codomain_cloud_id=cloud.id, pairs=pairs)


def relation_from_pairs(domain: PointCloud, codomain: PointCloud, pairs) -> Relation:
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if arr.shape[0]:
        if arr[:, 0].max() >= domain.n_points:
            raise ValueError("relation references a domain index out of range")
        if arr[:, 1].max() >= codomain.n_points:
            raise ValueError("relation references a codomain index out of range")
    return Relation(domain_cloud_id=domain.id, codomain_cloud_id=codomain.id, pairs=arr)


def relation_by_key(domain: PointCloud, codomain: PointCloud, column: str) -> Relation:
    """Join rows of two clouds on equal values of a key column."""
    kx = domain.column(column)
    ky = codomain.column(column)
    order = np.argsort(ky, kind="stable")
    sorted_ky = ky[order]
    pairs = []
    lo = np.searchsorted(sorted_ky, kx, side="left")
    hi = np.searchsorted(sorted_ky, kx, side="right")
    for i, (a, b) in enumerate(zip(lo, hi)):
        for j in order[a:b]:
            pairs.append((i, int(j)))
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    return Relation(domain_cloud_id=domain.id, codomain_cloud_id=codomain.id, pairs=arr)


def load_relation_pairs(path) -> np.ndarray:
    """Two-column CSV of (domain index, codomain index); header optional."""
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (lineno == 1 and not row[0].strip().lstrip("-").isdigit()):
                continue  # header or blank
            if len(row) < 2:
                raise ValueError(f"{path}: line {lineno}: expected two columns")
            rows.append((int(row[0]), int(row[1])))
    return np.asarray(rows, dtype=np.int64).reshape(-1, 2)


def save_relation_pairs(rel: Relation, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["domain_index", "codomain_index"])
        writer.writerows(rel.pairs.tolist())


@dataclass(frozen=True)
class SelectionColoring:
    """Per-codomain-vertex fractions induced by a domain vertex selection."""

    domain_graph_id: str
    codomain_graph_id: str
    selection: tuple[str, ...]
    fractions: Mapping[str, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "fractions", dict(self.fractions))

    def as_floats(self) -> dict[str, float]:
        return {k: float(v) for k, v in self.fractions.items()}

    def formatted(self, digits: int = 6) -> dict[str, str]:
        return {k: f"{float(v):.{digits}f}" for k, v in self.fractions.items()}


def _check_linkage(gx: CoverGraph, gy: CoverGraph, rel: Relation) -> None:
    if gx.source_cloud_id != rel.domain_cloud_id:
        raise GraphCloudMismatch(
            f"domain graph covers cloud {gx.source_cloud_id!r} but the relation "
            f"starts at {rel.domain_cloud_id!r}"
        )
    if gy.source_cloud_id != rel.codomain_cloud_id:
        raise GraphCloudMismatch(
            f"codomain graph covers cloud {gy.source_cloud_id!r} but the relation "
            f"ends at {rel.codomain_cloud_id!r}"
        )


def map_selection(
    gx: CoverGraph, gy: CoverGraph, rel: Relation, selection: Iterable[str]
) -> SelectionColoring:
    """Fractions of each codomain ball reached by the image of the selection.

    The denominator is the full covered size of the codomain vertex, so a
    fraction of 1 means the selection's image saturates that ball.
    """
    _check_linkage(gx, gy, rel)
    selected = tuple(dict.fromkeys(selection))  # keep order, drop repeats
    known = set(gx.vertex_ids)
    missing = [s for s in selected if s not in known]
    if missing:
        raise UnknownVertex(missing)
    if selected:
        covered = np.unique(
            np.concatenate([gx.vertex(v).covered for v in selected])
        )
        image = rel.image_of(covered)
    else:
        image = np.empty(0, dtype=np.int64)
    fractions: dict[str, Fraction] = {}
    for w in gy.vertices:
        hits = np.intersect1d(w.covered, image, assume_unique=True).shape[0]
        fractions[w.id] = Fraction(int(hits), w.size)
    return SelectionColoring(
        domain_graph_id=gx.id,
        codomain_graph_id=gy.id,
        selection=selected,
        fractions=fractions,
    )


def full_matrix(gx: CoverGraph, gy: CoverGraph, rel: Relation) -> "SelectionMatrix":
    """One row per domain vertex: map_selection of that singleton."""
    rows = [map_selection(gx, gy, rel, [v.id]) for v in gx.vertices]
    return SelectionMatrix(
        domain_graph_id=gx.id,
        codomain_graph_id=gy.id,
        row_ids=tuple(v.id for v in gx.vertices),
        col_ids=tuple(w.id for w in gy.vertices),
        rows=tuple(tuple(r.fractions[w.id] for w in gy.vertices) for r in rows),
    )


@dataclass(frozen=True)
class SelectionMatrix:
    domain_graph_id: str
    codomain_graph_id: str
    row_ids: tuple[str, ...]
    col_ids: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def as_floats(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.rows])

    def to_csv(self, digits: int = 6) -> str:
        """Deterministic CSV: domain vertex ids as rows, codomain ids as columns."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["", *self.col_ids])
        for rid, row in zip(self.row_ids, self.rows):
            writer.writerow([rid, *(f"{float(x):.{digits}f}" for x in row)])
        return buf.getvalue()
