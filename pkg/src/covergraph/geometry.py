"""Point clouds, metrics, and finite group actions on point indices.

Group actions are stored as index permutations rather than coordinate
transforms, so isometry holds exactly (indices permute, coordinates are
untouched) and the equivariant net construction is purely combinatorial.
"""
from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    AmbiguousMatch,
    DimensionMismatch,
    GroupTooLarge,
    UnknownColumn,
    UnmatchedImage,
    ZeroVectorCosine,
)

METRIC_KINDS = ("euclidean", "l1", "cosine")

_KIND_ALIASES = {
    "euclidean": "euclidean",
    "l2": "euclidean",
    "l1": "l1",
    "manhattan": "l1",
    "cityblock": "l1",
    "cosine": "cosine",
    "cosine-dissimilarity": "cosine",
}


@dataclass(frozen=True)
class Metric:
    """A parameter-free metric kind: euclidean, l1, or cosine.

    "cosine" is the dissimilarity 1 - (x.y)/(|x||y|), defined only for
    nonzero vectors. It is not a metric (no triangle inequality) but is
    accepted because ball membership never needs one.
    """

    kind: str = "euclidean"

    def __post_init__(self):
        canon = _KIND_ALIASES.get(self.kind)
        if canon is None:
            raise ValueError(f"unknown metric kind {self.kind!r}; use one of {METRIC_KINDS}")
        object.__setattr__(self, "kind", canon)


EUCLIDEAN = Metric("euclidean")
L1 = Metric("l1")
COSINE = Metric("cosine")


def _as_matrix(points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D point array, got shape {pts.shape}")
    return pts


def _check_nonzero_rows(pts: np.ndarray, sq_norms: np.ndarray) -> None:
    if np.any(sq_norms == 0.0):
        bad = int(np.flatnonzero(sq_norms == 0.0)[0])
        raise ZeroVectorCosine(
            f"cosine dissimilarity undefined for zero-norm vector (row {bad})"
        )


def distances(metric: Metric, points, x) -> np.ndarray:
    """Distances from every row of `points` to the single vector `x`."""
    pts = _as_matrix(points)
    q = np.asarray(x, dtype=np.float64).reshape(-1)
    if pts.shape[1] != q.shape[0]:
        raise DimensionMismatch(f"dimension {pts.shape[1]} vs {q.shape[0]}")
    if metric.kind == "euclidean":
        diff = pts - q
        return np.sqrt(np.einsum("ij,ij->i", diff, diff))
    if metric.kind == "l1":
        return np.abs(pts - q).sum(axis=1)
    # All three inner products go through the same elementwise-multiply +
    # row-sum kernel, and the denominator is sqrt(|x|^2 * |y|^2) in one
    # shot; together that makes d(x, x) exactly 0 and swaps exactly
    # symmetric (IEEE sqrt of a rounded square returns the root exactly).
    sq = (pts * pts).sum(axis=1)
    qsq = float((q * q).sum())
    if qsq == 0.0:
        raise ZeroVectorCosine("cosine dissimilarity undefined for zero vector")
    _check_nonzero_rows(pts, sq)
    out = 1.0 - (pts * q).sum(axis=1) / np.sqrt(sq * qsq)
    return np.maximum(out, 0.0)


def distance(metric: Metric, a, b) -> float:
    """Distance between two vectors under `metric`; exactly symmetric."""
    return float(distances(metric, np.asarray(b, dtype=np.float64).reshape(1, -1), a)[0])


def pairwise_distances(metric: Metric, a, b=None) -> np.ndarray:
    """Full distance matrix between rows of `a` and rows of `b` (or `a`).

    Quadratic in memory; meant for desk-scale inputs and oracles. Large
    clustering jobs go through `cluster`, which works in row blocks.
    """
    pa = _as_matrix(a)
    pb = pa if b is None else _as_matrix(b)
    if pa.shape[1] != pb.shape[1]:
        raise DimensionMismatch(f"dimension {pa.shape[1]} vs {pb.shape[1]}")
    if metric.kind == "euclidean":
        aa = np.einsum("ij,ij->i", pa, pa)
        bb = np.einsum("ij,ij->i", pb, pb)
        sq = aa[:, None] + bb[None, :] - 2.0 * (pa @ pb.T)
        np.maximum(sq, 0.0, out=sq)
        return np.sqrt(sq)
    if metric.kind == "l1":
        return np.abs(pa[:, None, :] - pb[None, :, :]).sum(axis=2)
    sa = np.einsum("ij,ij->i", pa, pa)
    sb = np.einsum("ij,ij->i", pb, pb)
    _check_nonzero_rows(pa, sa)
    _check_nonzero_rows(pb, sb)
    out = 1.0 - (pa @ pb.T) / np.sqrt(sa[:, None] * sb[None, :])
    return np.maximum(out, 0.0)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PointCloud:
    """An indexed set of D-dimensional vectors plus named scalar columns.

    Immutable after construction; point order is stable and indices
    0..N-1 address points everywhere in the package.
    """

    points: np.ndarray
    columns: Mapping[str, np.ndarray] = field(default_factory=dict)
    id: str = "cloud"
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise DimensionMismatch(f"points must be an N x D array, got shape {pts.shape}")
        if pts.shape[1] < 1:
            raise DimensionMismatch("point dimension must be >= 1")
        object.__setattr__(self, "points", _frozen(pts))
        cols = {}
        for name, values in dict(self.columns).items():
            col = np.array(values, dtype=np.float64).reshape(-1)
            if col.shape[0] != pts.shape[0]:
                raise DimensionMismatch(
                    f"column {name!r} has {col.shape[0]} entries for {pts.shape[0]} points"
                )
            cols[name] = _frozen(col)
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "meta", dict(self.meta))

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def column(self, name: str) -> np.ndarray:
        try:
            return self.columns[name]
        except KeyError:
            raise UnknownColumn(f"cloud {self.id!r} has no column {name!r}") from None

    def subcloud(self, indices, id: str | None = None) -> "PointCloud":
        """Cloud restricted to `indices` (new 0-based indexing, same order)."""
        idx = np.asarray(indices, dtype=np.int64)
        return PointCloud(
            points=self.points[idx],
            columns={k: v[idx] for k, v in self.columns.items()},
            id=id if id is not None else f"{self.id}[{len(idx)}]",
            meta=dict(self.meta),
        )


def _validate_permutation(perm, n: int) -> np.ndarray:
    arr = np.asarray(perm, dtype=np.int64).reshape(-1)
    if arr.shape[0] != n or not np.array_equal(np.sort(arr), np.arange(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}")
    return arr


@dataclass(frozen=True)
class GroupAction:
    """A finite group acting on point indices by permutations.

    `elements` is the full closure under composition, enumerated
    breadth-first from the identity; elements[0] is the identity and the
    enumeration order is deterministic, so element positions serve as ids.
    """

    cloud_id: str
    generators: tuple[np.ndarray, ...]
    elements: tuple[np.ndarray, ...]

    @staticmethod
    def from_permutations(
        perms: Iterable[Sequence[int]],
        cloud_id: str,
        max_order: int = 10_000,
    ) -> "GroupAction":
        """Enumerate the group generated by index permutations.

        Raises GroupTooLarge instead of truncating if the closure exceeds
        `max_order`.
        """
        gens = []
        n = None
        for p in perms:
            arr = np.asarray(p, dtype=np.int64).reshape(-1)
            n = arr.shape[0] if n is None else n
            gens.append(_frozen(_validate_permutation(arr, n)))
        if n is None:
            raise ValueError("at least one generator (possibly the identity) is required")
        identity = np.arange(n, dtype=np.int64)
        seen = {identity.tobytes(): identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for elem in frontier:
                for g in gens:
                    comp = g[elem]  # comp(i) = g(elem(i))
                    key = comp.tobytes()
                    if key not in seen:
                        if len(seen) >= max_order:
                            raise GroupTooLarge(f"group order exceeds cap {max_order}")
                        seen[key] = comp
                        nxt.append(comp)
            frontier = nxt
        elements = tuple(_frozen(e) for e in seen.values())
        return GroupAction(cloud_id=cloud_id, generators=tuple(gens), elements=elements)

    @staticmethod
    def trivial(cloud: PointCloud) -> "GroupAction":
        return GroupAction.from_permutations([np.arange(cloud.n_points)], cloud_id=cloud.id)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def n_indices(self) -> int:
        return self.elements[0].shape[0]

    @cached_property
    def _orbit_label(self) -> np.ndarray:
        labels = np.full(self.n_indices, -1, dtype=np.int64)
        images = np.stack(self.elements)  # (|H|, N)
        for i in range(self.n_indices):
            if labels[i] < 0:
                labels[images[:, i]] = i
        return _frozen(labels)

    def orbit(self, i: int) -> "Orbit":
        if not 0 <= i < self.n_indices:
            raise IndexError(f"index {i} out of range for {self.n_indices} points")
        members = np.unique([int(e[i]) for e in self.elements])
        return Orbit(members=_frozen(members), seed=i)

    def orbits(self) -> list["Orbit"]:
        """All orbits; their member sets partition 0..N-1."""
        seeds = np.unique(self._orbit_label)
        return [self.orbit(int(s)) for s in seeds]


@dataclass(frozen=True)
class Orbit:
    members: np.ndarray  # sorted indices, closed under the group
    seed: int

    def __len__(self) -> int:
        return int(self.members.shape[0])

    def __contains__(self, i) -> bool:
        pos = int(np.searchsorted(self.members, i))
        return pos < len(self.members) and self.members[pos] == i


def orbit(action: GroupAction, i: int) -> Orbit:
    return action.orbit(i)


def build_action_from_coordinate_maps(
    cloud: PointCloud,
    maps: Sequence[Callable[[np.ndarray], np.ndarray]],
    tol: float = 0.0,
    max_order: int = 10_000,
) -> GroupAction:
    """Turn coordinate-level transforms into an index-level GroupAction.

    Each transform T must send every cloud point onto a unique cloud point
    within Chebyshev distance `tol` (default 0 = exact match, which is
    right for integer-valued data). The matched index maps become the
    generators; the dataset must already be closed under the intended
    action, otherwise UnmatchedImage asks the caller to augment it first.
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    pts = cloud.points
    n = cloud.n_points
    perms = []
    for t_pos, transform in enumerate(maps):
        mapping = np.empty(n, dtype=np.int64)
        for i in range(n):
            image = np.asarray(transform(pts[i]), dtype=np.float64).reshape(-1)
            if image.shape[0] != cloud.dim:
                raise DimensionMismatch(
                    f"map #{t_pos} returned a vector of dimension {image.shape[0]}"
                )
            hits = np.flatnonzero(np.abs(pts - image).max(axis=1) <= tol)
            if hits.shape[0] == 0:
                raise UnmatchedImage(
                    f"map #{t_pos}: image of point {i} matches no cloud point (tol={tol})"
                )
            if hits.shape[0] > 1:
                raise AmbiguousMatch(
                    f"map #{t_pos}: image of point {i} matches points {hits.tolist()}"
                )
            mapping[i] = hits[0]
        if np.unique(mapping).shape[0] != n:
            raise AmbiguousMatch(f"map #{t_pos}: matching is not a bijection on indices")
        perms.append(mapping)
    return GroupAction.from_permutations(perms, cloud_id=cloud.id, max_order=max_order)
