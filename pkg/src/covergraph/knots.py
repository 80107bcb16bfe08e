"""Knot-invariant coefficient tables as point clouds.

Each knot record holds the nonzero coefficients of a polynomial invariant
(alexander / jones: one variable; homflypt: two variables a, z) plus the
signature and minimal crossing number. Vectorization aligns all records on
a common exponent span, padding with zeros; two-variable tables are
flattened row-major with z indexing rows and a indexing columns.

Mirror augmentation appends the mirror image of every record that lacks
one: the jones vector of a mirror is the reversal of the (symmetrically
padded) original, the homflypt matrix reverses its a-columns, and the
signature flips sign. The pairing comes back as an order-2 group action.
"""
from __future__ import annotations

import csv
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyCollection, MixedKinds
from .geometry import GroupAction, PointCloud

INVARIANT_KINDS = ("alexander", "jones", "homflypt")
MIRRORABLE_KINDS = ("jones", "homflypt")


@dataclass(frozen=True)
class KnotRecord:
    name: str
    kind: str
    coefficients: Mapping[int, int] | Mapping[tuple[int, int], int]
    signature: int = 0
    crossings: int = 0

    def __post_init__(self):
        if self.kind not in INVARIANT_KINDS:
            raise ValueError(f"unknown invariant kind {self.kind!r}")
        if self.signature % 2 != 0:
            raise ValueError(
                f"knot {self.name!r}: signature {self.signature} is odd; knot signatures are even"
            )
        coeffs = {}
        for exp, c in dict(self.coefficients).items():
            c = int(c)
            if c == 0:
                continue
            if self.kind == "homflypt":
                ea, ez = exp
                coeffs[(int(ea), int(ez))] = c
            else:
                coeffs[int(exp)] = c
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def is_two_variable(self) -> bool:
        return self.kind == "homflypt"


def _common_kind(records: Sequence[KnotRecord]) -> str:
    if not records:
        raise EmptyCollection("no knot records to vectorize")
    kinds = {r.kind for r in records}
    if len(kinds) != 1:
        raise MixedKinds(f"records mix invariant kinds: {sorted(kinds)}")
    return records[0].kind


def _span(values: Iterable[int], explicit, symmetric: bool) -> tuple[int, int]:
    vals = list(values)
    lo = min(vals) if vals else 0
    hi = max(vals) if vals else 0
    if explicit is not None:
        elo, ehi = int(explicit[0]), int(explicit[1])
        if elo > lo or ehi < hi:
            raise ValueError(
                f"explicit span [{elo}, {ehi}] does not contain the collection span [{lo}, {hi}]"
            )
        lo, hi = elo, ehi
    if symmetric:
        m = max(abs(lo), abs(hi))
        lo, hi = -m, m
    return lo, hi


def vectorize(
    records: Sequence[KnotRecord],
    span=None,
    symmetric: bool = False,
    cloud_id: str | None = None,
) -> PointCloud:
    """Aligned coefficient vectors for a homogeneous record collection.

    One variable: d = max - min + 1 over the collection span (or the
    explicit `span=(lo, hi)`), zeros padded on both sides. Two variables:
    `span=((a_lo, a_hi), (z_lo, z_hi))`; d = n_a * n_z, flattened with z
    rows and a columns. `symmetric=True` widens the span of the
    mirror-sensitive variable (t for jones, a for homflypt) to
    [-m, m], m = max(|lo|, |hi|) — required before mirror augmentation.
    Signature and crossing number come along as coloring columns.
    """
    kind = _common_kind(records)
    names = [r.name for r in records]
    signature = [r.signature for r in records]
    crossings = [r.crossings for r in records]
    if kind == "homflypt":
        span_a, span_z = (None, None) if span is None else span
        a_lo, a_hi = _span(
            (ea for r in records for ea, _ in r.coefficients), span_a, symmetric
        )
        z_lo, z_hi = _span((ez for r in records for _, ez in r.coefficients), span_z, False)
        n_a = a_hi - a_lo + 1
        n_z = z_hi - z_lo + 1
        vectors = np.zeros((len(records), n_a * n_z))
        for i, r in enumerate(records):
            for (ea, ez), c in r.coefficients.items():
                vectors[i, (ez - z_lo) * n_a + (ea - a_lo)] = c
        meta = {"invariant": kind, "span_a": (a_lo, a_hi), "span_z": (z_lo, z_hi),
                "names": names}
    else:
        lo, hi = _span((e for r in records for e in r.coefficients), span, symmetric)
        d = hi - lo + 1
        vectors = np.zeros((len(records), d))
        for i, r in enumerate(records):
            for e, c in r.coefficients.items():
                vectors[i, e - lo] = c
        meta = {"invariant": kind, "span": (lo, hi), "names": names}
    return PointCloud(
        points=vectors,
        columns={"signature": signature, "crossings": crossings},
        id=cloud_id if cloud_id is not None else f"{kind}:{len(records)}",
        meta=meta,
    )


def mirror_vectors(vectors: np.ndarray, kind: str, n_a: int | None = None) -> np.ndarray:
    """Coefficient vectors of the mirror knots (an involution)."""
    if kind == "jones":
        return vectors[:, ::-1]
    if kind == "homflypt":
        n, d = vectors.shape
        return vectors.reshape(n, d // n_a, n_a)[:, :, ::-1].reshape(n, d)
    raise ValueError(f"mirrors act trivially or are undefined for kind {kind!r}")


def augment_mirrors(cloud: PointCloud, kind: str | None = None) -> tuple[PointCloud, GroupAction]:
    """Append missing mirror rows and return the mirror-pairing action.

    Requires a cloud produced by `vectorize(..., symmetric=True)` (the
    mirror of a coefficient vector is only a reversal when the span is
    symmetric). Palindromic rows are their own mirrors and stay fixed;
    appended rows get the negated signature. Idempotent: a cloud that
    already contains every mirror is returned unchanged.
    """
    kind = kind if kind is not None else cloud.meta.get("invariant")
    if kind not in MIRRORABLE_KINDS:
        raise ValueError(f"mirror augmentation applies to {MIRRORABLE_KINDS}, got {kind!r}")
    if kind == "jones":
        lo, hi = cloud.meta.get("span", (None, None))
        n_a = None
    else:
        lo, hi = cloud.meta.get("span_a", (None, None))
        n_a = None if lo is None else hi - lo + 1
    if lo is None or lo != -hi:
        raise ValueError(
            "cloud span is not symmetric; rebuild with vectorize(..., symmetric=True)"
        )
    vectors = cloud.points
    mirrored = mirror_vectors(vectors, kind, n_a)
    n = vectors.shape[0]

    occurrences: dict[bytes, list[int]] = {}
    for i in range(n):
        occurrences.setdefault(vectors[i].tobytes(), []).append(i)

    names = list(cloud.meta.get("names", [str(i) for i in range(n)]))
    partner: dict[int, int] = {}
    new_rows: list[np.ndarray] = []
    new_cols: dict[str, list[float]] = {name: [] for name in cloud.columns}
    new_names: list[str] = []

    def append_mirror(of: int) -> int:
        idx = n + len(new_rows)
        new_rows.append(mirrored[of])
        for cname in cloud.columns:
            value = float(cloud.columns[cname][of])
            new_cols[cname].append(-value if cname == "signature" else value)
        new_names.append(f"mir({names[of]})")
        return idx

    done: set[bytes] = set()
    for key, idxs in occurrences.items():
        if key in done:
            continue
        done.add(key)
        mkey = mirrored[idxs[0]].tobytes()
        if mkey == key:
            for i in idxs:  # palindromic: fixed points of the pairing
                partner[i] = i
            continue
        midxs = occurrences.get(mkey, [])
        done.add(mkey)
        for i, j in zip(idxs, midxs):
            partner[i] = j
            partner[j] = i
        for i in idxs[len(midxs):]:
            j = append_mirror(i)
            partner[i] = j
            partner[j] = i
        for j in midxs[len(idxs):]:
            i = append_mirror(j)
            partner[j] = i
            partner[i] = j

    if new_rows:
        points = np.vstack([vectors, np.array(new_rows)])
        columns = {
            cname: np.concatenate([cloud.columns[cname], new_cols[cname]])
            for cname in cloud.columns
        }
        meta = dict(cloud.meta)
        meta["names"] = names + new_names
        out = PointCloud(points=points, columns=columns, id=f"{cloud.id}+mirrors", meta=meta)
    else:
        out = cloud
    perm = np.array([partner[i] for i in range(out.n_points)], dtype=np.int64)
    action = GroupAction.from_permutations([perm], cloud_id=out.id)
    return out, action


def read_knot_csv(path, kind: str) -> list[KnotRecord]:
    """Load the documented coefficient CSV formats.

    One variable: header ``name,min_exp,c_0,...,c_k,signature,crossings``.
    Two variables (homflypt): per row
    ``name,min_a,min_z,rows,cols,<rows*cols coefficients>,signature,crossings``
    with z indexing rows and a indexing columns; a header starting with
    "name" is skipped.
    """
    records = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        rows = [r for r in reader if r]
    if not rows:
        raise EmptyCollection(f"{path}: no rows")
    if kind == "homflypt":
        for row in rows:
            if row[0].strip() == "name":
                continue
            name = row[0]
            a_lo, z_lo, n_z, n_a = (int(v) for v in row[1:5])
            body = row[5 : 5 + n_z * n_a]
            if len(body) != n_z * n_a or len(row) != 5 + n_z * n_a + 2:
                raise ValueError(f"{path}: row {name!r} does not hold rows*cols coefficients")
            coeffs = {}
            for pos, cell in enumerate(body):
                c = int(cell)
                if c:
                    coeffs[(a_lo + pos % n_a, z_lo + pos // n_a)] = c
            records.append(
                KnotRecord(
                    name=name,
                    kind=kind,
                    coefficients=coeffs,
                    signature=int(row[-2]),
                    crossings=int(row[-1]),
                )
            )
        return records
    header = rows[0]
    if header[0].strip() != "name":
        raise ValueError(f"{path}: expected a header starting with 'name'")
    width = len(header) - 4  # name, min_exp, ..., signature, crossings
    for row in rows[1:]:
        if len(row) != len(header):
            raise ValueError(f"{path}: row {row[0]!r} has {len(row)} cells, header has {len(header)}")
        lo = int(row[1])
        coeffs = {lo + j: int(row[2 + j]) for j in range(width) if int(row[2 + j])}
        records.append(
            KnotRecord(
                name=row[0],
                kind=kind,
                coefficients=coeffs,
                signature=int(row[-2]),
                crossings=int(row[-1]),
            )
        )
    return records


def write_knot_csv(records: Sequence[KnotRecord], path) -> None:
    kind = _common_kind(records)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if kind == "homflypt":
            writer.writerow(["name", "min_a", "min_z", "rows", "cols", "...", "signature", "crossings"])
            for r in records:
                a_lo, a_hi = _span((ea for ea, _ in r.coefficients), None, False)
                z_lo, z_hi = _span((ez for _, ez in r.coefficients), None, False)
                n_a, n_z = a_hi - a_lo + 1, z_hi - z_lo + 1
                body = [0] * (n_a * n_z)
                for (ea, ez), c in r.coefficients.items():
                    body[(ez - z_lo) * n_a + (ea - a_lo)] = c
                writer.writerow([r.name, a_lo, z_lo, n_z, n_a, *body, r.signature, r.crossings])
            return
        lo, hi = _span((e for r in records for e in r.coefficients), None, False)
        width = hi - lo + 1
        writer.writerow(["name", "min_exp", *(f"c_{j}" for j in range(width)), "signature", "crossings"])
        for r in records:
            body = [0] * width
            for e, c in r.coefficients.items():
                body[e - lo] = c
            writer.writerow([r.name, lo, *body, r.signature, r.crossings])


def trefoil_and_unknot(kind: str) -> list[KnotRecord]:
    """The worked two-knot example: unknot and right-handed trefoil."""
    tables = {
        "alexander": ({0: 1}, {-1: 1, 0: -1, 1: 1}),
        "jones": ({0: 1}, {1: 1, 3: 1, 4: -1}),
        "homflypt": ({(0, 0): 1}, {(4, 0): -1, (2, 0): 2, (2, 2): 1}),
    }
    unknot_c, trefoil_c = tables[kind]
    return [
        KnotRecord(name="unknot", kind=kind, coefficients=unknot_c, signature=0, crossings=0),
        KnotRecord(name="trefoil", kind=kind, coefficients=trefoil_c, signature=-2, crossings=3),
    ]
