import numpy as np
import pytest

from covergraph.errors import EmptyCollection, MixedKinds
from covergraph.knots import (
    KnotRecord,
    augment_mirrors,
    mirror_vectors,
    read_knot_csv,
    trefoil_and_unknot,
    vectorize,
    write_knot_csv,
)


def test_alexander_table_row_under_span():
    cloud = vectorize(trefoil_and_unknot("alexander"), span=(-2, 2))
    assert cloud.points[1].tolist() == [0, 1, -1, 1, 0]
    assert cloud.points[0].tolist() == [0, 0, 1, 0, 0]
    assert cloud.column("signature").tolist() == [0, -2]


def test_jones_table_row_under_symmetrized_two_knot_span():
    cloud = vectorize(trefoil_and_unknot("jones"), symmetric=True)
    assert cloud.meta["span"] == (-4, 4)
    assert cloud.points[1].tolist() == [0, 0, 0, 0, 0, 1, 0, 1, -1]
    assert cloud.points[0].tolist() == [0, 0, 0, 0, 1, 0, 0, 0, 0]


def test_single_record_needs_no_padding():
    (record,) = [trefoil_and_unknot("jones")[1]]
    cloud = vectorize([record])
    assert cloud.meta["span"] == (1, 4)
    assert cloud.points[0].tolist() == [1, 0, 1, -1]


def test_homflypt_flatten_readback():
    cloud = vectorize(trefoil_and_unknot("homflypt"))
    (a_lo, a_hi), (z_lo, z_hi) = cloud.meta["span_a"], cloud.meta["span_z"]
    n_a = a_hi - a_lo + 1
    for row, record in zip(cloud.points, trefoil_and_unknot("homflypt")):
        rebuilt = {}
        for pos, value in enumerate(row):
            if value:
                rebuilt[(a_lo + pos % n_a, z_lo + pos // n_a)] = int(value)
        assert rebuilt == dict(record.coefficients)


def test_vectorize_alignment_readback_one_variable():
    records = trefoil_and_unknot("alexander")
    cloud = vectorize(records, span=(-3, 3))
    lo, _ = cloud.meta["span"]
    for row, record in zip(cloud.points, records):
        rebuilt = {lo + j: int(v) for j, v in enumerate(row) if v}
        assert rebuilt == dict(record.coefficients)


def test_vectorize_rejects_mixed_and_empty():
    mixed = [trefoil_and_unknot("jones")[0], trefoil_and_unknot("alexander")[1]]
    with pytest.raises(MixedKinds):
        vectorize(mixed)
    with pytest.raises(EmptyCollection):
        vectorize([])


def test_explicit_span_must_contain_collection():
    with pytest.raises(ValueError):
        vectorize(trefoil_and_unknot("jones"), span=(0, 3))


def test_odd_signature_rejected():
    with pytest.raises(ValueError):
        KnotRecord(name="bad", kind="jones", coefficients={0: 1}, signature=3)


def test_mirror_reversal_is_involution(rng):
    vectors = rng.integers(-3, 4, size=(10, 9)).astype(float)
    assert np.array_equal(mirror_vectors(mirror_vectors(vectors, "jones"), "jones"), vectors)
    two_var = rng.integers(-3, 4, size=(10, 15)).astype(float)
    once = mirror_vectors(two_var, "homflypt", n_a=5)
    assert np.array_equal(mirror_vectors(once, "homflypt", n_a=5), two_var)


def test_augment_mirrors_jones():
    cloud = vectorize(trefoil_and_unknot("jones"), symmetric=True)
    augmented, action = augment_mirrors(cloud)
    # unknot is palindromic; the trefoil gains its mirror row
    assert augmented.n_points == 3
    assert augmented.points[2].tolist() == [-1, 1, 0, 1, 0, 0, 0, 0, 0]
    assert augmented.column("signature").tolist() == [0, -2, 2]  # sigma negated
    assert augmented.column("crossings").tolist() == [0, 3, 3]
    assert augmented.meta["names"] == ["unknot", "trefoil", "mir(trefoil)"]
    assert action.order == 2
    g = action.elements[1]
    assert g.tolist() == [0, 2, 1]


def test_augment_mirrors_requires_symmetric_span():
    with pytest.raises(ValueError):
        augment_mirrors(vectorize(trefoil_and_unknot("jones")))


def test_augment_mirrors_idempotent():
    cloud = vectorize(trefoil_and_unknot("jones"), symmetric=True)
    once, action_once = augment_mirrors(cloud)
    twice, action_twice = augment_mirrors(once)
    assert twice is once
    assert [e.tolist() for e in action_twice.elements] == [
        e.tolist() for e in action_once.elements
    ]


def test_augment_mirrors_homflypt_column_reversal():
    cloud = vectorize(trefoil_and_unknot("homflypt"), symmetric=True)
    augmented, action = augment_mirrors(cloud)
    (a_lo, a_hi), (z_lo, z_hi) = augmented.meta["span_a"], augmented.meta["span_z"]
    n_a = a_hi - a_lo + 1
    trefoil, mirror = augmented.points[1], augmented.points[2]
    for pos, value in enumerate(trefoil):
        ea, ez = a_lo + pos % n_a, z_lo + pos // n_a
        assert mirror[(ez - z_lo) * n_a + (-ea - a_lo)] == value  # a -> a^-1
    assert action.order == 2


def test_augment_mirrors_with_duplicate_rows():
    records = trefoil_and_unknot("jones") + [
        KnotRecord(name="trefoil-twin", kind="jones",
                   coefficients={1: 1, 3: 1, 4: -1}, signature=-2, crossings=3)
    ]
    cloud = vectorize(records, symmetric=True)
    augmented, action = augment_mirrors(cloud)
    assert augmented.n_points == 5  # two mirror rows appended
    perm = action.elements[1] if action.order == 2 else action.elements[0]
    assert sorted(perm.tolist()) == list(range(5))
    assert np.array_equal(perm[perm], np.arange(5))  # involution


def test_knot_csv_round_trip(tmp_path):
    for kind in ("alexander", "jones", "homflypt"):
        records = trefoil_and_unknot(kind)
        path = tmp_path / f"{kind}.csv"
        write_knot_csv(records, path)
        loaded = read_knot_csv(path, kind)
        assert [r.name for r in loaded] == [r.name for r in records]
        assert [dict(r.coefficients) for r in loaded] == [dict(r.coefficients) for r in records]
        assert [r.signature for r in loaded] == [r.signature for r in records]
        assert [r.crossings for r in loaded] == [r.crossings for r in records]
