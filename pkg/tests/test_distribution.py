import random

import pytest

from arrac import (
    Array,
    Cmp,
    CoordConst,
    Fragment,
    ItemCmp,
    Not,
    Placement,
    TRUE,
    TupleV,
    ValueCmp,
    VerticalSplit,
    partition_horizontal,
    partition_vertical,
    push_select,
    reassemble,
    select,
    union,
)
from arrac.errors import (
    BadSlices,
    ConsistencyViolation,
    NotDisjoint,
    NotExhaustive,
    NotPushable,
    NotTupleValued,
)

from randgen import rand_array, rand_partition_preds, rand_pred, rand_slices, rand_tuple_array


def halves(dim=0, at=0):
    return [CoordConst(Cmp.LT, dim, at), CoordConst(Cmp.GE, dim, at)]


def test_vertical_fragments_partition_the_support():
    rng = random.Random(47)
    a = rand_array(rng, arity=2, max_size=20)
    placement = partition_vertical(a, halves())
    sizes = [len(f.array) for f in placement.fragments]
    assert sum(sizes) == len(a)
    supports = [f.array.support() for f in placement.fragments]
    assert supports[0] & supports[1] == frozenset()


def test_vertical_round_trip():
    rng = random.Random(53)
    for _ in range(50):
        a = rand_array(rng, max_size=15)
        placement = partition_vertical(a, rand_partition_preds(rng, a.arity))
        assert reassemble(placement) == a


def test_vertical_rejects_overlapping_predicates():
    a = Array(1, [((0,), "x")])
    with pytest.raises(NotDisjoint) as err:
        partition_vertical(a, [TRUE, CoordConst(Cmp.EQ, 0, 0)])
    assert err.value.index == (0,)


def test_vertical_rejects_gaps():
    a = Array(1, [((5,), "x")])
    with pytest.raises(NotExhaustive) as err:
        partition_vertical(a, halves(at=0)[:1])
    assert err.value.index == (5,)


def test_single_fragment_scheme():
    a = Array(1, [((0,), "x")])
    placement = partition_vertical(a, [TRUE])
    assert len(placement.fragments) == 1
    assert reassemble(placement) == a


def test_shard_ids_default_and_custom():
    a = Array(1, [((0,), "x")])
    placement = partition_vertical(a, halves(), shard_ids=["east", "west"])
    assert [f.shard_id for f in placement.fragments] == ["east", "west"]
    placement = partition_vertical(a, halves())
    assert [f.shard_id for f in placement.fragments] == ["shard-0", "shard-1"]


def test_horizontal_fragments_duplicate_the_index():
    t = Array(1, [((0,), (1, "x", 2.5)), ((1,), (2, "y", 3.5))])
    placement = partition_horizontal(t, [{0}, {1, 2}])
    for fragment in placement.fragments:
        assert fragment.array.support() == t.support()
    # singleton slice stores the bare component
    assert placement.fragments[0].array[(0,)].value == 1
    assert placement.fragments[1].array[(0,)] == TupleV(t[(0,)].items[1:])


def test_horizontal_round_trip():
    rng = random.Random(59)
    for _ in range(50):
        width = rng.randint(1, 4)
        t = rand_tuple_array(rng, rng.randint(1, 3), width)
        placement = partition_horizontal(t, rand_slices(rng, width))
        assert reassemble(placement) == t


def test_horizontal_needs_uniform_tuples():
    with pytest.raises(NotTupleValued):
        partition_horizontal(Array(1, [((0,), 3)]), [{0}])
    ragged = Array(1, [((0,), (1, 2)), ((1,), (1, 2, 3))])
    with pytest.raises(NotTupleValued):
        partition_horizontal(ragged, [{0}, {1}])


def test_bad_slices_are_rejected():
    t = Array(1, [((0,), (1, 2, 3))])
    with pytest.raises(BadSlices):
        partition_horizontal(t, [{0}, {0, 1}, {2}])  # overlap
    with pytest.raises(BadSlices):
        partition_horizontal(t, [{0}, {2}])  # gap
    with pytest.raises(BadSlices):
        partition_horizontal(t, [{0, 1, 2}, set()])  # empty group
    with pytest.raises(BadSlices):
        partition_horizontal(t, [{0, 1, 2, 3}])  # out of range


def test_push_select_vertical_any_predicate():
    rng = random.Random(61)
    for _ in range(50):
        a = rand_array(rng, max_size=15)
        placement = partition_vertical(a, rand_partition_preds(rng, a.arity))
        pred = rand_pred(rng, a.arity)
        pushed = push_select(placement, pred)
        assert reassemble(pushed) == select(a, pred)


def test_push_select_horizontal_index_predicate_goes_everywhere():
    rng = random.Random(67)
    for _ in range(50):
        width = rng.randint(1, 4)
        t = rand_tuple_array(rng, rng.randint(1, 3), width)
        placement = partition_horizontal(t, rand_slices(rng, width))
        pred = rand_pred(rng, t.arity, allow_value=False)
        pushed = push_select(placement, pred)
        assert reassemble(pushed) == select(t, pred)
        for original, filtered in zip(placement.fragments, pushed.fragments):
            assert filtered.array.support() <= original.array.support()


def test_push_select_horizontal_single_slice_value_predicate():
    t = Array(1, [((0,), (1, "x")), ((1,), (2, "y")), ((2,), (1, "z"))])
    placement = partition_horizontal(t, [{0}, {1}])
    pred = ItemCmp(Cmp.EQ, 0, 1)
    pushed = push_select(placement, pred)
    assert reassemble(pushed) == select(t, pred)
    # the untouched fragment is passed through unchanged
    assert pushed.fragments[1].array == placement.fragments[1].array


def test_push_select_not_pushable_cases():
    t = Array(1, [((0,), (1, "x"))])
    placement = partition_horizontal(t, [{0}, {1}])
    with pytest.raises(NotPushable):
        push_select(placement, ValueCmp(Cmp.EQ, (1, "x")))
    from arrac import And

    with pytest.raises(NotPushable):
        push_select(placement, And(ItemCmp(Cmp.EQ, 0, 1), ItemCmp(Cmp.EQ, 1, "x")))
    with pytest.raises(NotPushable):
        push_select(placement, ItemCmp(Cmp.EQ, 7, 1))
    with pytest.raises(NotPushable):
        push_select(placement, Not(ValueCmp(Cmp.EQ, 3)))


def test_push_select_true_is_identity():
    t = Array(1, [((0,), (1, "x"))])
    placement = partition_horizontal(t, [{0}, {1}])
    pushed = push_select(placement, TRUE)
    assert [f.array for f in pushed.fragments] == [f.array for f in placement.fragments]


def test_tampered_vertical_overlap_conflicts():
    a = Array(1, [((0,), "x"), ((1,), "y")])
    placement = partition_vertical(a, halves(at=1))
    # tamper: copy index (0,) into the second fragment with a different value
    bad = union(placement.fragments[1].array, Array(1))
    bad = Array(1, list(bad.items()) + [((0,), "TAMPERED")])
    tampered = Placement(
        (placement.fragments[0], Fragment("f1", bad, "shard-1")),
        placement.scheme,
        placement.origin_arity,
    )
    with pytest.raises(ConsistencyViolation):
        reassemble(tampered)


def test_tampered_horizontal_value_goes_undetected():
    # documented behavior: value edits pair up silently through the join
    t = Array(1, [((0,), (1, "x"))])
    placement = partition_horizontal(t, [{0}, {1}])
    bad = Array(1, [((0,), "EDITED")])
    tampered = Placement(
        (placement.fragments[0], Fragment("f1", bad, "shard-1")),
        placement.scheme,
        placement.origin_arity,
    )
    out = reassemble(tampered)
    assert out[(0,)] == TupleV(t[(0,)].items[:1] + (bad[(0,)],))


def test_placement_fragment_ids_unique():
    a = Array(1, [((0,), "x")])
    frag = Fragment("f0", a, "s")
    with pytest.raises(ValueError):
        Placement((frag, frag), VerticalSplit((TRUE, TRUE)), 1)
