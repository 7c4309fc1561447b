import random

import pytest

from arrac import (
    UNDEF,
    Array,
    ArrayV,
    FloatV,
    IntV,
    StrV,
    TupleV,
    Undef,
    as_value,
    to_python,
)
from arrac.errors import ArityMismatch, ConsistencyViolation

from randgen import rand_array


def paper_matrix() -> Array:
    return Array(2, [((0, 0), "a"), ((0, 1), "b"), ((1, 0), "c"), ((1, 1), "d")])


def test_lookup_and_support():
    m = paper_matrix()
    assert m.arity == 2
    assert len(m) == 4
    assert m[(1, 1)] == StrV("d")
    assert m.get((5, 5)) is None
    assert m.support() == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_items_are_lexicographically_ordered():
    a = Array(2, [((2, 0), 1), ((0, 5), 2), ((0, 1), 3), ((-1, 9), 4)])
    assert [i for i, _ in a.items()] == [(-1, 9), (0, 1), (0, 5), (2, 0)]


def test_duplicate_index_same_value_is_merged():
    a = Array(1, [((0,), "x"), ((0,), "x")])
    assert len(a) == 1


def test_conflicting_duplicate_raises_with_witness():
    with pytest.raises(ConsistencyViolation) as err:
        Array(1, [((0,), "x"), ((0,), "y")])
    assert err.value.index == (0,)


def test_arity_is_checked_per_index():
    with pytest.raises(ArityMismatch):
        Array(2, [((0,), "x")])
    with pytest.raises(ArityMismatch):
        paper_matrix().get((0,))
    with pytest.raises(ValueError):
        Array(0)


def test_undef_is_stored_not_absent():
    a = Array(1, [((0,), None)])
    assert a.get((0,)) is UNDEF
    assert (0,) in a
    assert (1,) not in a
    # absence still reads as None through get
    assert a.get((1,)) is None


def test_undef_is_a_singleton():
    assert Undef() is UNDEF
    assert as_value(None) is UNDEF


def test_value_coercion_round_trip():
    cases = [3, -7, 2.5, "hi", None, (1, "a", None), (1, (2, 3))]
    for obj in cases:
        assert to_python(as_value(obj)) == obj
    inner = Array(1, [((0,), 1)])
    assert to_python(as_value(inner)) == inner


def test_bool_coerces_to_int_value():
    assert as_value(True) == IntV(1)


def test_float_equality_is_bitwise():
    assert FloatV(0.0) != FloatV(-0.0)
    assert FloatV(1.5) == FloatV(1.5)
    assert hash(FloatV(2.5)) == hash(FloatV(2.5))
    # a containing array therefore distinguishes the two zeros
    with pytest.raises(ConsistencyViolation):
        Array(1, [((0,), 0.0), ((0,), -0.0)])


def test_nan_is_rejected():
    with pytest.raises(ValueError):
        FloatV(float("nan"))
    with pytest.raises(ValueError):
        Array(1, [((0,), float("nan"))])


def test_tuple_value_needs_items():
    with pytest.raises(ValueError):
        TupleV(())
    t = TupleV((IntV(1), StrV("a")))
    assert len(t) == 2


def test_nested_array_values():
    inner = Array(1, [((0,), "deep")])
    outer = Array(1, [((0,), inner)])
    v = outer[(0,)]
    assert isinstance(v, ArrayV)
    assert v.array[(0,)] == StrV("deep")


def test_arrays_hash_and_compare_structurally():
    rng = random.Random(7)
    for _ in range(50):
        a = rand_array(rng)
        b = Array(a.arity, list(reversed(list(a.items()))))
        assert a == b
        assert hash(a) == hash(b)


def test_empty_array_of_any_arity():
    for arity in range(1, 5):
        a = Array(arity)
        assert len(a) == 0
        assert a.support() == frozenset()
