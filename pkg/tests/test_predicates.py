import random

import pytest

from arrac import (
    FALSE,
    TRUE,
    And,
    Cmp,
    CoordCmp,
    CoordConst,
    ItemCmp,
    Not,
    Or,
    UNDEF,
    ValueCmp,
    as_value,
    holds,
)
from arrac.errors import PredicateArity
from arrac.predicates import check_dims, referenced_dims, referenced_positions, references_value

from randgen import rand_array, rand_pred


IDX = (2, 5)


def test_value_comparison():
    assert holds(ValueCmp(Cmp.EQ, "b"), IDX, as_value("b"))
    assert not holds(ValueCmp(Cmp.EQ, "b"), IDX, as_value("c"))
    assert holds(ValueCmp(Cmp.LT, 10), IDX, as_value(3))
    assert holds(ValueCmp(Cmp.NE, 10), IDX, UNDEF)


def test_ordered_comparison_stays_within_one_tag():
    # 3 < "x" is not an ordering question we answer; it is just False
    assert not holds(ValueCmp(Cmp.LT, "x"), IDX, as_value(3))
    assert not holds(ValueCmp(Cmp.GE, 1), IDX, as_value("zzz"))
    assert not holds(ValueCmp(Cmp.LT, 5.0), IDX, as_value(3))  # int vs float tags


def test_item_comparison():
    v = as_value((7, "mid", 1.5))
    assert holds(ItemCmp(Cmp.EQ, 1, "mid"), IDX, v)
    assert holds(ItemCmp(Cmp.GT, 0, 5), IDX, v)
    assert not holds(ItemCmp(Cmp.EQ, 9, "mid"), IDX, v)  # out of range
    assert not holds(ItemCmp(Cmp.EQ, 0, 7), IDX, as_value(7))  # not a tuple


def test_coordinate_comparisons():
    assert holds(CoordCmp(Cmp.LT, 0, 1), IDX, UNDEF)
    assert not holds(CoordCmp(Cmp.EQ, 0, 1), IDX, UNDEF)
    assert holds(CoordConst(Cmp.EQ, 1, 5), IDX, UNDEF)
    assert holds(CoordConst(Cmp.NE, 0, 3), IDX, UNDEF)


def test_boolean_connectives():
    p = And(CoordConst(Cmp.GE, 0, 0), CoordConst(Cmp.LE, 0, 9))
    assert holds(p, IDX, UNDEF)
    q = Or(CoordConst(Cmp.EQ, 0, 99), Not(FALSE))
    assert holds(q, IDX, UNDEF)
    assert holds(TRUE, IDX, UNDEF)
    assert not holds(FALSE, IDX, UNDEF)


def test_connectives_need_two_children():
    with pytest.raises(ValueError):
        And(TRUE)
    with pytest.raises(ValueError):
        Or(FALSE)


def test_check_dims():
    check_dims(CoordConst(Cmp.EQ, 1, 0), 2)
    with pytest.raises(PredicateArity):
        check_dims(CoordConst(Cmp.EQ, 2, 0), 2)
    with pytest.raises(PredicateArity):
        check_dims(And(TRUE, CoordCmp(Cmp.EQ, 0, 5)), 3)
    with pytest.raises(PredicateArity):
        check_dims(CoordConst(Cmp.EQ, -1, 0), 2)


def test_reference_introspection():
    p = And(CoordConst(Cmp.EQ, 1, 0), Not(ItemCmp(Cmp.EQ, 2, "x")))
    assert referenced_dims(p) == {1}
    assert referenced_positions(p) == {2}
    assert references_value(p)
    assert not references_value(CoordCmp(Cmp.LT, 0, 1))
    assert references_value(ValueCmp(Cmp.EQ, 1))
    assert referenced_positions(ValueCmp(Cmp.EQ, 1)) == frozenset()


def test_holds_is_total_on_random_inputs():
    rng = random.Random(11)
    for _ in range(300):
        a = rand_array(rng)
        p = rand_pred(rng, a.arity)
        for i, v in a.items():
            assert holds(p, i, v) in (True, False)


def test_de_morgan_on_random_predicates():
    rng = random.Random(13)
    for _ in range(200):
        a = rand_array(rng, max_size=8)
        p = rand_pred(rng, a.arity)
        q = rand_pred(rng, a.arity)
        for i, v in a.items():
            lhs = holds(Not(And(p, q)), i, v)
            rhs = holds(Or(Not(p), Not(q)), i, v)
            assert lhs == rhs
