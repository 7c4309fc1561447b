"""Partitioning arrays into fragments and putting them back together.

Naming note, worth reading twice: *vertical* partitioning here splits the
support (the index set) into disjoint pieces recombined by union, while
*horizontal* partitioning splits each association's value tuple across
fragments that all duplicate the index, recombined by equi-joins on the
index.  This is the reverse of the usual relational row/column convention;
the glossary in the README spells it out.

Fragments live on simulated shards: a placement is data plus labels, there
is no networking here.  Because a placement also knows the scheme that
produced it, reassembly never consults the original array.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .core import Array, TupleV, Value
from .errors import (
    BadSlices,
    NotDisjoint,
    NotExhaustive,
    NotPushable,
    NotTupleValued,
)
from .predicates import (
    And,
    ItemCmp,
    Not,
    Or,
    Predicate,
    ValueCmp,
    check_dims,
    holds,
    referenced_positions,
    references_value,
)
from .transforms import RemoveDim
from . import algebra


@dataclass(frozen=True)
class VerticalSplit:
    """Fragment k holds the associations matching ``predicates[k]``."""

    predicates: Tuple[Predicate, ...]

    def __post_init__(self):
        object.__setattr__(self, "predicates", tuple(self.predicates))


@dataclass(frozen=True)
class HorizontalSplit:
    """Fragment k holds the value components at positions ``slices[k]``."""

    slices: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "slices", tuple(tuple(sorted(s)) for s in self.slices)
        )


PartitionScheme = VerticalSplit | HorizontalSplit


@dataclass(frozen=True)
class Fragment:
    fragment_id: str
    array: Array
    shard_id: str


@dataclass(frozen=True)
class Placement:
    fragments: Tuple[Fragment, ...]
    scheme: PartitionScheme
    origin_arity: int

    def __post_init__(self):
        object.__setattr__(self, "fragments", tuple(self.fragments))
        ids = [f.fragment_id for f in self.fragments]
        if len(set(ids)) != len(ids):
            raise ValueError("fragment ids must be unique")


def _shard_ids(n: int, shard_ids: Optional[Sequence[str]]) -> list:
    if shard_ids is None:
        return [f"shard-{k}" for k in range(n)]
    if len(shard_ids) != n:
        raise ValueError(f"expected {n} shard ids, got {len(shard_ids)}")
    return list(shard_ids)


def partition_vertical(
    array: Array,
    predicates: Sequence[Predicate],
    shard_ids: Optional[Sequence[str]] = None,
) -> Placement:
    """Split the support by a family of predicates, one fragment each.

    The predicates must be pairwise disjoint and jointly exhaustive over the
    concrete support; both are checked extensionally and the error names a
    witnessing index.
    """
    predicates = tuple(predicates)
    for pred in predicates:
        check_dims(pred, array.arity)
    for index, value in array.items():
        matches = [k for k, p in enumerate(predicates) if holds(p, index, value)]
        if len(matches) > 1:
            raise NotDisjoint(
                f"index {index!r} matches predicates {matches[0]} and {matches[1]}",
                index=index,
            )
        if not matches:
            raise NotExhaustive(
                f"index {index!r} matches no partition predicate", index=index
            )
    shards = _shard_ids(len(predicates), shard_ids)
    fragments = tuple(
        Fragment(f"f{k}", algebra.select(array, p), shards[k])
        for k, p in enumerate(predicates)
    )
    return Placement(fragments, VerticalSplit(predicates), array.arity)


def _tuple_width(array: Array) -> Optional[int]:
    """Uniform TupleV arity of the array's values, or None for empty arrays."""
    width = None
    for index, value in array.items():
        if not isinstance(value, TupleV):
            raise NotTupleValued(f"value at {index!r} is not a tuple")
        if width is None:
            width = len(value.items)
        elif len(value.items) != width:
            raise NotTupleValued(
                f"value at {index!r} has {len(value.items)} components, expected {width}"
            )
    return width


def _check_slices(slices: Sequence, width: Optional[int]) -> tuple:
    slices = tuple(tuple(sorted(set(int(p) for p in s))) for s in slices)
    if not slices:
        raise BadSlices("at least one slice is required")
    seen: dict = {}
    for k, s in enumerate(slices):
        if not s:
            raise BadSlices(f"slice {k} is empty")
        for p in s:
            if p < 0:
                raise BadSlices(f"negative position {p} in slice {k}")
            if p in seen:
                raise BadSlices(f"position {p} appears in slices {seen[p]} and {k}")
            seen[p] = k
    covered = set(seen)
    top = width if width is not None else max(covered) + 1
    missing = set(range(top)) - covered
    if missing:
        raise BadSlices(f"position {min(missing)} is not covered by any slice")
    if width is not None and max(covered) >= width:
        raise BadSlices(
            f"position {max(covered)} is out of range for {width}-component values"
        )
    return slices


def _slice_value(value: TupleV, positions: Tuple[int, ...]) -> Value:
    # a singleton slice stores the bare component, not a 1-tuple
    if len(positions) == 1:
        return value.items[positions[0]]
    return TupleV(tuple(value.items[p] for p in positions))


def partition_horizontal(
    array: Array,
    slices: Sequence,
    shard_ids: Optional[Sequence[str]] = None,
) -> Placement:
    """Split tuple values across fragments that duplicate the index.

    Values must be tuples of uniform width and the slices must partition the
    component positions.  Every fragment has the same support as the input.
    """
    width = _tuple_width(array)
    slices = _check_slices(slices, width)
    shards = _shard_ids(len(slices), shard_ids)
    fragments = []
    for k, positions in enumerate(slices):
        pairs = ((i, _slice_value(v, positions)) for i, v in array.items())
        fragments.append(Fragment(f"f{k}", Array(array.arity, pairs), shards[k]))
    return Placement(tuple(fragments), HorizontalSplit(slices), array.arity)


def _components(value: Value, slice_len: int) -> tuple:
    # the scheme, not the value's shape, decides how to unpack: a singleton
    # slice stored the bare component even when that component is a tuple
    if slice_len == 1:
        return (value,)
    return value.items


def _reassemble_horizontal(placement: Placement) -> Array:
    scheme: HorizontalSplit = placement.scheme
    arity = placement.origin_arity
    all_dims = [(d, d) for d in range(arity)]
    frags = placement.fragments

    acc = frags[0].array
    acc_parts = {i: list(_components(v, len(scheme.slices[0]))) for i, v in acc.items()}
    for k in range(1, len(frags)):
        frag = frags[k].array
        joined = algebra.equi_join(acc, frag, all_dims)
        # drop the duplicated index coordinates contributed by the fragment;
        # the join also intersects supports, which is what makes pushed-down
        # selections on one fragment restrict the whole reassembly
        joined = algebra.transform(joined, [RemoveDim(arity)] * (joined.arity - arity))
        slice_len = len(scheme.slices[k])
        new_parts = {}
        for i, pair in joined.items():
            # the join pairs up (accumulated, fragment) values per index
            frag_value = pair.items[1]
            new_parts[i] = acc_parts[i] + list(_components(frag_value, slice_len))
        acc = joined
        acc_parts = new_parts

    order = [p for s in scheme.slices for p in s]
    pairs = []
    for i, parts in acc_parts.items():
        restored = [None] * len(order)
        for concat_pos, original_pos in enumerate(order):
            restored[original_pos] = parts[concat_pos]
        pairs.append((i, TupleV(tuple(restored))))
    return Array(arity, pairs)


def reassemble(placement: Placement) -> Array:
    """Rebuild the partitioned array from its fragments alone.

    Vertical placements fold union over the fragments; horizontal placements
    equi-join fragments on every index dimension, reduce away the duplicated
    coordinates, and re-flatten the value components into their original
    positions.
    """
    if isinstance(placement.scheme, VerticalSplit):
        result = Array(placement.origin_arity)
        for frag in placement.fragments:
            result = algebra.union(result, frag.array)
        return result
    if not placement.fragments:
        raise ValueError("horizontal placement has no fragments")
    return _reassemble_horizontal(placement)


def _position_slice(scheme: HorizontalSplit, position: int) -> Optional[int]:
    for k, s in enumerate(scheme.slices):
        if position in s:
            return k
    return None


def _localize(pred: Predicate, positions: Tuple[int, ...]) -> Predicate:
    """Rewrite value-position leaves for a fragment holding ``positions``."""
    if isinstance(pred, ItemCmp):
        local = positions.index(pred.position)
        if len(positions) == 1:
            return ValueCmp(pred.op, pred.constant)
        return ItemCmp(pred.op, local, pred.constant)
    if isinstance(pred, And):
        return And(tuple(_localize(c, positions) for c in pred.children))
    if isinstance(pred, Or):
        return Or(tuple(_localize(c, positions) for c in pred.children))
    if isinstance(pred, Not):
        return Not(_localize(pred.child, positions))
    return pred


def push_select(placement: Placement, pred: Predicate) -> Placement:
    """Apply a selection fragment-wise, preserving the reassembly result.

    Any predicate pushes through a vertical placement.  Through a horizontal
    placement a predicate may reference index coordinates (filtered on every
    fragment) and value positions confined to a single slice (filtered on
    that fragment; the join intersects the rest).  Whole-value comparisons
    and predicates spanning slices raise NotPushable.
    """
    check_dims(pred, placement.origin_arity)
    if isinstance(placement.scheme, VerticalSplit):
        fragments = tuple(
            Fragment(f.fragment_id, algebra.select(f.array, pred), f.shard_id)
            for f in placement.fragments
        )
        return Placement(fragments, placement.scheme, placement.origin_arity)

    scheme: HorizontalSplit = placement.scheme
    positions = referenced_positions(pred)
    if not positions:
        if references_value(pred):
            raise NotPushable(
                "whole-value comparisons cannot be pushed through a horizontal split"
            )
        per_fragment = {k: pred for k in range(len(placement.fragments))}
    else:
        slices_touched = set()
        for p in positions:
            k = _position_slice(scheme, p)
            if k is None:
                raise NotPushable(f"value position {p} is outside every slice")
            slices_touched.add(k)
        if len(slices_touched) > 1:
            raise NotPushable(
                f"predicate references value positions in slices {sorted(slices_touched)}"
            )
        if _has_whole_value_leaf(pred):
            raise NotPushable(
                "whole-value comparisons cannot be pushed through a horizontal split"
            )
        target = slices_touched.pop()
        per_fragment = {target: _localize(pred, scheme.slices[target])}
    fragments = []
    for k, f in enumerate(placement.fragments):
        if k in per_fragment:
            fragments.append(
                Fragment(f.fragment_id, algebra.select(f.array, per_fragment[k]), f.shard_id)
            )
        else:
            fragments.append(f)
    return Placement(tuple(fragments), placement.scheme, placement.origin_arity)


def _has_whole_value_leaf(pred: Predicate) -> bool:
    if isinstance(pred, ValueCmp):
        return True
    if isinstance(pred, (And, Or)):
        return any(_has_whole_value_leaf(c) for c in pred.children)
    if isinstance(pred, Not):
        return _has_whole_value_leaf(pred.child)
    return False
