"""Expression trees for the textual query language.

Each node mirrors one engine operator, so evaluation is a direct structural
recursion.  Nodes are immutable and compare structurally; the source span
(line, column of the first token) is carried for diagnostics but excluded
from equality, which is what makes ``parse(print(e)) == e`` a meaningful
statement.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Tuple

from ..core import Array
from ..predicates import Predicate
from ..transforms import Step

Span = Tuple[int, int]  # (line, column), both 1-based

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True, slots=True)
class Ref:
    name: str
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Project:
    child: "Expr"
    indexes: Tuple[Tuple[int, ...], ...]
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Select:
    child: "Expr"
    pred: Predicate
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Cross:
    left: "Expr"
    right: "Expr"
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Transform:
    child: "Expr"
    steps: Tuple[Step, ...]
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Union:
    left: "Expr"
    right: "Expr"
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class EquiJoin:
    left: "Expr"
    right: "Expr"
    on: Tuple[Tuple[int, int], ...]
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class SemiJoin:
    left: "Expr"
    right: "Expr"
    on: Tuple[Tuple[int, int], ...]
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class AntiJoin:
    left: "Expr"
    right: "Expr"
    on: Tuple[Tuple[int, int], ...]
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class VPartition:
    child: "Expr"
    predicates: Tuple[Predicate, ...]
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class HPartition:
    child: "Expr"
    slices: Tuple[Tuple[int, ...], ...]
    span: Optional[Span] = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Reassemble:
    child: "Expr"
    span: Optional[Span] = field(default=None, compare=False)


Expr = (
    Ref
    | Project
    | Select
    | Cross
    | Transform
    | Union
    | EquiJoin
    | SemiJoin
    | AntiJoin
    | VPartition
    | HPartition
    | Reassemble
)


def children(expr: Expr) -> tuple:
    """Direct subexpressions, left to right."""
    if isinstance(expr, Ref):
        return ()
    if isinstance(expr, (Cross, Union, EquiJoin, SemiJoin, AntiJoin)):
        return (expr.left, expr.right)
    return (expr.child,)


class Catalog:
    """Named array bindings: the database the language's Refs resolve in."""

    __slots__ = ("_arrays",)

    def __init__(self, arrays: Optional[Mapping[str, Array]] = None):
        self._arrays = {}
        if arrays:
            for name, array in arrays.items():
                self.bind(name, array)

    def bind(self, name: str, array: Array) -> None:
        if not _NAME_RE.match(name):
            raise ValueError(f"{name!r} is not a usable array name")
        if not isinstance(array, Array):
            raise TypeError("catalog values must be Array instances")
        self._arrays[name] = array

    def lookup(self, name: str) -> Optional[Array]:
        return self._arrays.get(name)

    def names(self) -> list:
        return sorted(self._arrays)

    def __contains__(self, name) -> bool:
        return name in self._arrays

    def __len__(self) -> int:
        return len(self._arrays)
