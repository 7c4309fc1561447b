"""Sparse n-dimensional array algebra with partitioning and a query language.

Arrays are finite partial functions from integer index tuples to tagged
values.  The operator set (project, select, cross, transform, union and the
derived joins) is closed over that model, and the same operators double as
the partitioning/reassembly machinery for distributing arrays.
"""

from .core import (
    Array,
    ArrayV,
    FloatV,
    Index,
    IntV,
    StrV,
    TupleV,
    UNDEF,
    Undef,
    Value,
    as_value,
    make_array,
    to_python,
)
from .predicates import (
    And,
    Cmp,
    CoordCmp,
    CoordConst,
    FALSE,
    ItemCmp,
    Not,
    Or,
    Predicate,
    TRUE,
    ValueCmp,
    holds,
)
from .transforms import (
    Compact,
    InsertDim,
    InsertFromTable,
    Permute,
    RemapDim,
    RemoveDim,
    Step,
    Translate,
    record_steps,
)
from .algebra import (
    anti_join,
    cross,
    equi_join,
    invert,
    join_condition,
    project,
    select,
    semi_join,
    transform,
    union,
)
from .distribution import (
    Fragment,
    HorizontalSplit,
    Placement,
    VerticalSplit,
    partition_horizontal,
    partition_vertical,
    push_select,
    reassemble,
)
from .relbridge import (
    Column,
    DimensionLabels,
    TableSchema,
    decode_table,
    encode_table,
    label_select,
)
from . import arrfile, errors, manifest, qlang

__version__ = "0.1.0"

__all__ = [
    "And",
    "Array",
    "ArrayV",
    "Cmp",
    "Column",
    "Compact",
    "CoordCmp",
    "CoordConst",
    "DimensionLabels",
    "FALSE",
    "FloatV",
    "Fragment",
    "HorizontalSplit",
    "Index",
    "InsertDim",
    "InsertFromTable",
    "IntV",
    "ItemCmp",
    "Not",
    "Or",
    "Permute",
    "Placement",
    "Predicate",
    "RemapDim",
    "RemoveDim",
    "Step",
    "StrV",
    "TRUE",
    "TableSchema",
    "Translate",
    "TupleV",
    "UNDEF",
    "Undef",
    "Value",
    "ValueCmp",
    "VerticalSplit",
    "anti_join",
    "arrfile",
    "as_value",
    "cross",
    "decode_table",
    "encode_table",
    "equi_join",
    "errors",
    "holds",
    "invert",
    "join_condition",
    "label_select",
    "make_array",
    "manifest",
    "partition_horizontal",
    "partition_vertical",
    "project",
    "push_select",
    "qlang",
    "reassemble",
    "record_steps",
    "select",
    "semi_join",
    "to_python",
    "transform",
    "union",
]
