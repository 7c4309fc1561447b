"""Placement manifests: a partitioning persisted as expressions plus files.

A manifest is a small JSON document describing how an array was split: the
scheme (as query-language text, so it can be re-evaluated), the fragment
file names, their shard ids, and the origin arity.  The fragments
themselves live in exchange-format files next to the manifest.  Keeping the
defining expressions in the manifest makes the distributed layout
self-describing: any engine can re-derive or audit the fragments from the
source array.
"""

from __future__ import annotations

import json
import os
from typing import Optional, Sequence, Tuple

from . import arrfile, distribution
from .distribution import Fragment, HorizontalSplit, Placement, VerticalSplit
from .errors import ConsistencyViolation, FormatError
from .qlang import parse_predicate, parse_slices, print_pred

FORMAT = "arrac-placement v1"


def fragment_expr(source_text: str, placement: Placement, k: int) -> Optional[str]:
    """Query text that recomputes fragment k from the source expression.

    Vertical fragments are plain selections.  Horizontal fragments slice
    value tuples, which no query operator does, so they have no standalone
    defining expression; the placement expression plus the fragment's
    position is the authoritative description and None is returned here.
    """
    if isinstance(placement.scheme, VerticalSplit):
        pred = placement.scheme.predicates[k]
        return f"select({source_text}, {print_pred(pred)})"
    return None


def placement_expr(source_text: str, placement: Placement) -> str:
    if isinstance(placement.scheme, VerticalSplit):
        preds = ", ".join(print_pred(p) for p in placement.scheme.predicates)
        return f"vpartition({source_text}, {preds})"
    groups = ", ".join(
        "{" + ", ".join(str(p) for p in g) + "}" for g in placement.scheme.slices
    )
    return f"hpartition({source_text}, [{groups}])"


def build(placement: Placement, source_text: str, files: Sequence[str]) -> dict:
    """The manifest document for a placement whose fragments go to ``files``."""
    if len(files) != len(placement.fragments):
        raise ValueError("one file name per fragment is required")
    doc = {
        "format": FORMAT,
        "kind": "vertical" if isinstance(placement.scheme, VerticalSplit) else "horizontal",
        "source": source_text,
        "expression": placement_expr(source_text, placement),
        "origin_arity": placement.origin_arity,
        "fragments": [],
    }
    if isinstance(placement.scheme, VerticalSplit):
        doc["predicates"] = [print_pred(p) for p in placement.scheme.predicates]
    else:
        doc["slices"] = [list(g) for g in placement.scheme.slices]
    for k, (fragment, file) in enumerate(zip(placement.fragments, files)):
        entry = {
            "id": fragment.fragment_id,
            "file": file,
            "shard": fragment.shard_id,
        }
        expr = fragment_expr(source_text, placement, k)
        if expr is not None:
            entry["expr"] = expr
        doc["fragments"].append(entry)
    return doc


def save(path, doc: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load(path) -> dict:
    if not os.path.exists(path):
        raise FormatError(f"no such manifest: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"manifest is not valid JSON: {exc}") from exc
    _validate(doc, path)
    return doc


def _validate(doc, path) -> None:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise FormatError(f"{path}: not a {FORMAT} manifest")
    kind = doc.get("kind")
    if kind not in ("vertical", "horizontal"):
        raise FormatError(f"{path}: bad kind {kind!r}")
    if kind == "vertical" and not doc.get("predicates"):
        raise FormatError(f"{path}: vertical manifest without predicates")
    if kind == "horizontal" and not doc.get("slices"):
        raise FormatError(f"{path}: horizontal manifest without slices")
    fragments = doc.get("fragments")
    if not isinstance(fragments, list) or not fragments:
        raise FormatError(f"{path}: manifest lists no fragments")
    for entry in fragments:
        if not isinstance(entry, dict) or not all(
            isinstance(entry.get(k), str) for k in ("id", "file", "shard")
        ):
            raise FormatError(f"{path}: bad fragment entry {entry!r}")
    if not isinstance(doc.get("origin_arity"), int) or doc["origin_arity"] < 1:
        raise FormatError(f"{path}: bad origin_arity")
    if kind == "vertical" and len(doc["predicates"]) != len(fragments):
        raise FormatError(f"{path}: predicate/fragment count mismatch")
    if kind == "horizontal" and len(doc["slices"]) != len(fragments):
        raise FormatError(f"{path}: slice/fragment count mismatch")


def load_placement(manifest_path) -> Tuple[Placement, dict]:
    """Read a manifest and its fragment files back into a Placement.

    Fragment files are resolved relative to the manifest's directory.
    """
    doc = load(manifest_path)
    base = os.path.dirname(os.path.abspath(manifest_path))
    if doc["kind"] == "vertical":
        scheme = VerticalSplit(
            tuple(parse_predicate(text) for text in doc["predicates"])
        )
    else:
        scheme = HorizontalSplit(parse_slices(_slices_text(doc["slices"])))
    fragments = []
    for entry in doc["fragments"]:
        array, _ = arrfile.load(os.path.join(base, entry["file"]))
        fragments.append(Fragment(entry["id"], array, entry["shard"]))
    return Placement(tuple(fragments), scheme, doc["origin_arity"]), doc


def _slices_text(groups) -> str:
    return "[" + ", ".join("{" + ", ".join(str(p) for p in g) + "}" for g in groups) + "]"


def check_fragments(placement: Placement, doc: dict, catalog) -> None:
    """Re-evaluate the manifest's expression and compare against the files.

    Raises ConsistencyViolation naming the first fragment whose stored file
    disagrees with what the expression computes from the catalog.
    """
    from .qlang import evaluate, parse

    recomputed = evaluate(parse(doc["expression"]), catalog)
    if not isinstance(recomputed, distribution.Placement):
        raise ConsistencyViolation("manifest expression is not a partitioning")
    if len(recomputed.fragments) != len(placement.fragments):
        raise ConsistencyViolation("manifest expression yields a different fragment count")
    for stored, fresh in zip(placement.fragments, recomputed.fragments):
        if stored.array != fresh.array:
            raise ConsistencyViolation(
                f"fragment {stored.fragment_id!r} does not match its defining expression"
            )
