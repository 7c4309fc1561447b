"""Command line front end.

A catalog is a directory of ``<name>.arr`` exchange files; queries resolve
names against it.  Results go to stdout (or ``-o``) in the canonical
exchange text, diagnostics go to stderr only, and failures map to stable
exit codes:

    0  success
    2  query text does not parse (also argparse usage errors)
    3  name resolution or static arity errors
    4  runtime engine errors (conflicts, bad schemes, ...)
    5  file and format errors
    1  anything unexpected
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

from . import arrfile, distribution, manifest, qlang, relbridge
from .core import as_value
from .errors import (
    ArityError,
    ArracError,
    FormatError,
    ParseError,
    SchemaMismatch,
    UnboundName,
)
from .qlang import Catalog


def _load_catalog(directory: str):
    if not os.path.isdir(directory):
        raise FormatError(f"catalog directory {directory!r} does not exist")
    catalog = Catalog()
    labels_by_name = {}
    for filename in sorted(os.listdir(directory)):
        if not filename.endswith(".arr"):
            continue
        name = filename[: -len(".arr")]
        array, labels = arrfile.load(os.path.join(directory, filename))
        try:
            catalog.bind(name, array)
        except ValueError:
            print(f"warning: skipping {filename}: unusable name", file=sys.stderr)
            continue
        labels_by_name[name] = labels
    return catalog, labels_by_name


def _catalog_array(catalog: Catalog, name: str):
    array = catalog.lookup(name)
    if array is None:
        raise UnboundName(f"{name!r} is not bound in the catalog")
    return array


def _emit(text: str, output) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands ----------------------------------------------------------


def _cmd_query(args) -> int:
    catalog, _ = _load_catalog(args.catalog)
    expr = qlang.parse(args.expr)
    kind = qlang.typecheck(expr, catalog)
    if kind.sort != "array":
        raise ArityError(
            "query evaluates to a placement; use the vpartition/hpartition "
            "commands to materialize one"
        )
    result = qlang.evaluate(expr, catalog)
    _emit(arrfile.dumps(result), args.output)
    return 0


def _cmd_load(args) -> int:
    array, labels = arrfile.load(args.path)
    name = args.name or os.path.splitext(os.path.basename(args.path))[0]
    try:
        Catalog().bind(name, array)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    os.makedirs(args.catalog, exist_ok=True)
    arrfile.save(os.path.join(args.catalog, name + ".arr"), array, labels)
    print(
        f"loaded {name}: arity {array.arity}, {len(array)} associations",
        file=sys.stderr,
    )
    return 0


def _cmd_save(args) -> int:
    catalog, labels_by_name = _load_catalog(args.catalog)
    array = _catalog_array(catalog, args.name)
    path = args.output or args.name + ".arr"
    arrfile.save(path, array, labels_by_name.get(args.name))
    print(f"saved {args.name} to {path}", file=sys.stderr)
    return 0


def _write_placement(placement, name: str, outdir: str) -> str:
    os.makedirs(outdir, exist_ok=True)
    files = [f"{name}.{frag.fragment_id}.arr" for frag in placement.fragments]
    for frag, filename in zip(placement.fragments, files):
        arrfile.save(os.path.join(outdir, filename), frag.array)
    doc = manifest.build(placement, name, files)
    manifest_path = os.path.join(outdir, f"{name}.manifest.json")
    manifest.save(manifest_path, doc)
    print(
        f"wrote {len(files)} fragments and {manifest_path}",
        file=sys.stderr,
    )
    return manifest_path


def _shard_list(text):
    return [s for s in text.split(",") if s] if text else None


def _cmd_vpartition(args) -> int:
    catalog, _ = _load_catalog(args.catalog)
    array = _catalog_array(catalog, args.name)
    predicates = [qlang.parse_predicate(text) for text in args.by]
    placement = distribution.partition_vertical(
        array, predicates, _shard_list(args.shards)
    )
    _write_placement(placement, args.name, args.output or ".")
    return 0


def _cmd_hpartition(args) -> int:
    catalog, _ = _load_catalog(args.catalog)
    array = _catalog_array(catalog, args.name)
    slices = qlang.parse_slices(args.slices)
    placement = distribution.partition_horizontal(
        array, slices, _shard_list(args.shards)
    )
    _write_placement(placement, args.name, args.output or ".")
    return 0


def _cmd_reassemble(args) -> int:
    placement, doc = manifest.load_placement(args.manifest)
    if args.verify:
        catalog, _ = _load_catalog(args.catalog)
        manifest.check_fragments(placement, doc, catalog)
    result = distribution.reassemble(placement)
    _emit(arrfile.dumps(result), args.output)
    return 0


# --- delimited tables ----------------------------------------------------


def _read_delimited(path: str, delimiter: str):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh, delimiter=delimiter))
    if not rows or not rows[0]:
        raise FormatError(f"{path}: missing header line", line=1)
    return rows[0], rows[1:]


def _infer_column(cells) -> str:
    tags = set()
    for cell in cells:
        if cell == "":
            continue
        try:
            int(cell)
            tags.add("int")
            continue
        except ValueError:
            pass
        try:
            if float(cell) == float(cell):  # refuse NaN
                tags.add("float")
                continue
        except ValueError:
            pass
        tags.add("str")
    if not tags:
        return "str"
    if tags == {"int"}:
        return "int"
    if tags <= {"int", "float"}:
        return "float"
    return "str"


def _coerce_cell(cell: str, tag: str):
    if cell == "":
        return None
    if tag == "int":
        return int(cell)
    if tag == "float":
        return float(cell)
    return cell


def _cmd_encode_table(args) -> int:
    header, data = _read_delimited(args.path, args.delimiter)
    key_column = None
    names = []
    for raw in header:
        name = raw.strip()
        if name.startswith("*"):
            name = name[1:]
            if key_column is not None:
                raise FormatError("only one key column may be marked", line=1)
            key_column = name
        names.append(name)
    width = len(names)
    for r, row in enumerate(data, start=2):
        if len(row) != width:
            raise FormatError(
                f"row has {len(row)} cells, header has {width}", line=r
            )
    columns = []
    for c, name in enumerate(names):
        tag = _infer_column([row[c] for row in data])
        try:
            columns.append(relbridge.Column(name, tag))
        except ValueError as exc:
            raise FormatError(f"bad column name {name!r}: {exc}", line=1) from exc
    schema = relbridge.TableSchema(tuple(columns), key_column=key_column)
    rows = [
        tuple(_coerce_cell(row[c], columns[c].type_tag) for c in range(width))
        for row in data
    ]
    array, labels = relbridge.encode_table(schema, rows)

    if args.output:
        path = args.output
    else:
        name = args.name or os.path.splitext(os.path.basename(args.path))[0]
        try:
            Catalog().bind(name, array)
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
        os.makedirs(args.catalog, exist_ok=True)
        path = os.path.join(args.catalog, name + ".arr")
    arrfile.save(path, array, labels)
    print(
        f"encoded {len(rows)} rows x {width} columns to {path}",
        file=sys.stderr,
    )
    return 0


def _cell_text(py) -> str:
    if py is None:
        return ""
    if isinstance(py, bool):
        return str(int(py))
    if isinstance(py, int):
        return str(py)
    if isinstance(py, float):
        return arrfile.float_repr(py)
    if isinstance(py, str):
        return py
    return arrfile.format_value(as_value(py))


def _cmd_decode_table(args) -> int:
    if os.path.isfile(args.source):
        array, labels = arrfile.load(args.source)
    else:
        catalog, labels_by_name = _load_catalog(args.catalog)
        array = _catalog_array(catalog, args.source)
        labels = labels_by_name.get(args.source)
    if labels is None or not labels.labels_for(1):
        raise SchemaMismatch(
            "array carries no column labels on dimension 1; not a table encoding"
        )
    by_coord = sorted(labels.labels_for(1).items(), key=lambda kv: kv[1])
    schema = relbridge.TableSchema(tuple(relbridge.Column(n) for n, _ in by_coord))
    rows = relbridge.decode_table(array, labels, schema)
    out = sys.stdout
    close = False
    if args.output:
        out = open(args.output, "w", encoding="utf-8", newline="")
        close = True
    try:
        writer = csv.writer(out, delimiter=args.delimiter, lineterminator="\n")
        writer.writerow([name for name, _ in by_coord])
        for row in rows:
            writer.writerow([_cell_text(cell) for cell in row])
    finally:
        if close:
            out.close()
    return 0


# --- argument parsing and dispatch ---------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arrac",
        description="Sparse array algebra: query, store and partition arrays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output_help):
        p.add_argument(
            "-c", "--catalog", default=".", help="catalog directory (default: .)"
        )
        p.add_argument("-o", "--output", default=None, help=output_help)
        p.add_argument(
            "--format",
            choices=["canonical"],
            default="canonical",
            help="output format (only 'canonical' exists)",
        )

    p = sub.add_parser("query", help="evaluate a query expression")
    common(p, "write the result here instead of stdout")
    p.add_argument("expr", help="query text, e.g. 'select(M, val = \"b\")'")
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser("load", help="validate an exchange file into the catalog")
    common(p, "(unused)")
    p.add_argument("path", help="exchange file to load")
    p.add_argument("--name", default=None, help="catalog name (default: file stem)")
    p.set_defaults(func=_cmd_load)

    p = sub.add_parser("save", help="write a catalog array to a file")
    common(p, "destination path (default: <name>.arr)")
    p.add_argument("name", help="catalog array name")
    p.set_defaults(func=_cmd_save)

    p = sub.add_parser("vpartition", help="split by disjoint index predicates")
    common(p, "output directory for fragments + manifest (default: .)")
    p.add_argument("name", help="catalog array name")
    p.add_argument(
        "--by",
        action="append",
        required=True,
        metavar="PRED",
        help="partition predicate, e.g. 'dim0 = 0' (repeatable)",
    )
    p.add_argument("--shards", default=None, help="comma-separated shard ids")
    p.set_defaults(func=_cmd_vpartition)

    p = sub.add_parser("hpartition", help="split tuple values across fragments")
    common(p, "output directory for fragments + manifest (default: .)")
    p.add_argument("name", help="catalog array name")
    p.add_argument(
        "--slices",
        required=True,
        help="value positions per fragment, e.g. '[{0}, {1, 2}]'",
    )
    p.add_argument("--shards", default=None, help="comma-separated shard ids")
    p.set_defaults(func=_cmd_hpartition)

    p = sub.add_parser("reassemble", help="rebuild an array from a manifest")
    common(p, "write the result here instead of stdout")
    p.add_argument("manifest", help="placement manifest path")
    p.add_argument(
        "--verify",
        action="store_true",
        help="re-evaluate the manifest expression against the catalog first",
    )
    p.set_defaults(func=_cmd_reassemble)

    p = sub.add_parser(
        "encode-table", help="delimited text to a labelled 2-d array"
    )
    common(p, "write the .arr here instead of into the catalog")
    p.add_argument("path", help="delimited input; header names columns, '*' marks the key")
    p.add_argument("--name", default=None, help="catalog name (default: file stem)")
    p.add_argument("--delimiter", default=",", help="field delimiter (default: ,)")
    p.set_defaults(func=_cmd_encode_table)

    p = sub.add_parser(
        "decode-table", help="labelled 2-d array back to delimited text"
    )
    common(p, "write the table here instead of stdout")
    p.add_argument("source", help="catalog array name or .arr file path")
    p.add_argument("--delimiter", default=",", help="field delimiter (default: ,)")
    p.set_defaults(func=_cmd_decode_table)

    return parser


def _print_diagnostic(exc: Exception, source_text) -> None:
    print(f"error: {exc}", file=sys.stderr)
    line = column = None
    if isinstance(exc, ParseError):
        line, column = exc.line, exc.column
    elif isinstance(exc, ArracError) and exc.span:
        line, column = exc.span
    if line is not None and source_text is not None:
        src_lines = source_text.split("\n")
        if 1 <= line <= len(src_lines):
            print(f"  --> line {line}, column {column}", file=sys.stderr)
            print(f"  {src_lines[line - 1]}", file=sys.stderr)
            print("  " + " " * (column - 1) + "^", file=sys.stderr)
    if isinstance(exc, ParseError) and exc.expected:
        print("  expected: " + ", ".join(sorted(exc.expected)), file=sys.stderr)


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, ParseError):
        return 2
    if isinstance(exc, (UnboundName, ArityError)):
        return 3
    if isinstance(exc, FormatError):
        return 5
    if isinstance(exc, ArracError):
        return 4
    if isinstance(exc, OSError):
        return 5
    return 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    source_text = getattr(args, "expr", None)
    try:
        return args.func(args)
    except ArracError as exc:
        _print_diagnostic(exc, source_text)
        return _exit_code(exc)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except Exception as exc:  # pragma: no cover - last-resort guard
        print(f"unexpected error: {exc!r}", file=sys.stderr)
        return 1
