"""Command-line interface.

Subcommands: check, query, export-dot, stats, merge, ingest. Diagnostics go
to stderr as `<file>:<line>: <severity> <CODE> <message>`; data goes to
stdout so pipelines can consume query and DOT output cleanly. Exit codes:
0 clean, 1 error diagnostics, 2 usage or I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .dlquery import QueryEvalError, QueryMode, QuerySyntaxError, eval_query, parse_query
from .exchange import export_dot, ingest_csv, merge
from .model import (
    Diagnostic,
    Ontology,
    Severity,
    build_ontology,
    error,
    sort_diagnostics,
)
from .oft import load_sources, serialize_oft
from .reasoner import compute_closure, realize
from .validator import validate


def _emit(diags: Iterable[Diagnostic]) -> None:
    for d in sort_diagnostics(diags):
        print(d.render(), file=sys.stderr)


def _load(paths: Sequence[str]) -> tuple[Optional[Ontology], list[Diagnostic]]:
    sources = [(p, Path(p).read_text(encoding="utf-8")) for p in paths]
    return load_sources(sources)


def _cmd_check(args: argparse.Namespace) -> int:
    onto, diags = _load(args.files)
    if onto is not None:
        closure, closure_diags = compute_closure(onto)
        diags += closure_diags
        if closure is not None:
            diags += validate(onto, closure, realize(onto, closure)).diagnostics
    _emit(diags)
    errors = sum(1 for d in diags if d.severity is Severity.ERROR)
    warnings = len(diags) - errors
    print(f"{errors} errors, {warnings} warnings")
    return 1 if errors else 0


def _require_loaded(paths: Sequence[str]) -> Optional[tuple]:
    onto, diags = _load(paths)
    if onto is None:
        _emit(diags)
        return None
    closure, closure_diags = compute_closure(onto)
    if closure is None:
        _emit(closure_diags)
        return None
    return onto, closure


def _cmd_query(args: argparse.Namespace) -> int:
    loaded = _require_loaded(args.files)
    if loaded is None:
        return 1
    onto, closure = loaded
    try:
        expr = parse_query(args.query)
    except QuerySyntaxError as exc:
        _emit([error(exc.code, exc.message + f" (column {exc.column})", "<query>", 1)])
        return 1
    try:
        names = eval_query(onto, closure, realize(onto, closure), expr, QueryMode(args.mode))
    except QueryEvalError as exc:
        _emit([error(exc.code, exc.message, "<query>", 1)])
        return 1
    for name in names:
        print(name)
    return 0


def _cmd_export_dot(args: argparse.Namespace) -> int:
    loaded = _require_loaded(args.files)
    if loaded is None:
        return 1
    onto, closure = loaded
    print(export_dot(onto, closure, inferred=args.inferred), end="")
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    onto, diags = _load(args.files)
    if onto is None:
        _emit(diags)
        return 1
    counts = [
        ("classes", len(onto.classes)),
        ("object_properties", len(onto.object_properties)),
        ("data_properties", len(onto.data_properties)),
        ("individuals", len(onto.individuals)),
        ("assertions", len(onto.obj_assertions) + len(onto.data_assertions)),
    ]
    for key, value in counts:
        print(f"{key}\t{value}")
    return 0


def _cmd_merge(args: argparse.Namespace) -> int:
    first, first_diags = _load([args.first])
    if first is None:
        _emit(first_diags)
        return 1
    second, second_diags = _load([args.second])
    if second is None:
        _emit(second_diags)
        return 1
    report = merge(first, second, first.name)
    Path(args.output).write_text(serialize_oft(report.merged), encoding="utf-8")
    _emit(report.conflicts)
    errors = sum(1 for d in report.conflicts if d.severity is Severity.ERROR)
    return 1 if errors else 0


def _parse_column_map(raw: str) -> list[tuple[str, str]]:
    pairs = []
    for item in raw.split(","):
        header, sep, prop = item.partition("=")
        if not sep or not header or not prop:
            raise ValueError(f"bad --map entry {item!r}; expected header=property")
        pairs.append((header, prop))
    return pairs


def _cmd_ingest(args: argparse.Namespace) -> int:
    onto, diags = _load(args.files)
    if onto is None:
        _emit(diags)
        return 1
    try:
        column_map = _parse_column_map(args.map)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    csv_text = Path(args.csv).read_text(encoding="utf-8")
    axioms, ingest_diags = ingest_csv(
        onto, csv_text, args.target_class, column_map, file_name=args.csv
    )
    if ingest_diags:
        _emit(ingest_diags)
        return 1
    combined, build_diags = build_ontology(
        onto.name, list(onto.axioms) + axioms, onto.provenance + (args.csv,)
    )
    if combined is None:
        _emit(build_diags)
        return 1
    Path(args.output).write_text(serialize_oft(combined), encoding="utf-8")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontokit",
        description="Parse, validate, query, export, and merge OFT ontology files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="parse, build, and validate")
    check.add_argument("files", nargs="+")
    check.set_defaults(func=_cmd_check)

    query = sub.add_parser("query", help="evaluate a class expression")
    query.add_argument("files", nargs="+")
    query.add_argument("-q", "--query", required=True)
    query.add_argument(
        "-m",
        "--mode",
        default=QueryMode.INSTANCES.value,
        choices=[m.value for m in QueryMode],
    )
    query.set_defaults(func=_cmd_query)

    export = sub.add_parser("export-dot", help="emit the taxonomy as DOT")
    export.add_argument("files", nargs="+")
    export.add_argument("--inferred", action="store_true")
    export.set_defaults(func=_cmd_export_dot)

    stats = sub.add_parser("stats", help="count declared entities")
    stats.add_argument("files", nargs="+")
    stats.set_defaults(func=_cmd_stats)

    merge_cmd = sub.add_parser("merge", help="merge two ontology files")
    merge_cmd.add_argument("first")
    merge_cmd.add_argument("second")
    merge_cmd.add_argument("-o", "--output", required=True)
    merge_cmd.set_defaults(func=_cmd_merge)

    ingest = sub.add_parser("ingest", help="append individuals from a CSV file")
    ingest.add_argument("files", nargs="+")
    ingest.add_argument("--csv", required=True)
    ingest.add_argument("--class", dest="target_class", required=True)
    ingest.add_argument("--map", required=True, help="header=property[,header=property...]")
    ingest.add_argument("-o", "--output", required=True)
    ingest.set_defaults(func=_cmd_ingest)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run())
