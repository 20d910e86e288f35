"""Interop surface: DOT hierarchy export, CSV instance ingestion, and merging.

All three operations are pure; merge builds a fresh ontology and reports
conflicts instead of overwriting or failing outright.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional, Sequence

from .model import (
    Axiom,
    DataAssertion,
    DataPropDecl,
    Diagnostic,
    E_CSV_HEADER,
    E_CYCLE,
    E_DUP_INDIVIDUAL,
    E_FACET_CLASH,
    E_KIND_CLASH,
    E_PROP_CLASH,
    E_SYNTAX,
    E_TYPE_MISMATCH,
    E_UNKNOWN_REF,
    IndividualDecl,
    Kind,
    Literal,
    ObjPropDecl,
    Ontology,
    THING,
    ValueType,
    axiom_declaration,
    axiom_identity,
    axiom_references,
    build_ontology,
    canonical_axioms,
    error,
    is_ident,
    parse_number,
    is_datetime,
    sort_diagnostics,
)
from .reasoner import TaxonomyClosure, compute_closure


def _reduced_parents(closure: TaxonomyClosure) -> dict[str, frozenset[str]]:
    """Transitive reduction: the minimal edges with the closure's reachability."""
    reduced: dict[str, frozenset[str]] = {}
    for cls, ancs in closure.ancestors.items():
        reduced[cls] = frozenset(
            p for p in ancs if not any(p in closure.ancestors[z] for z in ancs if z != p)
        )
    return reduced


def export_dot(o: Ontology, closure: TaxonomyClosure, inferred: bool = False) -> str:
    """Render the taxonomy as a deterministic DOT digraph, parent -> child.

    Asserted mode draws the direct edges; inferred mode draws the transitive
    reduction of the closure. Thing appears only when it has children in the
    drawn edge set.
    """
    parent_map = _reduced_parents(closure) if inferred else closure.direct_parents
    edges = sorted(
        (parent, child) for child, parents in parent_map.items() for parent in parents
    )
    nodes = sorted(o.classes | {THING} if any(p == THING for p, _ in edges) else o.classes)
    lines = ["digraph taxonomy {"]
    lines.extend(f'  "{n}";' for n in nodes)
    lines.extend(f'  "{p}" -> "{c}";' for p, c in edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _parse_cell(cell: str, value_type: ValueType) -> Optional[Literal]:
    if value_type is ValueType.STRING:
        return Literal(ValueType.STRING, cell)
    if value_type is ValueType.NUMBER:
        return Literal(ValueType.NUMBER, cell) if parse_number(cell) is not None else None
    if value_type is ValueType.BOOLEAN:
        return Literal(ValueType.BOOLEAN, cell) if cell in ("true", "false") else None
    if value_type is ValueType.DATETIME:
        return Literal(ValueType.DATETIME, cell) if is_datetime(cell) else None
    # Open-ended facet types: sniff the concrete form, strings as fallback.
    for probe in (ValueType.NUMBER, ValueType.BOOLEAN, ValueType.DATETIME):
        lit = _parse_cell(cell, probe)
        if lit is not None:
            return lit
    return Literal(ValueType.STRING, cell)


def ingest_csv(
    o: Ontology,
    csv_text: str,
    target_class: str,
    column_map: Sequence[tuple[str, str]],
    file_name: str = "<csv>",
) -> tuple[list[Axiom], list[Diagnostic]]:
    """Turn CSV rows into individuals of `target_class` with data assertions.

    The first row is the header; the `id` column names each individual. Cells
    parse according to the mapped property's facet value type. Any diagnostic
    suppresses the whole result (no partial axiom lists).
    """
    diags: list[Diagnostic] = []
    if o.symbols.get(target_class) is not Kind.CLASS:
        diags.append(error(E_UNKNOWN_REF, f"{target_class} is not a declared class", file_name, 1))
    for header, prop in column_map:
        if o.symbols.get(prop) is not Kind.DATA_PROPERTY:
            diags.append(
                error(E_UNKNOWN_REF, f"{prop} is not a declared data property", file_name, 1)
            )
    if diags:
        return [], sort_diagnostics(diags)

    rows = list(csv.reader(csv_text.splitlines()))
    if not rows:
        return [], []
    header_row = rows[0]
    columns = {h: i for i, h in enumerate(header_row)}
    if "id" not in columns:
        diags.append(error(E_CSV_HEADER, "missing required 'id' column", file_name, 1))
    for header, prop in column_map:
        if header not in columns:
            diags.append(
                error(E_CSV_HEADER, f"mapped column {header!r} not in header", file_name, 1)
            )
    if diags:
        return [], sort_diagnostics(diags)

    axioms: list[Axiom] = []
    seen_ids: set[str] = set()
    for line, row in enumerate(rows[1:], 2):
        if len(row) != len(header_row):
            diags.append(
                error(
                    E_SYNTAX,
                    f"row has {len(row)} fields, header has {len(header_row)}",
                    file_name,
                    line,
                )
            )
            continue
        row_id = row[columns["id"]]
        if not is_ident(row_id):
            diags.append(error(E_SYNTAX, f"row id {row_id!r} is not a valid identifier", file_name, line))
            continue
        if row_id in o.symbols or row_id in seen_ids:
            diags.append(error(E_DUP_INDIVIDUAL, f"{row_id} already exists", file_name, line))
            continue
        seen_ids.add(row_id)
        axioms.append(IndividualDecl(row_id, (target_class,), file=file_name, line=line))
        for header, prop in column_map:
            cell = row[columns[header]]
            if cell == "":
                continue
            lit = _parse_cell(cell, o.facets[prop].value_type)
            if lit is None:
                diags.append(
                    error(
                        E_TYPE_MISMATCH,
                        f"cell {cell!r} is not a {o.facets[prop].value_type.value} for {prop}",
                        file_name,
                        line,
                    )
                )
                continue
            axioms.append(DataAssertion(row_id, prop, lit, file=file_name, line=line))
    if diags:
        return [], sort_diagnostics(diags)
    return axioms, []


@dataclass(frozen=True)
class MergeReport:
    merged: Ontology
    added: int
    conflicts: tuple[Diagnostic, ...]


def merge(a: Ontology, b: Ontology, name: str) -> MergeReport:
    """Union two ontologies, first one winning on disagreement.

    Identical names must agree in kind and, for properties, in their
    declared contract (facet, domain, range); the second ontology's
    conflicting axioms are dropped and reported. The union is rebuilt so
    cross-ontology references resolve, and a cycle introduced by the union
    is reported as a conflict on the otherwise-complete result.
    """
    base = canonical_axioms(a)
    incoming = canonical_axioms(b)
    base_ids = {axiom_identity(ax) for ax in base}
    conflicts: list[Diagnostic] = []

    # Declaration-level screening against a's symbol table.
    symbols = dict(a.symbols)
    accepted: list[Axiom] = []
    for ax in incoming:
        if axiom_identity(ax) in base_ids:
            continue
        decl = axiom_declaration(ax)
        if decl is not None:
            decl_name, kind = decl
            prior = symbols.get(decl_name)
            if prior is not None and prior is not kind:
                conflicts.append(
                    error(
                        E_KIND_CLASH,
                        f"{decl_name} is {prior.value} in the first ontology, "
                        f"{kind.value} in the second; keeping the first",
                        ax.file,
                        ax.line,
                    )
                )
                continue
            if isinstance(ax, DataPropDecl) and decl_name in a.facets:
                if a.facets[decl_name].key() != ax.facet.key():
                    conflicts.append(
                        error(
                            E_FACET_CLASH,
                            f"{decl_name} re-declared with a different facet; keeping the first",
                            ax.file,
                            ax.line,
                        )
                    )
                    continue
                if a.domains.get(decl_name) != ax.domain:
                    conflicts.append(
                        error(
                            E_PROP_CLASH,
                            f"{decl_name} re-declared with a different domain; keeping the first",
                            ax.file,
                            ax.line,
                        )
                    )
                    continue
            if isinstance(ax, ObjPropDecl) and decl_name in a.object_properties:
                if (a.domains.get(decl_name), a.ranges.get(decl_name)) != (ax.domain, ax.range):
                    conflicts.append(
                        error(
                            E_PROP_CLASH,
                            f"{decl_name} re-declared with a different domain/range; "
                            "keeping the first",
                            ax.file,
                            ax.line,
                        )
                    )
                    continue
            symbols.setdefault(decl_name, kind)
        accepted.append(ax)

    # Drop surviving b-axioms whose references no longer resolve after the
    # screening above; everything left must build.
    survivors: list[Axiom] = []
    for ax in accepted:
        bad = False
        for ref_name, wanted in axiom_references(ax):
            found = symbols.get(ref_name)
            if found is not wanted:
                code = E_UNKNOWN_REF if found is None else E_KIND_CLASH
                conflicts.append(
                    error(
                        code,
                        f"dropped: {ref_name} is "
                        + ("not declared" if found is None else f"declared as {found.value}")
                        + f", needed as {wanted.value}",
                        ax.file,
                        ax.line,
                    )
                )
                bad = True
                break
        if not bad:
            survivors.append(ax)

    added = len(survivors)
    merged, build_diags = build_ontology(
        name, base + survivors, a.provenance + b.provenance
    )
    if merged is None:
        raise AssertionError(f"merge produced an unbuildable union: {build_diags}")
    _, cycle_diags = compute_closure(merged)
    for d in cycle_diags:
        if d.code == E_CYCLE:
            conflicts.append(d)
    return MergeReport(merged, added, tuple(sort_diagnostics(conflicts)))
