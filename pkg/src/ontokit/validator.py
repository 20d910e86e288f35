"""Facet and domain/range validation over the assertional part of an ontology.

Checks every data assertion against its property's facet (value type,
allowed values, cardinality) and every object assertion against the
property's domain and range. Validation never throws; all findings land in
the report, sorted by file, line, and code.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    Cardinality,
    DataAssertion,
    Diagnostic,
    E_ALLOWED_VALUE,
    E_CARD_MULTIPLE,
    E_CARD_SINGLE,
    E_DOMAIN,
    E_RANGE,
    E_TYPE_MISMATCH,
    Ontology,
    Severity,
    conforms,
    error,
    sort_diagnostics,
    warning,
)
from .reasoner import Realization, TaxonomyClosure


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: tuple[Diagnostic, ...]
    checked_assertions: int

    @property
    def ok(self) -> bool:
        return not any(d.severity is Severity.ERROR for d in self.diagnostics)


def validate(
    o: Ontology, closure: TaxonomyClosure, realization: Realization
) -> ValidationReport:
    """Validate all assertions; returns the same report for the same input."""
    diags: list[Diagnostic] = []
    members = realization.members_of

    by_prop_subject: dict[tuple[str, str], list[DataAssertion]] = {}
    for ax in o.data_assertions:
        by_prop_subject.setdefault((ax.prop, ax.subject), []).append(ax)
        facet = o.facets[ax.prop]
        if not conforms(ax.value, facet.value_type):
            diags.append(
                error(
                    E_TYPE_MISMATCH,
                    f"value {ax.value.lexical!r} of {ax.prop} is not a "
                    f"{facet.value_type.value}",
                    ax.file,
                    ax.line,
                )
            )
        elif not facet.permits(ax.value):
            diags.append(
                error(
                    E_ALLOWED_VALUE,
                    f"value {ax.value.lexical!r} of {ax.prop} is outside the allowed set",
                    ax.file,
                    ax.line,
                )
            )
        domain = o.domains.get(ax.prop)
        if domain is not None and ax.subject not in members[domain]:
            diags.append(
                error(
                    E_DOMAIN,
                    f"{ax.subject} is outside the domain {domain} of {ax.prop}",
                    ax.file,
                    ax.line,
                )
            )

    for (prop, subject), assertions in by_prop_subject.items():
        if o.facets[prop].cardinality is Cardinality.SINGLE and len(assertions) > 1:
            for extra in assertions[1:]:
                diags.append(
                    error(
                        E_CARD_SINGLE,
                        f"{subject} has more than one value for single-cardinality {prop}",
                        extra.file,
                        extra.line,
                    )
                )

    # Multiple cardinality reads as "at least one value"; absence is only a
    # warning so half-authored individuals do not hard-fail.
    for prop in sorted(o.data_properties):
        facet = o.facets[prop]
        domain = o.domains.get(prop)
        if facet.cardinality is not Cardinality.MULTIPLE or domain is None:
            continue
        for ind in sorted(members[domain]):
            if (prop, ind) not in by_prop_subject:
                loc = o.individual_locations.get(ind, ("", 0))
                diags.append(
                    warning(
                        E_CARD_MULTIPLE,
                        f"{ind} has no value for multiple-cardinality {prop}",
                        loc[0],
                        loc[1],
                    )
                )

    for ax in o.obj_assertions:
        domain = o.domains.get(ax.prop)
        if domain is not None and ax.subject not in members[domain]:
            diags.append(
                error(
                    E_DOMAIN,
                    f"{ax.subject} is outside the domain {domain} of {ax.prop}",
                    ax.file,
                    ax.line,
                )
            )
        rng = o.ranges.get(ax.prop)
        if rng is not None and ax.object not in members[rng]:
            diags.append(
                error(
                    E_RANGE,
                    f"{ax.object} is outside the range {rng} of {ax.prop}",
                    ax.file,
                    ax.line,
                )
            )

    checked = len(o.data_assertions) + len(o.obj_assertions)
    return ValidationReport(tuple(sort_diagnostics(diags)), checked)
