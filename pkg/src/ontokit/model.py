"""Core ontology data model.

Literals, facets, axioms, diagnostics, and the immutable ontology container
produced by :func:`build_ontology`. An ontology is a validated bag of axioms
plus a symbol table mapping every declared name to its kind; everything else
(closures, realizations, reports) is derived by the other modules.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import date, datetime
from decimal import Decimal, InvalidOperation
from enum import Enum
from functools import cached_property
from typing import Iterable, Optional, Sequence

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
NUMBER_RE = re.compile(r"[+-]?[0-9]+(\.[0-9]+)?([eE][+-]?[0-9]+)?\Z")
_DATETIME_SHAPE_RE = re.compile(r"[0-9]{4}-[0-9]{2}-[0-9]{2}(T[0-9:.+\-]+Z?)?\Z")

#: Implicit root class present in every ontology; never written to files.
THING = "Thing"

# Diagnostic codes.
E_SYNTAX = "E_SYNTAX"
E_UNKNOWN_REF = "E_UNKNOWN_REF"
E_KIND_CLASH = "E_KIND_CLASH"
E_SELF_SUB = "E_SELF_SUB"
E_CYCLE = "E_CYCLE"
E_TYPE_MISMATCH = "E_TYPE_MISMATCH"
E_ALLOWED_VALUE = "E_ALLOWED_VALUE"
E_CARD_SINGLE = "E_CARD_SINGLE"
E_CARD_MULTIPLE = "E_CARD_MULTIPLE"
E_DOMAIN = "E_DOMAIN"
E_RANGE = "E_RANGE"
E_CSV_HEADER = "E_CSV_HEADER"
E_DUP_INDIVIDUAL = "E_DUP_INDIVIDUAL"
E_FACET_CLASH = "E_FACET_CLASH"
E_PROP_CLASH = "E_PROP_CLASH"
E_UNSUPPORTED_MODE = "E_UNSUPPORTED_MODE"


class Kind(Enum):
    """What a declared name denotes."""

    CLASS = "class"
    OBJECT_PROPERTY = "object property"
    DATA_PROPERTY = "data property"
    INDIVIDUAL = "individual"


class ValueType(Enum):
    """Data-property value types; values are the file-format keywords."""

    STRING = "string"
    NUMBER = "number"
    BOOLEAN = "boolean"
    DATETIME = "datetime"
    ANY = "literal"
    ENUM = "enum"


class Cardinality(Enum):
    SINGLE = "single"
    MULTIPLE = "multiple"


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    """A machine-readable finding with a source location."""

    severity: Severity
    code: str
    message: str
    file: str = ""
    line: int = 0

    def render(self) -> str:
        return f"{self.file}:{self.line}: {self.severity.value} {self.code} {self.message}"


def error(code: str, message: str, file: str = "", line: int = 0) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, file, line)


def warning(code: str, message: str, file: str = "", line: int = 0) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, file, line)


def sort_diagnostics(diags: Iterable[Diagnostic]) -> list[Diagnostic]:
    return sorted(diags, key=lambda d: (d.file, d.line, d.code, d.message))


def is_ident(name: str) -> bool:
    return bool(IDENT_RE.match(name))


def parse_number(lexical: str) -> Optional[Decimal]:
    """Decimal value of a number token, or None if it is not one."""
    if not NUMBER_RE.match(lexical):
        return None
    try:
        value = Decimal(lexical)
    except InvalidOperation:
        return None
    return value if value.is_finite() else None


def is_datetime(lexical: str) -> bool:
    """True for an ISO-8601 date or date-time."""
    if not _DATETIME_SHAPE_RE.match(lexical):
        return False
    text = lexical[:-1] + "+00:00" if lexical.endswith("Z") else lexical
    for parse in (date.fromisoformat, datetime.fromisoformat):
        try:
            parse(text)
            return True
        except ValueError:
            pass
    return False


@dataclass(frozen=True, eq=False)
class Literal:
    """A typed literal value.

    Numbers carry their exact decimal lexical form and compare numerically
    ("1.0" equals "1"); every other type compares by exact lexical match.
    """

    value_type: ValueType
    lexical: str

    def __post_init__(self) -> None:
        vt, lex = self.value_type, self.lexical
        if vt is ValueType.NUMBER and parse_number(lex) is None:
            raise ValueError(f"not a finite decimal: {lex!r}")
        if vt is ValueType.BOOLEAN and lex not in ("true", "false"):
            raise ValueError(f"boolean must be 'true' or 'false': {lex!r}")
        if vt is ValueType.DATETIME and not is_datetime(lex):
            raise ValueError(f"not an ISO-8601 date or date-time: {lex!r}")
        if "\n" in lex or "\r" in lex:
            raise ValueError("literal may not contain line breaks")

    @property
    def numeric(self) -> Optional[Decimal]:
        if self.value_type is ValueType.NUMBER:
            return parse_number(self.lexical)
        return None

    def key(self) -> tuple:
        """Equality/hash key: numeric for numbers, lexical otherwise."""
        if self.value_type is ValueType.NUMBER:
            return (self.value_type.value, self.numeric)
        return (self.value_type.value, self.lexical)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Literal):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


def conforms(value: Literal, value_type: ValueType) -> bool:
    """Whether a literal conforms to a facet value type.

    ANY accepts every literal; ENUM defers entirely to the allowed-values
    membership check.
    """
    if value_type in (ValueType.ANY, ValueType.ENUM):
        return True
    return value.value_type is value_type


@dataclass(frozen=True)
class FacetSpec:
    """Value constraints attached to a data property."""

    value_type: ValueType
    allowed: Optional[tuple[Literal, ...]] = None
    cardinality: Cardinality = Cardinality.SINGLE

    def __post_init__(self) -> None:
        if self.allowed is not None:
            if not self.allowed:
                raise ValueError("allowed values must be non-empty when present")
            keys = [v.key() for v in self.allowed]
            if len(set(keys)) != len(keys):
                raise ValueError("allowed values must be duplicate-free")
            for v in self.allowed:
                if not conforms(v, self.value_type):
                    raise ValueError(
                        f"allowed value {v.lexical!r} does not conform to {self.value_type.value}"
                    )
        elif self.value_type is ValueType.ENUM:
            raise ValueError("enum facet requires an allowed-values list")

    def permits(self, value: Literal) -> bool:
        return self.allowed is None or value in self.allowed

    def key(self) -> tuple:
        allowed = None if self.allowed is None else frozenset(v.key() for v in self.allowed)
        return (self.value_type.value, allowed, self.cardinality.value)


@dataclass(frozen=True)
class Axiom:
    """Base for all axiom variants; carries the source location."""

    file: str = field(default="", kw_only=True)
    line: int = field(default=0, kw_only=True)


@dataclass(frozen=True)
class ClassDecl(Axiom):
    name: str


@dataclass(frozen=True)
class SubClassOf(Axiom):
    child: str
    parent: str


@dataclass(frozen=True)
class ObjPropDecl(Axiom):
    name: str
    domain: Optional[str] = None
    range: Optional[str] = None


@dataclass(frozen=True)
class DataPropDecl(Axiom):
    name: str
    facet: FacetSpec
    domain: Optional[str] = None


@dataclass(frozen=True)
class IndividualDecl(Axiom):
    name: str
    types: tuple[str, ...]


@dataclass(frozen=True)
class ObjAssertion(Axiom):
    subject: str
    prop: str
    object: str


@dataclass(frozen=True)
class DataAssertion(Axiom):
    subject: str
    prop: str
    value: Literal


_VARIANT_ORDER = {
    ClassDecl: 0,
    SubClassOf: 1,
    ObjPropDecl: 2,
    DataPropDecl: 3,
    IndividualDecl: 4,
    ObjAssertion: 5,
    DataAssertion: 6,
}


def axiom_identity(ax: Axiom) -> tuple:
    """Location-free identity used for duplicate removal and merging."""
    v = _VARIANT_ORDER[type(ax)]
    if isinstance(ax, ClassDecl):
        return (v, ax.name)
    if isinstance(ax, SubClassOf):
        return (v, ax.child, ax.parent)
    if isinstance(ax, ObjPropDecl):
        return (v, ax.name, ax.domain or "", ax.range or "")
    if isinstance(ax, DataPropDecl):
        return (v, ax.name, ax.domain or "", ax.facet.key())
    if isinstance(ax, IndividualDecl):
        return (v, ax.name, ax.types)
    if isinstance(ax, ObjAssertion):
        return (v, ax.subject, ax.prop, ax.object)
    assert isinstance(ax, DataAssertion)
    return (v, ax.subject, ax.prop, ax.value.key())


def _facet_sort_key(facet: FacetSpec) -> tuple:
    allowed = tuple((v.value_type.value, v.lexical) for v in facet.allowed or ())
    return (facet.value_type.value, allowed, facet.cardinality.value)


def axiom_sort_key(ax: Axiom) -> tuple:
    """Canonical order: variant tag, then byte order of names and lexicals."""
    v = _VARIANT_ORDER[type(ax)]
    if isinstance(ax, ClassDecl):
        return (v, ax.name)
    if isinstance(ax, SubClassOf):
        return (v, ax.child, ax.parent)
    if isinstance(ax, ObjPropDecl):
        return (v, ax.name, ax.domain or "", ax.range or "")
    if isinstance(ax, DataPropDecl):
        return (v, ax.name, ax.domain or "", _facet_sort_key(ax.facet))
    if isinstance(ax, IndividualDecl):
        return (v, ax.name, ax.types)
    if isinstance(ax, ObjAssertion):
        return (v, ax.subject, ax.prop, ax.object)
    assert isinstance(ax, DataAssertion)
    return (v, ax.subject, ax.prop, ax.value.value_type.value, ax.value.lexical)


def axiom_declaration(ax: Axiom) -> Optional[tuple[str, Kind]]:
    """(name, kind) introduced by a declaration axiom, else None."""
    if isinstance(ax, ClassDecl):
        return (ax.name, Kind.CLASS)
    if isinstance(ax, ObjPropDecl):
        return (ax.name, Kind.OBJECT_PROPERTY)
    if isinstance(ax, DataPropDecl):
        return (ax.name, Kind.DATA_PROPERTY)
    if isinstance(ax, IndividualDecl):
        return (ax.name, Kind.INDIVIDUAL)
    return None


def axiom_references(ax: Axiom) -> list[tuple[str, Kind]]:
    """Names an axiom refers to, paired with the kind each use demands."""
    if isinstance(ax, SubClassOf):
        return [(ax.child, Kind.CLASS), (ax.parent, Kind.CLASS)]
    if isinstance(ax, ObjPropDecl):
        return [(n, Kind.CLASS) for n in (ax.domain, ax.range) if n is not None]
    if isinstance(ax, DataPropDecl):
        return [(ax.domain, Kind.CLASS)] if ax.domain is not None else []
    if isinstance(ax, IndividualDecl):
        return [(t, Kind.CLASS) for t in ax.types]
    if isinstance(ax, ObjAssertion):
        return [
            (ax.subject, Kind.INDIVIDUAL),
            (ax.prop, Kind.OBJECT_PROPERTY),
            (ax.object, Kind.INDIVIDUAL),
        ]
    if isinstance(ax, DataAssertion):
        return [(ax.subject, Kind.INDIVIDUAL), (ax.prop, Kind.DATA_PROPERTY)]
    return []


@dataclass(frozen=True)
class Ontology:
    """Immutable, referentially closed axiom set.

    Construct only through :func:`build_ontology`; all derived views below
    are cached and treat the instance as read-only.
    """

    name: str
    axioms: tuple[Axiom, ...]
    symbols: dict[str, Kind]
    provenance: tuple[str, ...] = ()

    def _names_of(self, kind: Kind) -> frozenset[str]:
        return frozenset(n for n, k in self.symbols.items() if k is kind)

    @cached_property
    def classes(self) -> frozenset[str]:
        """Declared classes, excluding the implicit root."""
        return self._names_of(Kind.CLASS) - {THING}

    @cached_property
    def object_properties(self) -> frozenset[str]:
        return self._names_of(Kind.OBJECT_PROPERTY)

    @cached_property
    def data_properties(self) -> frozenset[str]:
        return self._names_of(Kind.DATA_PROPERTY)

    @cached_property
    def individuals(self) -> frozenset[str]:
        return self._names_of(Kind.INDIVIDUAL)

    @cached_property
    def direct_parents(self) -> dict[str, frozenset[str]]:
        """Direct superclass edges; parentless classes fall back to Thing."""
        asserted: dict[str, set[str]] = {c: set() for c in self.classes}
        for ax in self.axioms:
            if isinstance(ax, SubClassOf):
                asserted[ax.child].add(ax.parent)
        return {
            c: frozenset(ps) if ps else frozenset({THING}) for c, ps in asserted.items()
        }

    @cached_property
    def asserted_types(self) -> dict[str, frozenset[str]]:
        acc: dict[str, set[str]] = {}
        for ax in self.axioms:
            if isinstance(ax, IndividualDecl):
                acc.setdefault(ax.name, set()).update(ax.types)
        return {name: frozenset(types) for name, types in acc.items()}

    @cached_property
    def facets(self) -> dict[str, FacetSpec]:
        acc: dict[str, FacetSpec] = {}
        for ax in self.axioms:
            if isinstance(ax, DataPropDecl):
                acc.setdefault(ax.name, ax.facet)
        return acc

    @cached_property
    def domains(self) -> dict[str, Optional[str]]:
        """Declared domain per property (object and data alike)."""
        acc: dict[str, Optional[str]] = {}
        for ax in self.axioms:
            if isinstance(ax, (ObjPropDecl, DataPropDecl)):
                acc.setdefault(ax.name, ax.domain)
        return acc

    @cached_property
    def ranges(self) -> dict[str, Optional[str]]:
        acc: dict[str, Optional[str]] = {}
        for ax in self.axioms:
            if isinstance(ax, ObjPropDecl):
                acc.setdefault(ax.name, ax.range)
        return acc

    @cached_property
    def obj_assertions(self) -> tuple[ObjAssertion, ...]:
        return tuple(ax for ax in self.axioms if isinstance(ax, ObjAssertion))

    @cached_property
    def data_assertions(self) -> tuple[DataAssertion, ...]:
        return tuple(ax for ax in self.axioms if isinstance(ax, DataAssertion))

    @cached_property
    def individual_locations(self) -> dict[str, tuple[str, int]]:
        """First declaration site of each individual (diagnostic anchor)."""
        acc: dict[str, tuple[str, int]] = {}
        for ax in self.axioms:
            if isinstance(ax, IndividualDecl):
                acc.setdefault(ax.name, (ax.file, ax.line))
        return acc


def build_ontology(
    name: str,
    axioms: Sequence[Axiom],
    provenance: Sequence[str] = (),
) -> tuple[Optional[Ontology], list[Diagnostic]]:
    """Check an axiom list and wrap it into an Ontology.

    Performs every referential and kind check in one pass and reports all
    findings rather than stopping at the first. Returns (ontology, []) on
    success and (None, diagnostics) otherwise.
    """
    diags: list[Diagnostic] = []
    if not is_ident(name):
        diags.append(error(E_SYNTAX, f"invalid ontology name {name!r}"))

    symbols: dict[str, Kind] = {THING: Kind.CLASS}
    for ax in axioms:
        decl = axiom_declaration(ax)
        if decl is None:
            continue
        decl_name, kind = decl
        if not is_ident(decl_name):
            diags.append(
                error(E_SYNTAX, f"invalid identifier {decl_name!r}", ax.file, ax.line)
            )
            continue
        prior = symbols.get(decl_name)
        if prior is None:
            symbols[decl_name] = kind
        elif prior is not kind:
            diags.append(
                error(
                    E_KIND_CLASH,
                    f"{decl_name} already declared as {prior.value}",
                    ax.file,
                    ax.line,
                )
            )

    # Re-declaring a property must not change its contract.
    first_obj: dict[str, ObjPropDecl] = {}
    first_data: dict[str, DataPropDecl] = {}
    for ax in axioms:
        if isinstance(ax, ObjPropDecl):
            prev = first_obj.setdefault(ax.name, ax)
            if prev is not ax and (prev.domain, prev.range) != (ax.domain, ax.range):
                diags.append(
                    error(
                        E_PROP_CLASH,
                        f"{ax.name} re-declared with a different domain/range",
                        ax.file,
                        ax.line,
                    )
                )
        elif isinstance(ax, DataPropDecl):
            prev = first_data.setdefault(ax.name, ax)
            if prev is not ax:
                if prev.facet.key() != ax.facet.key():
                    diags.append(
                        error(
                            E_FACET_CLASH,
                            f"{ax.name} re-declared with a different facet",
                            ax.file,
                            ax.line,
                        )
                    )
                elif prev.domain != ax.domain:
                    diags.append(
                        error(
                            E_PROP_CLASH,
                            f"{ax.name} re-declared with a different domain",
                            ax.file,
                            ax.line,
                        )
                    )

    for ax in axioms:
        if isinstance(ax, SubClassOf) and ax.child == ax.parent:
            diags.append(
                error(
                    E_SELF_SUB,
                    f"class {ax.child} cannot be its own subclass",
                    ax.file,
                    ax.line,
                )
            )
        if isinstance(ax, IndividualDecl) and not ax.types:
            diags.append(
                error(
                    E_SYNTAX,
                    f"individual {ax.name} needs at least one type",
                    ax.file,
                    ax.line,
                )
            )
        for ref_name, wanted in axiom_references(ax):
            found = symbols.get(ref_name)
            if found is None:
                diags.append(
                    error(E_UNKNOWN_REF, f"{ref_name} is not declared", ax.file, ax.line)
                )
            elif found is not wanted:
                diags.append(
                    error(
                        E_KIND_CLASH,
                        f"{ref_name} used as {wanted.value} but declared as {found.value}",
                        ax.file,
                        ax.line,
                    )
                )

    if diags:
        return None, sort_diagnostics(diags)
    onto = Ontology(
        name=name,
        axioms=tuple(axioms),
        symbols=symbols,
        provenance=tuple(provenance),
    )
    return onto, []


def canonical_axioms(o: Ontology) -> list[Axiom]:
    """Deduplicated, deterministically ordered axiom list.

    Implicit-root bookkeeping (Thing declarations and edges into Thing) is
    excluded; duplicates keep their first occurrence. The result is stable
    across calls and process runs.
    """
    seen: set[tuple] = set()
    kept: list[Axiom] = []
    for ax in o.axioms:
        if isinstance(ax, ClassDecl) and ax.name == THING:
            continue
        if isinstance(ax, SubClassOf) and ax.parent == THING:
            continue
        identity = axiom_identity(ax)
        if identity in seen:
            continue
        seen.add(identity)
        kept.append(ax)
    kept.sort(key=axiom_sort_key)
    return kept
