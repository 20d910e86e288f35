"""Ontology Fixture Text (OFT): a line-oriented declarative ontology format.

One statement per line, `#` comments, forward references allowed within a
file. Parsing is total: malformed lines become diagnostics and are skipped,
no input ever raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .model import (
    Axiom,
    Cardinality,
    ClassDecl,
    DataAssertion,
    DataPropDecl,
    Diagnostic,
    E_SYNTAX,
    E_TYPE_MISMATCH,
    FacetSpec,
    IDENT_RE,
    IndividualDecl,
    Literal,
    NUMBER_RE,
    ObjAssertion,
    ObjPropDecl,
    Ontology,
    SubClassOf,
    ValueType,
    build_ontology,
    canonical_axioms,
    conforms,
    error,
    is_datetime,
    sort_diagnostics,
)

_VTYPE_KEYWORDS = {vt.value: vt for vt in ValueType}
_LITERAL_TOKEN_TYPES = {
    "string": ValueType.STRING,
    "number": ValueType.NUMBER,
    "boolean": ValueType.BOOLEAN,
    "datetime": ValueType.DATETIME,
}


@dataclass
class ParseResult:
    ontology_name: str
    axioms: list[Axiom]
    diagnostics: list[Diagnostic]


@dataclass(frozen=True)
class _Token:
    kind: str  # ident | string | number | boolean | datetime | comma
    text: str
    col: int


class _LineError(Exception):
    def __init__(self, message: str, col: int, code: str = E_SYNTAX):
        super().__init__(message)
        self.message = message
        self.col = col
        self.code = code


def _classify_word(word: str, col: int) -> _Token:
    if word in ("true", "false"):
        return _Token("boolean", word, col)
    if NUMBER_RE.match(word):
        return _Token("number", word, col)
    if IDENT_RE.match(word):
        return _Token("ident", word, col)
    if is_datetime(word):
        return _Token("datetime", word, col)
    raise _LineError(f"bad token {word!r}", col)


def _scan_line(line: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch in " \t":
            i += 1
            continue
        if ch == "#":
            break
        col = i + 1
        if ch == ",":
            tokens.append(_Token("comma", ",", col))
            i += 1
            continue
        if ch == '"':
            i += 1
            buf: list[str] = []
            while True:
                if i >= n:
                    raise _LineError("unterminated string", col)
                c = line[i]
                if c == "\\":
                    if i + 1 >= n:
                        raise _LineError("unterminated string", col)
                    esc = line[i + 1]
                    if esc not in ('"', "\\"):
                        raise _LineError(f"invalid escape \\{esc}", i + 1)
                    buf.append(esc)
                    i += 2
                    continue
                if c == '"':
                    i += 1
                    break
                buf.append(c)
                i += 1
            tokens.append(_Token("string", "".join(buf), col))
            continue
        j = i
        while j < n and line[j] not in ' \t,#"':
            j += 1
        tokens.append(_classify_word(line[i:j], col))
        i = j
    return tokens


class _Cursor:
    def __init__(self, tokens: list[_Token], line_len: int):
        self.tokens = tokens
        self.pos = 0
        self.end_col = line_len + 1

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok is None:
            raise _LineError(f"expected {what}", self.end_col)
        if tok.kind != kind:
            raise _LineError(f"expected {what}, got {tok.text!r}", tok.col)
        self.pos += 1
        return tok

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "ident" and tok.text == word

    def take_keyword(self, word: str) -> None:
        if not self.at_keyword(word):
            tok = self.peek()
            col = tok.col if tok else self.end_col
            got = f", got {tok.text!r}" if tok else ""
            raise _LineError(f"expected {word!r}{got}", col)
        self.pos += 1

    def expect_end(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise _LineError(f"unexpected trailing token {tok.text!r}", tok.col)


def _take_literal(cur: _Cursor) -> Literal:
    tok = cur.peek()
    if tok is None or tok.kind not in _LITERAL_TOKEN_TYPES:
        col = tok.col if tok else cur.end_col
        raise _LineError("expected a literal value", col)
    cur.pos += 1
    return Literal(_LITERAL_TOKEN_TYPES[tok.kind], tok.text)


def _take_ident_list(cur: _Cursor, what: str) -> list[str]:
    names = [cur.take("ident", what).text]
    while cur.peek() is not None and cur.peek().kind == "comma":
        cur.pos += 1
        names.append(cur.take("ident", what).text)
    return names


def _parse_dataprop(cur: _Cursor, loc: dict) -> list[Axiom]:
    name = cur.take("ident", "property name").text
    domain = None
    if cur.at_keyword("domain"):
        cur.pos += 1
        domain = cur.take("ident", "domain class").text
    cur.take_keyword("type")
    vt_tok = cur.take("ident", "value type")
    vtype = _VTYPE_KEYWORDS.get(vt_tok.text)
    if vtype is None:
        raise _LineError(f"unknown value type {vt_tok.text!r}", vt_tok.col)
    allowed: Optional[list[Literal]] = None
    if cur.at_keyword("allowed"):
        cur.pos += 1
        allowed = [_take_literal(cur)]
        while cur.peek() is not None and cur.peek().kind == "comma":
            cur.pos += 1
            allowed.append(_take_literal(cur))
        seen = set()
        for lit in allowed:
            if lit.key() in seen:
                raise _LineError(f"duplicate allowed value {lit.lexical!r}", vt_tok.col)
            seen.add(lit.key())
            if not conforms(lit, vtype):
                raise _LineError(
                    f"allowed value {lit.lexical!r} does not conform to {vtype.value}",
                    vt_tok.col,
                    code=E_TYPE_MISMATCH,
                )
    elif vtype is ValueType.ENUM:
        raise _LineError("enum type requires an allowed-values list", vt_tok.col)
    card = Cardinality.SINGLE
    if cur.at_keyword("card"):
        cur.pos += 1
        card_tok = cur.take("ident", "'single' or 'multiple'")
        if card_tok.text not in ("single", "multiple"):
            raise _LineError(
                f"expected 'single' or 'multiple', got {card_tok.text!r}", card_tok.col
            )
        card = Cardinality(card_tok.text)
    cur.expect_end()
    facet = FacetSpec(vtype, tuple(allowed) if allowed is not None else None, card)
    return [DataPropDecl(name, facet, domain, **loc)]


def parse_oft(source: str, file_name: str = "<input>") -> ParseResult:
    """Parse OFT text into axioms with source locations. Never raises."""
    name = "unnamed"
    have_header = False
    declared_classes: set[str] = set()
    axioms: list[Axiom] = []
    diags: list[Diagnostic] = []

    lines = source.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for ln, raw in enumerate(lines, 1):
        line = raw[:-1] if raw.endswith("\r") else raw
        loc = {"file": file_name, "line": ln}
        try:
            tokens = _scan_line(line)
            if not tokens:
                continue
            head = tokens[0]
            if head.kind != "ident":
                raise _LineError(f"expected statement keyword, got {head.text!r}", head.col)
            cur = _Cursor(tokens, len(line))
            cur.pos = 1
            if head.text == "ontology":
                tok = cur.take("ident", "ontology name")
                cur.expect_end()
                if have_header:
                    raise _LineError("duplicate ontology header", head.col)
                name = tok.text
                have_header = True
            elif head.text == "class":
                cls = cur.take("ident", "class name").text
                parents: list[str] = []
                if cur.at_keyword("sub"):
                    cur.pos += 1
                    parents = _take_ident_list(cur, "parent class")
                cur.expect_end()
                if cls not in declared_classes:
                    declared_classes.add(cls)
                    axioms.append(ClassDecl(cls, **loc))
                axioms.extend(SubClassOf(cls, p, **loc) for p in parents)
            elif head.text == "objprop":
                prop = cur.take("ident", "property name").text
                domain = rng = None
                if cur.at_keyword("domain"):
                    cur.pos += 1
                    domain = cur.take("ident", "domain class").text
                if cur.at_keyword("range"):
                    cur.pos += 1
                    rng = cur.take("ident", "range class").text
                cur.expect_end()
                axioms.append(ObjPropDecl(prop, domain, rng, **loc))
            elif head.text == "dataprop":
                axioms.extend(_parse_dataprop(cur, loc))
            elif head.text == "individual":
                ind = cur.take("ident", "individual name").text
                cur.take_keyword("type")
                types = _take_ident_list(cur, "type class")
                cur.expect_end()
                axioms.append(IndividualDecl(ind, tuple(types), **loc))
            elif head.text == "rel":
                subj = cur.take("ident", "subject").text
                prop = cur.take("ident", "property").text
                obj = cur.take("ident", "object").text
                cur.expect_end()
                axioms.append(ObjAssertion(subj, prop, obj, **loc))
            elif head.text == "attr":
                subj = cur.take("ident", "subject").text
                prop = cur.take("ident", "property").text
                value = _take_literal(cur)
                cur.expect_end()
                axioms.append(DataAssertion(subj, prop, value, **loc))
            else:
                raise _LineError(f"unknown statement {head.text!r}", head.col)
        except _LineError as exc:
            diags.append(
                error(exc.code, f"{exc.message} (column {exc.col})", file_name, ln)
            )
    return ParseResult(name, axioms, diags)


def format_literal(lit: Literal) -> str:
    if lit.value_type is ValueType.STRING:
        escaped = lit.lexical.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if lit.value_type in (ValueType.ANY, ValueType.ENUM):
        raise ValueError(f"{lit.value_type.value} literals have no written form")
    return lit.lexical


def _format_axiom(ax: Axiom) -> str:
    if isinstance(ax, ClassDecl):
        return f"class {ax.name}"
    if isinstance(ax, SubClassOf):
        return f"class {ax.child} sub {ax.parent}"
    if isinstance(ax, ObjPropDecl):
        parts = [f"objprop {ax.name}"]
        if ax.domain is not None:
            parts.append(f"domain {ax.domain}")
        if ax.range is not None:
            parts.append(f"range {ax.range}")
        return " ".join(parts)
    if isinstance(ax, DataPropDecl):
        parts = [f"dataprop {ax.name}"]
        if ax.domain is not None:
            parts.append(f"domain {ax.domain}")
        parts.append(f"type {ax.facet.value_type.value}")
        if ax.facet.allowed is not None:
            values = ", ".join(format_literal(v) for v in ax.facet.allowed)
            parts.append(f"allowed {values}")
        parts.append(f"card {ax.facet.cardinality.value}")
        return " ".join(parts)
    if isinstance(ax, IndividualDecl):
        return f"individual {ax.name} type " + ", ".join(ax.types)
    if isinstance(ax, ObjAssertion):
        return f"rel {ax.subject} {ax.prop} {ax.object}"
    assert isinstance(ax, DataAssertion)
    return f"attr {ax.subject} {ax.prop} {format_literal(ax.value)}"


def serialize_oft(o: Ontology) -> str:
    """Canonical OFT text: header line first, then one axiom per line.

    Output is byte-deterministic; re-parsing reproduces the canonical
    axiom set exactly.
    """
    lines = [f"ontology {o.name}"]
    lines.extend(_format_axiom(ax) for ax in canonical_axioms(o))
    return "\n".join(lines) + "\n"


def load_sources(
    sources: Iterable[tuple[str, str]],
) -> tuple[Optional[Ontology], list[Diagnostic]]:
    """Parse (file_name, text) pairs into one ontology.

    Axiom streams are concatenated in argument order; the first source's
    header names the result. Parse errors suppress the build step so
    cascading reference errors are not reported.
    """
    name: Optional[str] = None
    axioms: list[Axiom] = []
    diags: list[Diagnostic] = []
    provenance: list[str] = []
    for file_name, text in sources:
        result = parse_oft(text, file_name)
        if name is None:
            name = result.ontology_name
        axioms.extend(result.axioms)
        diags.extend(result.diagnostics)
        provenance.append(file_name)
    if diags:
        return None, sort_diagnostics(diags)
    onto, build_diags = build_ontology(name or "unnamed", axioms, provenance)
    return onto, sort_diagnostics(build_diags)
