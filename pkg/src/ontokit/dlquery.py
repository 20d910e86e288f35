"""Manchester-style class expressions and their evaluation.

Grammar: `expr := term ('and' term)*` where a term is a class name,
`prop some term`, `prop value (individual | literal)`, or a parenthesized
expression. `and`, `some`, and `value` are reserved (case-sensitive).

Instance queries evaluate over inferred memberships; subclass/superclass
queries are structural taxonomy lookups and only accept named classes and
intersections of named classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

from .model import (
    E_SYNTAX,
    E_UNKNOWN_REF,
    E_UNSUPPORTED_MODE,
    IDENT_RE,
    Kind,
    Literal,
    NUMBER_RE,
    Ontology,
    ValueType,
    is_datetime,
)
from .oft import format_literal
from .reasoner import Realization, TaxonomyClosure

_KEYWORDS = ("and", "some", "value")


class QueryMode(Enum):
    INSTANCES = "instances"
    SUBCLASSES = "subclasses"
    DIRECT_SUBCLASSES = "direct-subclasses"
    SUPERCLASSES = "superclasses"
    DIRECT_SUPERCLASSES = "direct-superclasses"


@dataclass(frozen=True)
class Named:
    name: str


@dataclass(frozen=True)
class And:
    parts: tuple["ClassExpr", ...]


@dataclass(frozen=True)
class Some:
    prop: str
    filler: "ClassExpr"


@dataclass(frozen=True)
class ValueObj:
    prop: str
    individual: str


@dataclass(frozen=True)
class ValueData:
    prop: str
    value: Literal


ClassExpr = Union[Named, And, Some, ValueObj, ValueData]


class QuerySyntaxError(ValueError):
    """Malformed query text; `column` is 1-based."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.message = message
        self.column = column
        self.code = E_SYNTAX


class QueryEvalError(ValueError):
    """Unresolvable name or unsupported expression/mode combination."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def format_expr(expr: ClassExpr) -> str:
    """Render an expression in re-parsable query syntax."""
    if isinstance(expr, Named):
        return expr.name
    if isinstance(expr, And):
        return " and ".join(
            f"({format_expr(p)})" if isinstance(p, And) else format_expr(p)
            for p in expr.parts
        )
    if isinstance(expr, Some):
        filler = format_expr(expr.filler)
        if not isinstance(expr.filler, Named):
            filler = f"({filler})"
        return f"{expr.prop} some {filler}"
    if isinstance(expr, ValueObj):
        return f"{expr.prop} value {expr.individual}"
    assert isinstance(expr, ValueData)
    return f"{expr.prop} value {format_literal(expr.value)}"


def make_and(parts: Iterable[ClassExpr]) -> ClassExpr:
    """Normalized intersection: flattened, duplicate-free, sorted."""
    flat: list[ClassExpr] = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, And) else [p])
    unique: dict[str, ClassExpr] = {}
    for p in flat:
        unique.setdefault(format_expr(p), p)
    ordered = [unique[k] for k in sorted(unique)]
    if not ordered:
        raise ValueError("intersection needs at least one part")
    if len(ordered) == 1:
        return ordered[0]
    return And(tuple(ordered))


@dataclass(frozen=True)
class _Token:
    kind: str  # ident | keyword | lparen | rparen | string | number | boolean | datetime
    text: str
    col: int


def _scan_query(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        col = i + 1
        if ch == "(":
            tokens.append(_Token("lparen", "(", col))
            i += 1
            continue
        if ch == ")":
            tokens.append(_Token("rparen", ")", col))
            i += 1
            continue
        if ch == '"':
            i += 1
            buf: list[str] = []
            while True:
                if i >= n:
                    raise QuerySyntaxError("unterminated string", col)
                c = text[i]
                if c == "\\":
                    if i + 1 >= n:
                        raise QuerySyntaxError("unterminated string", col)
                    esc = text[i + 1]
                    if esc not in ('"', "\\"):
                        raise QuerySyntaxError(f"invalid escape \\{esc}", i + 1)
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
        while j < n and text[j] not in ' \t()"':
            j += 1
        word = text[i:j]
        if word in ("true", "false"):
            tokens.append(_Token("boolean", word, col))
        elif NUMBER_RE.match(word):
            tokens.append(_Token("number", word, col))
        elif word in _KEYWORDS:
            tokens.append(_Token("keyword", word, col))
        elif IDENT_RE.match(word):
            tokens.append(_Token("ident", word, col))
        elif is_datetime(word):
            tokens.append(_Token("datetime", word, col))
        else:
            raise QuerySyntaxError(f"bad token {word!r}", col)
        i = j
    return tokens


_LITERAL_KINDS = {
    "string": ValueType.STRING,
    "number": ValueType.NUMBER,
    "boolean": ValueType.BOOLEAN,
    "datetime": ValueType.DATETIME,
}


class _Parser:
    def __init__(self, text: str):
        self.tokens = _scan_query(text)
        self.pos = 0
        self.end_col = len(text) + 1

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _fail(self, message: str) -> QuerySyntaxError:
        tok = self.peek()
        return QuerySyntaxError(message, tok.col if tok else self.end_col)

    def expr(self) -> ClassExpr:
        parts = [self.term()]
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "keyword" or tok.text != "and":
                break
            self.pos += 1
            parts.append(self.term())
        return make_and(parts)

    def term(self) -> ClassExpr:
        tok = self.peek()
        if tok is None:
            raise self._fail("expected a class name or '('")
        if tok.kind == "lparen":
            self.pos += 1
            inner = self.expr()
            closing = self.peek()
            if closing is None or closing.kind != "rparen":
                raise self._fail("expected ')'")
            self.pos += 1
            return inner
        if tok.kind != "ident":
            raise self._fail(f"expected a class name or '(', got {tok.text!r}")
        self.pos += 1
        name = tok.text
        nxt = self.peek()
        if nxt is not None and nxt.kind == "keyword" and nxt.text == "some":
            self.pos += 1
            return Some(name, self.term())
        if nxt is not None and nxt.kind == "keyword" and nxt.text == "value":
            self.pos += 1
            val = self.peek()
            if val is None:
                raise self._fail("expected an individual or literal after 'value'")
            if val.kind == "ident":
                self.pos += 1
                return ValueObj(name, val.text)
            if val.kind in _LITERAL_KINDS:
                self.pos += 1
                return ValueData(name, Literal(_LITERAL_KINDS[val.kind], val.text))
            raise self._fail(
                f"expected an individual or literal after 'value', got {val.text!r}"
            )
        return Named(name)


def parse_query(text: str) -> ClassExpr:
    """Parse query text into a normalized expression.

    Raises QuerySyntaxError with a 1-based column on malformed input; name
    resolution is deferred to evaluation.
    """
    parser = _Parser(text)
    expr = parser.expr()
    trailing = parser.peek()
    if trailing is not None:
        raise QuerySyntaxError(f"unexpected token {trailing.text!r}", trailing.col)
    return expr


def _check_names(o: Ontology, expr: ClassExpr) -> None:
    def need(name: str, kind: Kind) -> None:
        found = o.symbols.get(name)
        if found is None:
            raise QueryEvalError(E_UNKNOWN_REF, f"{name} is not declared")
        if found is not kind:
            raise QueryEvalError(
                E_UNKNOWN_REF,
                f"{name} is declared as {found.value}, not {kind.value}",
            )

    if isinstance(expr, Named):
        need(expr.name, Kind.CLASS)
    elif isinstance(expr, And):
        for p in expr.parts:
            _check_names(o, p)
    elif isinstance(expr, Some):
        need(expr.prop, Kind.OBJECT_PROPERTY)
        _check_names(o, expr.filler)
    elif isinstance(expr, ValueObj):
        need(expr.prop, Kind.OBJECT_PROPERTY)
        need(expr.individual, Kind.INDIVIDUAL)
    else:
        assert isinstance(expr, ValueData)
        need(expr.prop, Kind.DATA_PROPERTY)


def _extension(o: Ontology, r: Realization, expr: ClassExpr) -> frozenset[str]:
    if isinstance(expr, Named):
        return r.members_of[expr.name]
    if isinstance(expr, And):
        result = _extension(o, r, expr.parts[0])
        for p in expr.parts[1:]:
            result &= _extension(o, r, p)
        return result
    if isinstance(expr, Some):
        filler = _extension(o, r, expr.filler)
        return frozenset(
            ax.subject
            for ax in o.obj_assertions
            if ax.prop == expr.prop and ax.object in filler
        )
    if isinstance(expr, ValueObj):
        return frozenset(
            ax.subject
            for ax in o.obj_assertions
            if ax.prop == expr.prop and ax.object == expr.individual
        )
    assert isinstance(expr, ValueData)
    return frozenset(
        ax.subject
        for ax in o.data_assertions
        if ax.prop == expr.prop and ax.value == expr.value
    )


def _named_conjuncts(expr: ClassExpr) -> list[str]:
    if isinstance(expr, Named):
        return [expr.name]
    if isinstance(expr, And) and all(isinstance(p, Named) for p in expr.parts):
        return [p.name for p in expr.parts]
    raise QueryEvalError(
        E_UNSUPPORTED_MODE,
        "subclass/superclass modes support only named classes and their intersections",
    )


def eval_query(
    o: Ontology,
    c: TaxonomyClosure,
    r: Realization,
    expr: ClassExpr,
    mode: QueryMode,
) -> list[str]:
    """Evaluate an expression in the given result mode; results are sorted.

    Direct modes keep only the result elements closest to the query class
    (no other result element lies between them and it).
    """
    _check_names(o, expr)
    if mode is QueryMode.INSTANCES:
        return sorted(_extension(o, r, expr))

    names = _named_conjuncts(expr)
    if mode in (QueryMode.SUBCLASSES, QueryMode.DIRECT_SUBCLASSES):
        result = c.descendants[names[0]]
        for name in names[1:]:
            result &= c.descendants[name]
        if mode is QueryMode.DIRECT_SUBCLASSES:
            result = frozenset(d for d in result if not (c.ancestors[d] & result))
        return sorted(result)

    result = frozenset({names[0]}) | c.ancestors[names[0]]
    for name in names[1:]:
        result &= frozenset({name}) | c.ancestors[name]
    result -= set(names)
    if mode is QueryMode.DIRECT_SUPERCLASSES:
        result = frozenset(a for a in result if not (c.descendants[a] & result))
    return sorted(result)
