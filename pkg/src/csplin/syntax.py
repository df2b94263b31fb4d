"""S-expression reader and printer for languages, instances and pp-formulas.

Grammar (``;`` starts a comment)::

    file    := header? item*
    header  := (mode linear) | (mode affine)
    item    := (relation NAME (VARS...) FORMULA) | (instance (VARS...) FORMULA)
    FORMULA := (and CLAUSE*) | CLAUSE
    CLAUSE  := (or LIT*) | LIT
    LIT     := (eq TERM) | (ne TERM)
    TERM    := (lin CONST (COEFF VAR)*)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .formula import (AffineInvarianceError, Clause, CnfFormula, Language,
                      LinearTerm, Literal, Mode, Rel, Relation, is_affine_literal)
from .rational import format_rational, parse_rational


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        where = f"{line}:{col}: " if line else ""
        super().__init__(f"{where}{message}")


@dataclass
class Atom:
    text: str
    line: int
    col: int

    def __str__(self):
        return self.text


class SList(list):
    """A parenthesized list remembering where it opened."""

    line = 0
    col = 0


def _tokens(text: str) -> Iterator[tuple[str, int, int]]:
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in "()":
            yield ch, line, col
            i += 1
            col += 1
            continue
        start, start_col = i, col
        while i < n and not text[i].isspace() and text[i] not in "();":
            i += 1
            col += 1
        yield text[start:i], line, start_col


def read_sexprs(text: str) -> list:
    """Parse text into nested ``SList``/``Atom`` values."""
    stack: list[SList] = [SList()]
    for tok, line, col in _tokens(text):
        if tok == "(":
            node = SList()
            node.line, node.col = line, col
            stack[-1].append(node)
            stack.append(node)
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", line, col)
            stack.pop()
        else:
            stack[-1].append(Atom(tok, line, col))
    if len(stack) > 1:
        node = stack[-1]
        raise ParseError("unclosed '('", node.line, node.col)
    return list(stack[0])


def _pos(node):
    return getattr(node, "line", 0), getattr(node, "col", 0)


def _head(node) -> str | None:
    if isinstance(node, SList) and node and isinstance(node[0], Atom):
        return node[0].text
    return None


def _expect_list(node, what: str) -> SList:
    if not isinstance(node, SList):
        raise ParseError(f"expected {what}, got {node}", *_pos(node))
    return node


def _atom(node, what: str) -> str:
    if not isinstance(node, Atom):
        raise ParseError(f"expected {what}", *_pos(node))
    return node.text


def _rational(node):
    text = _atom(node, "a rational")
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc), *_pos(node)) from None


def _term(node) -> LinearTerm:
    node = _expect_list(node, "(lin CONST (COEFF VAR)*)")
    if _head(node) != "lin" or len(node) < 2:
        raise ParseError("expected (lin CONST (COEFF VAR)*)", *_pos(node))
    const = _rational(node[1])
    pairs = []
    for entry in node[2:]:
        entry = _expect_list(entry, "(COEFF VAR)")
        if len(entry) != 2:
            raise ParseError("expected (COEFF VAR)", *_pos(entry))
        pairs.append((_atom(entry[1], "a variable name"), _rational(entry[0])))
    return LinearTerm(pairs, const)


def _literal(node, mode: Mode) -> Literal:
    head = _head(node)
    if head not in ("eq", "ne") or len(node) != 2:
        raise ParseError("expected (eq TERM) or (ne TERM)", *_pos(node))
    lit = Literal(_term(node[1]), Rel.EQ if head == "eq" else Rel.NE)
    if mode is Mode.AFFINE and not is_affine_literal(lit):
        line, col = _pos(node)
        raise ParseError(str(AffineInvarianceError(lit)), line, col)
    return lit


def _clause(node, mode: Mode) -> list[Literal]:
    node = _expect_list(node, "a clause")
    if _head(node) == "or":
        return [_literal(x, mode) for x in node[1:]]
    return [_literal(node, mode)]


def _formula(node, mode: Mode, variables: tuple[str, ...]) -> CnfFormula:
    node = _expect_list(node, "a formula")
    items = node[1:] if _head(node) == "and" else [node]
    clauses = [_clause(c, mode) for c in items]
    known = set(variables)
    for c in clauses:
        for l in c:
            for v in l.variables():
                if v not in known:
                    raise ParseError(f"variable {v!r} is not declared", *_pos(node))
    return CnfFormula.build(clauses, variables)


def _varlist(node) -> tuple[str, ...]:
    node = _expect_list(node, "a variable list")
    names = tuple(_atom(x, "a variable name") for x in node)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable in list", *_pos(node))
    return names


@dataclass
class Document:
    """Everything one input file declares."""

    mode: Mode = Mode.LINEAR
    relations: list[Relation] = field(default_factory=list)
    instances: list[CnfFormula] = field(default_factory=list)

    @property
    def language(self) -> Language:
        return Language(self.mode, tuple(self.relations))


def parse_document(text: str, mode: Mode | None = None) -> Document:
    """Parse a whole file; ``mode`` overrides the header when given."""
    nodes = read_sexprs(text)
    doc = Document()
    if nodes and _head(nodes[0]) == "mode":
        header = nodes.pop(0)
        if len(header) != 2 or _atom(header[1], "linear|affine") not in ("linear", "affine"):
            raise ParseError("expected (mode linear) or (mode affine)", *_pos(header))
        doc.mode = Mode(header[1].text)
    if mode is not None:
        doc.mode = mode
    names = set()
    for node in nodes:
        head = _head(node)
        if head == "relation":
            if len(node) != 4:
                raise ParseError("expected (relation NAME (VARS...) FORMULA)", *_pos(node))
            name = _atom(node[1], "a relation name")
            if name in names:
                raise ParseError(f"relation {name!r} defined twice", *_pos(node))
            names.add(name)
            params = _varlist(node[2])
            doc.relations.append(Relation(name, _formula(node[3], doc.mode, params)))
        elif head == "instance":
            if len(node) != 3:
                raise ParseError("expected (instance (VARS...) FORMULA)", *_pos(node))
            doc.instances.append(_formula(node[2], doc.mode, _varlist(node[1])))
        elif head == "mode":
            raise ParseError("mode header must come first", *_pos(node))
        else:
            raise ParseError(f"unexpected item {head or node}", *_pos(node))
    return doc


def parse_language(text: str, mode: Mode | None = None) -> Language:
    return parse_document(text, mode).language


def parse_instance(text: str, mode: Mode | None = None) -> CnfFormula:
    doc = parse_document(text, mode)
    if len(doc.instances) != 1:
        raise ParseError(f"expected exactly one instance, found {len(doc.instances)}")
    return doc.instances[0]


def parse_formula(text: str, variables, mode: Mode = Mode.LINEAR) -> CnfFormula:
    """Parse a bare FORMULA over the given variable list."""
    nodes = read_sexprs(text)
    if len(nodes) != 1:
        raise ParseError("expected a single formula")
    return _formula(nodes[0], mode, tuple(variables))


def parse_term(text: str) -> LinearTerm:
    nodes = read_sexprs(text)
    if len(nodes) != 1:
        raise ParseError("expected a single term")
    return _term(nodes[0])


# -- printing -----------------------------------------------------------------

def format_term(t: LinearTerm) -> str:
    parts = [f"(lin {format_rational(t.const)}"]
    parts += [f" ({format_rational(c)} {v})" for v, c in t.items()]
    return "".join(parts) + ")"


def format_literal(l: Literal) -> str:
    return f"({l.rel.value} {format_term(l.term)})"


def format_clause(c: Clause) -> str:
    if len(c) == 1:
        return format_literal(c.literals[0])
    return "(or" + "".join(" " + format_literal(l) for l in c.literals) + ")"


def format_formula(f: CnfFormula) -> str:
    return "(and" + "".join(" " + format_clause(c) for c in f.clauses) + ")"


def format_relation(r: Relation) -> str:
    return f"(relation {r.name} ({' '.join(r.params)}) {format_formula(r.definition)})"


def format_instance(f: CnfFormula) -> str:
    return f"(instance ({' '.join(f.variables)}) {format_formula(f)})"


def format_language(lang: Language) -> str:
    lines = [f"(mode {lang.mode.value})"]
    lines += [format_relation(r) for r in lang.relations]
    return "\n".join(lines) + "\n"


def format_document(doc: Document) -> str:
    lines = [f"(mode {doc.mode.value})"]
    lines += [format_relation(r) for r in doc.relations]
    lines += [format_instance(f) for f in doc.instances]
    return "\n".join(lines) + "\n"


def to_text(value) -> str:
    """Print any of Language, Document, Relation, CnfFormula, Literal, LinearTerm."""
    if isinstance(value, Language):
        return format_language(value)
    if isinstance(value, Document):
        return format_document(value)
    if isinstance(value, Relation):
        return format_relation(value)
    if isinstance(value, CnfFormula):
        return format_instance(value)
    if isinstance(value, Literal):
        return format_literal(value)
    if isinstance(value, LinearTerm):
        return format_term(value)
    raise TypeError(f"cannot print {type(value).__name__}")
