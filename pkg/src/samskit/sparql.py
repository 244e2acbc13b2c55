"""A small SPARQL SELECT engine.

Supported: ``#`` comments, PREFIX, SELECT with an explicit variable list,
basic graph patterns with ``;`` and ``,`` abbreviations, ``a``, nested
groups, UNION and single-comparison FILTERs. Evaluation is a left-to-right
nested-loop join over the dataset indexes with bag semantics.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import SamskitError
from .rdf_model import (
    RDF_TYPE, XSD_DECIMAL, XSD_INTEGER, XSD_STRING, BlankNode, InvalidTerm, Iri, Literal, Ordering,
    Term, UnknownPrefix, compare_terms, expand_curie, serialize_term, unescape_string,
)
from .rdfa import MalformedReference, resolve_reference
from .store import Binding, Dataset, TriplePattern, Variable
from .vocab import FOAF

#: prefixes a query may use without declaring them
DEFAULT_PREFIXES = {"foaf": FOAF}
DEFAULT_BASE = "http://www.sams-projekt.de/"


class QuerySyntaxError(SamskitError):
    def __init__(self, position: Tuple[int, int], message: str):
        super().__init__(f"line {position[0]}, column {position[1]}: {message}")
        self.position = position
        self.message = message


@dataclass(frozen=True)
class FilterExpr:
    op: str
    lhs: Union[Variable, Term]
    rhs: Union[Variable, Term]

    def variables(self) -> set:
        return {t.name for t in (self.lhs, self.rhs) if isinstance(t, Variable)}


@dataclass(frozen=True)
class GroupPattern:
    elements: Tuple[Union[TriplePattern, "UnionPattern", FilterExpr, "GroupPattern"], ...]

    def variables(self) -> set:
        out = set()
        for e in self.elements:
            out |= e.variables()
        return out


@dataclass(frozen=True)
class UnionPattern:
    left: GroupPattern
    right: GroupPattern

    def variables(self) -> set:
        return self.left.variables() | self.right.variables()


@dataclass(frozen=True)
class SelectQuery:
    prefixes: Dict[str, str]
    projection: Tuple[str, ...]
    pattern: GroupPattern


# tokenizer

_TOKEN_SPEC = [
    ("WS", r"[ \t\r\n]+"),
    ("COMMENT", r"\#[^\n]*"),
    ("IRI", r"<[^<>\"{}|^`\\\x00-\x20]*>"),
    ("STRING", r'"(?:[^"\\\n\r]|\\.)*"'),
    ("DTYPE", r"\^\^"),
    ("VAR", r"[?$][A-Za-z][A-Za-z0-9_]*"),
    ("NUMBER", r"[+-]?(?:\d+\.\d*|\.\d+|\d+)"),
    ("PNAME", r"[A-Za-z][A-Za-z0-9_\-.]*?:[A-Za-z0-9_\-.]*[A-Za-z0-9_\-]|[A-Za-z][A-Za-z0-9_\-.]*?:|:[A-Za-z0-9_\-.]*[A-Za-z0-9_\-]|:"),
    ("WORD", r"[A-Za-z]+"),
    ("OP", r"<=|>=|!=|[<>=]"),
    ("PUNCT", r"[{}().;,*]"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{rx})" for name, rx in _TOKEN_SPEC))
_KEYWORDS = {"PREFIX", "SELECT", "WHERE", "UNION", "FILTER", "BASE"}


@dataclass
class _Tok:
    kind: str
    text: str
    pos: Tuple[int, int]


def _tokenize(text: str) -> List[_Tok]:
    tokens = []
    i = 0
    line, line_start = 1, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        pos = (line, i - line_start + 1)
        if not m:
            raise QuerySyntaxError(pos, f"unexpected character {text[i]!r}")
        kind = m.lastgroup
        chunk = m.group()
        if kind == "WORD" and chunk.upper() in _KEYWORDS:
            kind = "KW"
        if kind not in ("WS", "COMMENT"):
            tokens.append(_Tok(kind, chunk, pos))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = i + chunk.rfind("\n") + 1
        i = m.end()
    tokens.append(_Tok("EOF", "", (line, i - line_start + 1)))
    return tokens


class _Parser:
    def __init__(self, text: str, prefixes, base):
        self.toks = _tokenize(text)
        self.i = 0
        self.prefixes = dict(prefixes)
        self.base = base

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return QuerySyntaxError(tok.pos, message)

    def at(self, kind, text=None) -> bool:
        t = self.tok
        if t.kind != kind:
            return False
        return text is None or t.text.upper() == text.upper()

    def take(self, kind, text=None) -> _Tok:
        if not self.at(kind, text):
            want = text or kind
            got = self.tok.text or "end of query"
            raise self.error(f"expected {want}, found {got!r}")
        t = self.tok
        self.i += 1
        return t

    def query(self) -> SelectQuery:
        while self.at("KW", "PREFIX") or self.at("KW", "BASE"):
            if self.take("KW").text.upper() == "BASE":
                self.base = self.iri_ref(self.take("IRI"))
                continue
            name = self.take("PNAME")
            if not name.text.endswith(":") or name.text.count(":") != 1:
                raise self.error("prefix name must end with ':'", name)
            self.prefixes[name.text[:-1]] = self.iri_ref(self.take("IRI")).value
        self.take("KW", "SELECT")
        projection = []
        while self.at("VAR"):
            projection.append(self.take("VAR").text[1:])
        if not projection:
            raise self.error("SELECT needs at least one variable")
        if self.at("KW", "WHERE"):
            self.take("KW")
        where_tok = self.tok
        pattern = self.group()
        self.take("EOF")
        missing = [v for v in projection if v not in pattern.variables()]
        if missing:
            raise self.error(f"projected variable ?{missing[0]} does not occur in the pattern", where_tok)
        return SelectQuery(dict(self.prefixes), tuple(projection), pattern)

    def group(self) -> GroupPattern:
        open_tok = self.take("PUNCT", "{")
        elements = []
        while not self.at("PUNCT", "}"):
            if self.at("EOF"):
                raise self.error("unclosed '{'", open_tok)
            if self.at("PUNCT", "{"):
                sub = self.group()
                if self.at("KW", "UNION"):
                    branches = [sub]
                    while self.at("KW", "UNION"):
                        self.take("KW")
                        branches.append(self.group())
                    node = branches[-1]
                    for b in reversed(branches[:-1]):
                        node = UnionPattern(b, node if isinstance(node, GroupPattern) else GroupPattern((node,)))
                    elements.append(node)
                else:
                    elements.append(sub)
            elif self.at("KW", "FILTER"):
                self.take("KW")
                elements.append(self.filter())
            elif self.at("PUNCT", "."):
                self.take("PUNCT")
            else:
                elements.extend(self.triples_block())
        close = self.take("PUNCT", "}")
        if not elements:
            raise self.error("empty group pattern", close)
        return GroupPattern(tuple(elements))

    def triples_block(self) -> List[TriplePattern]:
        out = []
        subject = self.term(position="subject")
        while True:
            verb_tok = self.tok
            if self.at("WORD") and verb_tok.text == "a":
                self.i += 1
                verb = RDF_TYPE
            else:
                verb = self.term(position="predicate")
                if isinstance(verb, (Literal, BlankNode)):
                    raise self.error("predicate must be an IRI or variable", verb_tok)
            while True:
                obj = self.term(position="object")
                out.append(TriplePattern(subject, verb, obj))
                if self.at("PUNCT", ","):
                    self.take("PUNCT")
                    continue
                break
            if self.at("PUNCT", ";"):
                while self.at("PUNCT", ";"):
                    self.take("PUNCT")
                if self.at("PUNCT", ".") or self.at("PUNCT", "}"):
                    break
                continue
            break
        if not (self.at("PUNCT", ".") or self.at("PUNCT", "}") or self.at("KW", "FILTER")
                or self.at("PUNCT", "{") or self.at("EOF")):
            raise self.error(f"expected '.', ';', ',' or '}}' after triple pattern, found {self.tok.text!r}")
        return out

    def filter(self) -> FilterExpr:
        self.take("PUNCT", "(")
        lhs = self.term(position="operand")
        op_tok = self.tok
        if not self.at("OP"):
            raise self.error(f"expected a comparison operator, found {op_tok.text!r}")
        self.i += 1
        rhs = self.term(position="operand")
        self.take("PUNCT", ")")
        if not (isinstance(lhs, Variable) or isinstance(rhs, Variable)):
            raise self.error("FILTER comparison needs at least one variable", op_tok)
        return FilterExpr(op_tok.text, lhs, rhs)

    def iri_ref(self, tok: _Tok) -> Iri:
        raw = unescape_string(tok.text[1:-1])
        try:
            return resolve_reference(raw, self.base)
        except MalformedReference as exc:
            raise self.error(str(exc), tok) from None

    def term(self, position: str):
        tok = self.tok
        kind = tok.kind
        if kind == "VAR":
            self.i += 1
            return Variable(tok.text[1:])
        if kind == "IRI":
            self.i += 1
            return self.iri_ref(tok)
        if kind == "PNAME":
            self.i += 1
            try:
                return expand_curie(tok.text, self.prefixes)
            except UnknownPrefix as exc:
                exc.position = tok.pos
                raise
            except InvalidTerm as exc:
                raise self.error(str(exc), tok) from None
        if kind == "STRING":
            self.i += 1
            lexical = unescape_string(tok.text[1:-1])
            datatype = XSD_STRING
            if self.at("DTYPE"):
                self.i += 1
                dt = self.term(position="datatype")
                if not isinstance(dt, Iri):
                    raise self.error("datatype must be an IRI", tok)
                datatype = dt
            return Literal(lexical, datatype)
        if kind == "NUMBER":
            self.i += 1
            return Literal(tok.text, XSD_INTEGER if re.fullmatch(r"[+-]?\d+", tok.text) else XSD_DECIMAL)
        if kind == "EOF":
            raise self.error(f"unexpected end of query, expected {position}")
        raise self.error(f"expected {position}, found {tok.text!r}")


def parse_query(text: str, prefixes: Optional[Dict[str, str]] = None,
                base: str = DEFAULT_BASE) -> SelectQuery:
    """Parse a SELECT query.

    *prefixes* seeds the prefix map before the query's own PREFIX lines
    (default: ``foaf``); relative IRIs resolve against *base*.
    """
    seed = DEFAULT_PREFIXES if prefixes is None else prefixes
    return _Parser(text, seed, base).query()


# evaluation

_OPS = {
    "<": {Ordering.LESS},
    ">": {Ordering.GREATER},
    "<=": {Ordering.LESS, Ordering.EQUAL},
    ">=": {Ordering.GREATER, Ordering.EQUAL},
}


def eval_filter(e: FilterExpr, b: Binding) -> bool:
    """True only when the comparison holds; unbound or incomparable operands give False."""
    values = []
    for side in (e.lhs, e.rhs):
        if isinstance(side, Variable):
            if side.name not in b:
                return False
            values.append(b[side.name])
        else:
            values.append(side)
    lhs, rhs = values
    if e.op == "=":
        return lhs == rhs
    if e.op == "!=":
        return lhs != rhs
    return compare_terms(lhs, rhs) in _OPS[e.op]


def _eval_group(group: GroupPattern, ds: Dataset, seeds: List[Binding]) -> List[Binding]:
    current = seeds
    filters = []
    for el in group.elements:
        if isinstance(el, FilterExpr):
            filters.append(el)
        elif isinstance(el, TriplePattern):
            nxt = []
            for b in current:
                for m in ds.match(el.substitute(b)):
                    nxt.append({**b, **m})
            current = nxt
        elif isinstance(el, UnionPattern):
            nxt = []
            for b in current:
                nxt.extend(_eval_group(el.left, ds, [b]))
                nxt.extend(_eval_group(el.right, ds, [b]))
            current = nxt
        else:
            current = _eval_group(el, ds, current)
        if not current:
            return []
    # filters are applied once every element of the group has had a chance to bind
    for f in filters:
        current = [b for b in current if eval_filter(f, b)]
    return current


def evaluate(q: SelectQuery, ds: Dataset) -> List[Binding]:
    """Solutions of *q* over the merged view of *ds*, projected, in join order."""
    solutions = _eval_group(q.pattern, ds, [{}])
    return [{v: b[v] for v in q.projection if v in b} for b in solutions]


def to_tsv(projection: Sequence[str], solutions: Iterable[Binding]) -> str:
    lines = ["\t".join("?" + v for v in projection)]
    for b in solutions:
        lines.append("\t".join(serialize_term(b[v]) if v in b else "" for v in projection))
    return "\n".join(lines) + "\n"


def replace_terms(q: SelectQuery, mapping: Dict[Term, Term]) -> SelectQuery:
    """Copy of *q* with constant terms swapped according to *mapping*."""

    def sub(t):
        return mapping.get(t, t) if not isinstance(t, Variable) else t

    def walk(g: GroupPattern) -> GroupPattern:
        out = []
        for el in g.elements:
            if isinstance(el, TriplePattern):
                out.append(TriplePattern(*(sub(t) for t in el)))
            elif isinstance(el, FilterExpr):
                out.append(FilterExpr(el.op, sub(el.lhs), sub(el.rhs)))
            elif isinstance(el, UnionPattern):
                out.append(UnionPattern(walk(el.left), walk(el.right)))
            else:
                out.append(walk(el))
        return GroupPattern(tuple(out))

    return SelectQuery(q.prefixes, q.projection, walk(q.pattern))


