"""RDF terms, triples, prefix maps and literal comparison.

Every other module speaks in these values. All of them are frozen and
hashable, so they can sit in sets, index dictionaries and solution maps.
"""
from __future__ import annotations

import datetime as _dt
import enum
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Mapping, NamedTuple, Union

from .errors import SamskitError

XSD = "http://www.w3.org/2001/XMLSchema#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"

_SCHEME = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")
_BAD_IRI_CHARS = re.compile(r"[\s\x00-\x1f\x7f<>\"{}|^`\\]")
_BNODE_LABEL = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")
_DATE = re.compile(r"(\d{4})-(\d{2})-(\d{2})\Z")


class InvalidTerm(SamskitError, ValueError):
    pass


class UnknownPrefix(SamskitError, KeyError):
    def __init__(self, prefix: str):
        super().__init__(prefix)
        self.prefix = prefix

    def __str__(self):
        return f"unknown prefix {self.prefix!r}"


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self):
        if not _SCHEME.match(self.value):
            raise InvalidTerm(f"IRI has no scheme: {self.value!r}")
        if _BAD_IRI_CHARS.search(self.value):
            raise InvalidTerm(f"IRI contains illegal characters: {self.value!r}")

    def __str__(self):
        return self.value

    def __repr__(self):
        return f"Iri({self.value!r})"


@dataclass(frozen=True, order=True)
class BlankNode:
    label: str

    def __post_init__(self):
        if not _BNODE_LABEL.match(self.label):
            raise InvalidTerm(f"bad blank node label: {self.label!r}")

    def __str__(self):
        return "_:" + self.label


XSD_STRING = Iri(XSD + "string")
XSD_DATE = Iri(XSD + "date")
XSD_INTEGER = Iri(XSD + "integer")
XSD_DECIMAL = Iri(XSD + "decimal")
RDF_TYPE = Iri(RDF + "type")


@dataclass(frozen=True, order=True)
class Literal:
    """A typed literal.

    Malformed lexical forms (say ``"2009-13-45"^^xsd:date``) are accepted here
    so that documents carrying them can still be loaded and reported on; they
    simply compare as incomparable. Use :meth:`is_well_formed` to check.
    """

    lexical: str
    datatype: Iri = XSD_STRING

    def __str__(self):
        return serialize_term(self)

    def is_well_formed(self) -> bool:
        return _literal_value(self) is not None

    def value(self):
        """Python value of the literal (``date``, ``Decimal`` or ``str``), or None."""
        got = _literal_value(self)
        return None if got is None else got[1]


Term = Union[Iri, BlankNode, Literal]
PrefixMap = Mapping[str, str]


class Triple(NamedTuple):
    subject: Union[Iri, BlankNode]
    predicate: Iri
    object: Term

    @classmethod
    def checked(cls, s, p, o) -> "Triple":
        if not isinstance(s, (Iri, BlankNode)):
            raise InvalidTerm(f"subject must be an IRI or blank node, got {s!r}")
        if not isinstance(p, Iri):
            raise InvalidTerm(f"predicate must be an IRI, got {p!r}")
        if not isinstance(o, (Iri, BlankNode, Literal)):
            raise InvalidTerm(f"object must be an RDF term, got {o!r}")
        return cls(s, p, o)


def expand_curie(curie: str, prefixes: PrefixMap) -> Iri:
    """Expand ``prefix:local`` against *prefixes*.

    >>> expand_curie("xsd:date", {"xsd": XSD})
    Iri('http://www.w3.org/2001/XMLSchema#date')
    """
    prefix, sep, local = curie.partition(":")
    if not sep:
        raise InvalidTerm(f"not a CURIE: {curie!r}")
    try:
        namespace = prefixes[prefix]
    except KeyError:
        raise UnknownPrefix(prefix) from None
    return Iri(namespace + local)


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1
    INCOMPARABLE = None


_NUMERIC = {XSD_INTEGER, XSD_DECIMAL}


def _literal_value(lit: Literal):
    """(kind, value) for comparable literals, None for unknown types or bad lexical forms."""
    dt = lit.datatype
    if dt == XSD_STRING:
        return "string", lit.lexical
    if dt == XSD_DATE:
        m = _DATE.match(lit.lexical)
        if not m:
            return None
        try:
            return "date", _dt.date(int(m[1]), int(m[2]), int(m[3]))
        except ValueError:
            return None
    if dt in _NUMERIC:
        text = lit.lexical.strip()
        if dt == XSD_INTEGER and not re.fullmatch(r"[+-]?\d+", text):
            return None
        if dt == XSD_DECIMAL and not re.fullmatch(r"[+-]?(\d+(\.\d*)?|\.\d+)", text):
            return None
        try:
            return "number", Decimal(text)
        except InvalidOperation:
            return None
    return None


def compare_terms(a: Term, b: Term) -> Ordering:
    """Order two terms for FILTER comparisons.

    Identical terms are EQUAL whatever their kind. Otherwise only literals of
    the same comparable kind (string, date, integer/decimal) are ordered.
    """
    if a == b:
        return Ordering.EQUAL
    if not (isinstance(a, Literal) and isinstance(b, Literal)):
        return Ordering.INCOMPARABLE
    va, vb = _literal_value(a), _literal_value(b)
    if va is None or vb is None or va[0] != vb[0]:
        return Ordering.INCOMPARABLE
    if va[1] < vb[1]:
        return Ordering.LESS
    if va[1] > vb[1]:
        return Ordering.GREATER
    return Ordering.EQUAL


_ESCAPES = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_ESCAPE_RE = re.compile(r'["\\\n\r\t]')


def escape_string(text: str) -> str:
    return _ESCAPE_RE.sub(lambda m: _ESCAPES[m[0]], text)


def serialize_term(t: Term) -> str:
    if isinstance(t, Iri):
        return f"<{t.value}>"
    if isinstance(t, BlankNode):
        return f"_:{t.label}"
    if isinstance(t, Literal):
        body = f'"{escape_string(t.lexical)}"'
        if t.datatype == XSD_STRING:
            return body
        return f"{body}^^<{t.datatype.value}>"
    raise TypeError(f"not an RDF term: {t!r}")


_TERM_RE = re.compile(
    r"""\s*(?:
        <(?P<iri>[^>]*)>
      | _:(?P<bnode>[A-Za-z0-9]+)
      | "(?P<lit>(?:[^"\\\n\r]|\\.)*)"(?:\^\^<(?P<dt>[^>]*)>|(?P<lang>@[A-Za-z\-]+))?
    )""",
    re.VERBOSE,
)
_UNESCAPE_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)")
_SIMPLE_UNESCAPES = {'"': '"', "\\": "\\", "n": "\n", "r": "\r", "t": "\t", "'": "'", "b": "\b", "f": "\f"}


def unescape_string(text: str) -> str:
    def sub(m):
        code = m[1]
        if code[0] in "uU" and len(code) > 1:
            return chr(int(code[1:], 16))
        try:
            return _SIMPLE_UNESCAPES[code]
        except KeyError:
            raise InvalidTerm(f"bad escape \\{code}") from None

    return _UNESCAPE_RE.sub(sub, text)


def read_term(text: str, pos: int = 0) -> tuple[Term, int]:
    """Read one N-Triples term from *text* at *pos*; returns the term and the end offset."""
    m = _TERM_RE.match(text, pos)
    if not m or m.end() == pos:
        raise InvalidTerm(f"expected an RDF term at offset {pos}")
    if m["iri"] is not None:
        return Iri(unescape_string(m["iri"])), m.end()
    if m["bnode"] is not None:
        return BlankNode(m["bnode"]), m.end()
    if m["lang"]:
        raise InvalidTerm("language-tagged literals are not supported")
    datatype = Iri(m["dt"]) if m["dt"] is not None else XSD_STRING
    return Literal(unescape_string(m["lit"]), datatype), m.end()


def parse_term(text: str) -> Term:
    """Inverse of :func:`serialize_term`."""
    term, end = read_term(text)
    if text[end:].strip():
        raise InvalidTerm(f"trailing characters after term: {text[end:]!r}")
    return term


def date_literal(value) -> Literal:
    """Build an xsd:date literal from a ``date`` or ``YYYY-MM-DD`` text."""
    if isinstance(value, Literal):
        return value
    if isinstance(value, _dt.date):
        value = value.isoformat()
    return Literal(str(value), XSD_DATE)
