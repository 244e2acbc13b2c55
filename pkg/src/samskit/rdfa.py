"""XML parsing and RDFa attribute processing.

Only a small, hand-checkable part of RDFa Core is honoured: ``about``,
``typeof``, ``property``, ``rel``, ``resource``, ``href``, ``content``,
``datatype``, ``prefix``, ``vocab`` and ``xmlns:*``. ``rev``, ``inlist``,
``role`` and ``xml:lang`` are ignored. The extractor never aborts on
semantic problems; it records a warning with the element position and skips
the affected triple.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Union
from urllib.parse import urljoin
from xml.parsers import expat

from .errors import SamskitError
from .rdf_model import (
    RDF, RDF_TYPE, RDFS, XSD, XSD_STRING, BlankNode, InvalidTerm, Iri, Literal, Triple,
    UnknownPrefix, expand_curie,
)

#: prefixes available in every document without declaration
INITIAL_PREFIXES = {"rdf": RDF, "rdfs": RDFS, "xsd": XSD}

_WS = re.compile(r"\s+")
_SCHEME = re.compile(r"[A-Za-z][A-Za-z0-9+.\-]*:")


class XmlSyntaxError(SamskitError):
    def __init__(self, position: tuple[int, int], message: str):
        super().__init__(f"{position[0]}:{position[1]}: {message}")
        self.position = position
        self.message = message


class MalformedReference(SamskitError, ValueError):
    pass


@dataclass
class XmlElement:
    name: str
    attributes: Dict[str, str] = field(default_factory=dict)
    children: List[Union["XmlElement", str]] = field(default_factory=list)
    line: int = 0
    column: int = 0

    @property
    def position(self) -> tuple[int, int]:
        return (self.line, self.column)

    def text(self) -> str:
        """Concatenated descendant text."""
        parts = []
        for child in self.children:
            parts.append(child if isinstance(child, str) else child.text())
        return "".join(parts)

    def elements(self) -> List["XmlElement"]:
        return [c for c in self.children if isinstance(c, XmlElement)]


def parse_xml(text: Union[str, bytes]) -> XmlElement:
    """Parse *text* into an :class:`XmlElement` tree.

    Namespace processing is off, so ``xmlns:p`` declarations stay visible as
    ordinary attributes. Entity declarations in a DTD are rejected.
    """
    parser = expat.ParserCreate()
    stack: List[XmlElement] = []
    roots: List[XmlElement] = []

    def start(name, attrs):
        el = XmlElement(name, dict(attrs), [], parser.CurrentLineNumber, parser.CurrentColumnNumber + 1)
        if stack:
            stack[-1].children.append(el)
        else:
            roots.append(el)
        stack.append(el)

    def end(name):
        stack.pop()

    def chars(data):
        if not stack:
            return
        kids = stack[-1].children
        if kids and isinstance(kids[-1], str):
            kids[-1] += data
        else:
            kids.append(data)

    def entity_decl(name, *args):
        raise XmlSyntaxError((parser.CurrentLineNumber, parser.CurrentColumnNumber + 1),
                             f"entity declarations are not supported ({name})")

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars
    parser.EntityDeclHandler = entity_decl
    try:
        parser.Parse(text, True)
    except expat.ExpatError as exc:
        raise XmlSyntaxError((exc.lineno, exc.offset + 1), expat.ErrorString(exc.code)) from None
    return roots[0]


def resolve_reference(ref: str, base: Union[Iri, str]) -> Iri:
    """Resolve an IRI reference against *base* (RFC 3986 rules)."""
    if _WS.search(ref):
        raise MalformedReference(f"whitespace in IRI reference {ref!r}")
    base_text = base.value if isinstance(base, Iri) else base
    if _SCHEME.match(ref):
        resolved = ref
    else:
        resolved = urljoin(base_text, ref)
        # urljoin drops an empty fragment, namespace IRIs rely on it
        if ref.endswith("#") and not resolved.endswith("#"):
            resolved += "#"
    try:
        return Iri(resolved)
    except InvalidTerm as exc:
        raise MalformedReference(str(exc)) from None


class ExtractionWarning(NamedTuple):
    position: tuple[int, int]
    message: str


@dataclass
class ExtractionResult:
    triples: List[Triple]
    warnings: List[ExtractionWarning]


class _Hanging:
    """Object of a ``rel`` with no resource; becomes a blank node only if a child needs it."""

    __slots__ = ("node",)

    def __init__(self):
        self.node = None


class _Pending:
    __slots__ = ("subject", "rels", "position", "completed")

    def __init__(self, subject, rels, position):
        self.subject = subject
        self.rels = rels
        self.position = position
        self.completed = False


@dataclass
class _Context:
    base: Iri
    parent_subject: object
    parent_object: object
    incomplete: Optional[_Pending]
    prefixes: Dict[str, str]
    vocab: Optional[str]


class _Extractor:
    def __init__(self, base: Iri, bnode_prefix: str):
        self.base = base
        self.bnode_prefix = bnode_prefix
        self.counter = 0
        self.triples: List[Triple] = []
        self._seen = set()
        self.warnings: List[ExtractionWarning] = []

    def fresh(self) -> BlankNode:
        self.counter += 1
        return BlankNode(f"{self.bnode_prefix}{self.counter}")

    def warn(self, el: XmlElement, message: str):
        self.warnings.append(ExtractionWarning(el.position, message))

    def emit(self, s, p, o):
        t = Triple(s, p, o)
        if t not in self._seen:
            self._seen.add(t)
            self.triples.append(t)

    def materialize(self, obj):
        if isinstance(obj, _Hanging):
            if obj.node is None:
                obj.node = self.fresh()
            return obj.node
        return obj

    # attribute value interpretation

    def term(self, el, token: str, ctx: _Context) -> Optional[Iri]:
        """Expand a typeof/property/rel/datatype token."""
        try:
            if ":" in token:
                prefix, local = token.split(":", 1)
                if prefix in ctx.prefixes:
                    return expand_curie(token, ctx.prefixes)
                if local.startswith("//") or prefix in ("urn", "mailto", "tag"):
                    return Iri(token)
                raise UnknownPrefix(prefix)
            if ctx.vocab:
                return Iri(ctx.vocab + token)
            self.warn(el, f"term {token!r} used without a vocabulary")
        except UnknownPrefix as exc:
            self.warn(el, f"{exc} in {token!r}")
        except InvalidTerm as exc:
            self.warn(el, str(exc))
        return None

    def terms(self, el, attr: str, ctx: _Context) -> List[Iri]:
        out = []
        for token in el.attributes.get(attr, "").split():
            iri = self.term(el, token, ctx)
            if iri is not None and iri not in out:
                out.append(iri)
        return out

    def resource(self, el, attr: str, ctx: _Context, curies: bool = True):
        value = el.attributes.get(attr)
        if value is None:
            return None
        value = value.strip()
        try:
            if curies and value.startswith("[") and value.endswith("]"):
                return expand_curie(value[1:-1], ctx.prefixes)
            if curies and ":" in value and value.split(":", 1)[0] in ctx.prefixes:
                return expand_curie(value, ctx.prefixes)
            return resolve_reference(value, ctx.base)
        except (SamskitError, InvalidTerm) as exc:
            self.warn(el, f"cannot resolve @{attr}: {exc}")
            return None

    # processing

    def local_context(self, el: XmlElement, ctx: _Context) -> _Context:
        attrs = el.attributes
        prefixes = ctx.prefixes
        declared = {k[6:]: v for k, v in attrs.items() if k.startswith("xmlns:")}
        if "prefix" in attrs:
            tokens = attrs["prefix"].split()
            if len(tokens) % 2:
                self.warn(el, f"malformed @prefix value {attrs['prefix']!r}")
            for name, ns in zip(tokens[::2], tokens[1::2]):
                if not name.endswith(":"):
                    self.warn(el, f"malformed prefix declaration {name!r}")
                    continue
                declared[name[:-1]] = ns
        if declared:
            prefixes = {**prefixes, **declared}
        vocab = ctx.vocab
        if "vocab" in attrs:
            raw = attrs["vocab"].strip()
            vocab = None
            if raw:
                try:
                    vocab = resolve_reference(raw, ctx.base).value
                except MalformedReference as exc:
                    self.warn(el, f"cannot resolve @vocab: {exc}")
        return _Context(ctx.base, ctx.parent_subject, ctx.parent_object, ctx.incomplete, prefixes, vocab)

    def process(self, el: XmlElement, ctx: _Context):
        ctx = self.local_context(el, ctx)
        attrs = el.attributes
        rels = self.terms(el, "rel", ctx)
        props = self.terms(el, "property", ctx)
        types = self.terms(el, "typeof", ctx)
        about = self.resource(el, "about", ctx)
        target = self.resource(el, "resource", ctx)
        if target is None and "resource" not in attrs:
            target = self.resource(el, "href", ctx, curies=False)

        new_subject = None
        obj = None
        typed = None
        skip = False
        if not rels:
            if about is not None:
                new_subject = about
            elif target is not None and (types or not props):
                new_subject = target
            elif types:
                new_subject = self.fresh()
            elif props:
                if target is not None:
                    self.warn(el, "@resource/@href ignored: @property values are always literals")
                new_subject = self.materialize(ctx.parent_object)
            else:
                skip = True
            typed = new_subject if types else None
        else:
            new_subject = about if about is not None else self.materialize(ctx.parent_object)
            if target is not None:
                obj = target
            elif types and about is None:
                obj = self.fresh()
            if types:
                typed = about if about is not None else obj

        if typed is not None:
            for t in types:
                self.emit(typed, RDF_TYPE, t)

        pending = None
        if rels and obj is not None:
            for r in rels:
                self.emit(new_subject, r, obj)
        elif rels:
            pending = _Pending(new_subject, rels, el.position)

        if props:
            datatype = self.datatype(el, ctx)
            if datatype is not None:
                if "content" in attrs:
                    lexical = attrs["content"]
                else:
                    lexical = _WS.sub(" ", el.text()).strip()
                for p in props:
                    self.emit(new_subject, p, Literal(lexical, datatype))

        if not skip and ctx.incomplete is not None:
            for r in ctx.incomplete.rels:
                self.emit(ctx.incomplete.subject, r, new_subject)
            ctx.incomplete.completed = True

        if skip:
            child_ctx = ctx
        else:
            if obj is not None:
                parent_object = obj
            elif pending is not None:
                parent_object = _Hanging()
            else:
                parent_object = new_subject
            child_ctx = _Context(ctx.base, new_subject, parent_object, pending, ctx.prefixes, ctx.vocab)

        for child in el.elements():
            self.process(child, child_ctx)

        if pending is not None and not pending.completed:
            names = " ".join(r.value for r in pending.rels)
            self.warn(el, f"relation {names} has no object")

    def datatype(self, el, ctx) -> Optional[Iri]:
        raw = el.attributes.get("datatype")
        if raw is None or not raw.strip():
            return XSD_STRING
        return self.term(el, raw.strip(), ctx)


def extract(doc: XmlElement, base: Union[Iri, str], prefixes: Optional[Dict[str, str]] = None,
            bnode_prefix: str = "b") -> ExtractionResult:
    """Extract the triples embedded in *doc*, resolving references against *base*.

    Blank nodes are labelled ``bnode_prefix`` + a counter in document order,
    so repeated extraction of the same document yields the same labels.
    """
    if not isinstance(base, Iri):
        base = Iri(base)
    ex = _Extractor(base, bnode_prefix)
    start_prefixes = dict(INITIAL_PREFIXES)
    if prefixes:
        start_prefixes.update(prefixes)
    ctx = _Context(base, base, base, None, start_prefixes, None)
    ex.process(doc, ctx)
    return ExtractionResult(ex.triples, ex.warnings)


def extract_text(text: Union[str, bytes], base: Union[Iri, str], **kwargs) -> ExtractionResult:
    return extract(parse_xml(text), base, **kwargs)
