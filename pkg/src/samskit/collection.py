"""Document collections: manifests, ingestion, link validation and statistics.

A manifest is a UTF-8 text file::

    # comment
    @base <http://example.org/collection/>
    path<TAB>document-iri<TAB>format[<TAB>key=value;key=value]

Document IRIs and ``responsible``/``reviewer`` values are resolved against
the base. Recognised metadata keys are title, date, creator, responsible and
reviewer. Only ``xml`` entries are parsed; every other format is recorded as
a ``dc:format`` stub.
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import List, NamedTuple, Tuple, Union

from .errors import SamskitError
from .rdf_model import RDF_TYPE, XSD_DATE, Iri, Literal, Triple, date_literal
from .rdfa import MalformedReference, XmlSyntaxError, extract, parse_xml, resolve_reference
from .store import Dataset
from .vocab import dc, omdoc, sd, semvm, vm

XML_FORMATS = ("xml",)
_META_KEYS = ("title", "date", "creator", "responsible", "reviewer")


class ManifestError(SamskitError):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    path: Path
    document: Iri
    format: str
    metadata: Tuple[Tuple[str, str], ...] = ()


@dataclass
class CollectionManifest:
    base: Iri
    entries: List[ManifestEntry] = field(default_factory=list)
    directory: Path = Path(".")


def parse_manifest(text: str, directory: Union[str, Path] = ".", check_files: bool = True) -> CollectionManifest:
    directory = Path(directory)
    base = None
    entries: List[ManifestEntry] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if line.startswith("@base"):
            m = re.fullmatch(r"@base\s+<([^>\s]*)>\s*", line)
            if not m:
                raise ManifestError(f"manifest line {lineno}: expected '@base <iri>'")
            try:
                base = Iri(m[1])
            except SamskitError as exc:
                raise ManifestError(f"manifest line {lineno}: {exc}") from None
            continue
        if base is None:
            raise ManifestError(f"manifest line {lineno}: entries must follow an '@base <iri>' header")
        cols = line.split("\t")
        if len(cols) not in (3, 4):
            raise ManifestError(f"manifest line {lineno}: expected 3 or 4 tab-separated columns, got {len(cols)}")
        path, iri, fmt = (c.strip() for c in cols[:3])
        try:
            doc = resolve_reference(iri, base)
        except MalformedReference as exc:
            raise ManifestError(f"manifest line {lineno}: {exc}") from None
        if doc in seen:
            raise ManifestError(f"manifest line {lineno}: duplicate document IRI {doc}")
        seen.add(doc)
        meta = []
        if len(cols) == 4 and cols[3].strip():
            for item in cols[3].split(";"):
                key, sep, value = item.partition("=")
                key = key.strip()
                if not sep or key not in _META_KEYS:
                    raise ManifestError(f"manifest line {lineno}: bad metadata item {item!r}")
                meta.append((key, value.strip()))
        full = directory / path
        if check_files and not full.is_file():
            raise ManifestError(f"manifest line {lineno}: missing file {full}")
        entries.append(ManifestEntry(Path(path), doc, fmt.lower(), tuple(meta)))
    if base is None:
        base = Iri("http://localhost/")
    return CollectionManifest(base, entries, directory)


def load_manifest(path: Union[str, Path]) -> CollectionManifest:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc.strerror}") from None
    return parse_manifest(text, path.parent)


def metadata_triples(entry: ManifestEntry, base: Iri) -> List[Triple]:
    out = [Triple(entry.document, dc.format, Literal(entry.format))]
    for key, value in entry.metadata:
        if key in ("responsible", "reviewer"):
            try:
                person = resolve_reference(value, base)
            except MalformedReference as exc:
                raise ManifestError(f"{entry.path}: {exc}") from None
            out.append(Triple(entry.document, vm[key], person))
        elif key == "date":
            out.append(Triple(entry.document, dc.date, date_literal(value)))
        else:
            out.append(Triple(entry.document, dc[key], Literal(value)))
    return out


class IngestWarning(NamedTuple):
    document: Iri
    position: Tuple[int, int]
    message: str


def ingest_manifest(manifest: CollectionManifest) -> Tuple[Dataset, List[IngestWarning]]:
    ds = Dataset()
    warnings: List[IngestWarning] = []
    for i, entry in enumerate(manifest.entries, 1):
        ds.add_graph(entry.document)
        if entry.format in XML_FORMATS:
            path = manifest.directory / entry.path
            try:
                root = parse_xml(path.read_bytes())
            except OSError as exc:
                raise ManifestError(f"cannot read {path}: {exc.strerror}") from None
            except XmlSyntaxError as exc:
                raise ManifestError(f"{path}:{exc}") from None
            # blank node labels must not collide across documents of one collection
            result = extract(root, entry.document, bnode_prefix=f"d{i}b")
            ds.update(entry.document, result.triples)
            warnings.extend(IngestWarning(entry.document, w.position, w.message) for w in result.warnings)
        ds.update(entry.document, metadata_triples(entry, manifest.base))
    return ds, warnings


def ingest(manifest: Union[str, Path, CollectionManifest]) -> Dataset:
    if not isinstance(manifest, CollectionManifest):
        manifest = load_manifest(manifest)
    return ingest_manifest(manifest)[0]


class Finding(NamedTuple):
    severity: str
    document: str
    message: str


@dataclass
class ValidationReport:
    findings: List[Finding]

    @property
    def errors(self) -> List[Finding]:
        return [f for f in self.findings if f.severity == "error"]

    @property
    def warnings(self) -> List[Finding]:
        return [f for f in self.findings if f.severity == "warning"]

    def ok(self) -> bool:
        return not self.errors

    def to_tsv(self) -> str:
        return "".join(f"{f.severity}\t{f.document}\t{f.message}\n" for f in self.findings)


def documents(ds: Dataset) -> set:
    """Subjects that behave like documents: they have parts, a format or a date."""
    docs = {s for s, _ in ds.pairs(omdoc.hasPart)}
    docs |= {s for s, _ in ds.pairs(dc.format)}
    docs |= {s for s, _ in ds.pairs(dc.date)}
    return docs


def _term_text(t) -> str:
    return t.value if isinstance(t, Iri) else str(t)


def _owner(ds: Dataset, subject, triple: Triple) -> str:
    """Document to blame for *triple*: the container of its subject, else its source graph."""
    holders = sorted(_term_text(d) for d in ds.subjects(omdoc.hasPart, subject))
    if subject in documents(ds):
        holders = [_term_text(subject)]
    if not holders:
        holders = [_term_text(g) for g in ds.sources_of(triple)]
    return holders[0] if holders else ""


def validate(ds: Dataset) -> ValidationReport:
    findings = []
    contained = {o for _, o in ds.pairs(omdoc.hasPart)}
    for s, target in ds.pairs(semvm.refines):
        if target not in contained:
            t = Triple(s, semvm.refines, target)
            findings.append(Finding("error", _owner(ds, s, t),
                                    f"dangling refines target {_term_text(target)} (from {_term_text(s)})"))
    for doc in documents(ds):
        if not ds.objects(doc, vm.responsible):
            findings.append(Finding("warning", _term_text(doc), "document has no responsible person"))
    for sym in ds.subjects(RDF_TYPE, omdoc.Symbol):
        if not ds.objects(sym, sd.definedBy):
            t = Triple(sym, RDF_TYPE, omdoc.Symbol)
            findings.append(Finding("warning", _owner(ds, sym, t),
                                    f"symbol {_term_text(sym)} has no definition link"))
    for t in ds.triples():
        o = t.object
        if isinstance(o, Literal) and o.datatype == XSD_DATE and not o.is_well_formed():
            findings.append(Finding("error", _owner(ds, t.subject, t),
                                    f"malformed xsd:date {o.lexical!r} on {_term_text(t.subject)}"))
    findings.sort(key=lambda f: (f.document, f.message, f.severity))
    return ValidationReport(findings)


class StatsRow(NamedTuple):
    format: str
    documents: int
    triples: int


def stats(ds: Dataset, manifest: CollectionManifest) -> List[StatsRow]:
    """Per-format document and triple counts (triples counted per named graph)."""
    docs = defaultdict(int)
    triples = defaultdict(int)
    for entry in manifest.entries:
        docs[entry.format] += 1
        triples[entry.format] += len(ds.graphs.get(entry.document, ()))
    return [StatsRow(fmt, docs[fmt], triples[fmt]) for fmt in sorted(docs)]


def minisams_manifest() -> Path:
    """Path of the bundled miniature collection's manifest."""
    return Path(str(resources.files("samskit.fixtures").joinpath("minisams", "manifest.tsv")))


def minisams() -> Dataset:
    return ingest(minisams_manifest())
