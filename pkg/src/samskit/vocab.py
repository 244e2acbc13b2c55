"""Namespaces of the formality dimensions and predicate classification."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Tuple

from .rdf_model import XSD, Iri
from .store import Dataset

VM = "http://www.sams-projekt.de/ontologies/VersionManagement#"
SEMVM = "http://www.sams-projekt.de/ontologies/V-model#"
OMDOC = "http://omdoc.org/ontology#"
DC = "http://purl.org/dc/elements/1.1/"
FOAF = "http://xmlns.com/foaf/0.1/"
SD = "http://www.sams-projekt.de/ontologies/SAMSDocs#"


class Dimension(enum.Enum):
    OBJECT = "Object"
    COLLECTION = "Collection"
    DOCUMENT = "Document"
    ORGANIZATION = "Organization"
    PROJECT = "Project"
    EXTERNAL = "External"
    UNKNOWN = "Unknown"

    @classmethod
    def parse(cls, name: str) -> "Dimension":
        for d in cls:
            if d.value.lower() == name.strip().lower():
                return d
        raise ValueError(f"unknown dimension {name!r}; expected one of {', '.join(d.value for d in cls)}")


@dataclass(frozen=True)
class Namespace:
    prefix: str
    iri: str
    dimension: Dimension
    terms: Tuple[str, ...] = ()

    def __getattr__(self, local: str) -> Iri:
        if local.startswith("_"):
            raise AttributeError(local)
        return Iri(self.iri + local)

    def __getitem__(self, local: str) -> Iri:
        return Iri(self.iri + local)


@dataclass(frozen=True)
class VocabularyRegistry:
    namespaces: Tuple[Namespace, ...]
    term_dimensions: Mapping[str, Dimension] = field(default_factory=dict)

    def __post_init__(self):
        iris = [ns.iri for ns in self.namespaces]
        for a in iris:
            for b in iris:
                if a != b and b.startswith(a):
                    raise ValueError(f"namespace {a} is a prefix of {b}")

    @property
    def prefixes(self) -> Dict[str, str]:
        return {ns.prefix: ns.iri for ns in self.namespaces}

    def namespace(self, prefix: str) -> Namespace:
        for ns in self.namespaces:
            if ns.prefix == prefix:
                return ns
        raise KeyError(prefix)

    def lookup(self, curie: str) -> Iri:
        prefix, _, local = curie.partition(":")
        return self.namespace(prefix)[local]

    def dimension_of(self, p: Iri) -> Dimension:
        value = p.value if isinstance(p, Iri) else str(p)
        if value in self.term_dimensions:
            return self.term_dimensions[value]
        best = None
        for ns in self.namespaces:
            if value.startswith(ns.iri) and (best is None or len(ns.iri) > len(best.iri)):
                best = ns
        return best.dimension if best else Dimension.UNKNOWN

    def rows(self) -> List[Tuple[str, str]]:
        """(CURIE, dimension) for every registered term, sorted."""
        out = []
        for ns in self.namespaces:
            for t in ns.terms:
                out.append((f"{ns.prefix}:{t}", self.dimension_of(ns[t]).value))
        return sorted(out)


def builtin_registry() -> VocabularyRegistry:
    namespaces = (
        Namespace("vm", VM, Dimension.ORGANIZATION, ("responsible", "reviewer", "state")),
        Namespace("semVM", SEMVM, Dimension.COLLECTION, ("refines",)),
        Namespace("omdoc", OMDOC, Dimension.OBJECT,
                  ("Theory", "Symbol", "Definition", "Assertion", "Proof", "occursInDefinitionOf",
                   "proves", "hasPart")),
        Namespace("dc", DC, Dimension.DOCUMENT, ("title", "date", "creator", "format")),
        Namespace("foaf", FOAF, Dimension.EXTERNAL, ("name", "Person")),
        Namespace("sd", SD, Dimension.PROJECT,
                  ("DefinitionTable", "proofState", "certificationState", "docState", "definedBy")),
        Namespace("xsd", XSD, Dimension.EXTERNAL, ("date", "string", "integer", "decimal")),
    )
    return VocabularyRegistry(namespaces, {OMDOC + "hasPart": Dimension.DOCUMENT})


REGISTRY = builtin_registry()

vm = REGISTRY.namespace("vm")
semvm = REGISTRY.namespace("semVM")
omdoc = REGISTRY.namespace("omdoc")
dc = REGISTRY.namespace("dc")
foaf = REGISTRY.namespace("foaf")
sd = REGISTRY.namespace("sd")


def dimension_of(p: Iri, reg: VocabularyRegistry = REGISTRY) -> Dimension:
    return reg.dimension_of(p)


def filter_by_dimensions(ds: Dataset, keep: Iterable[Dimension], reg: VocabularyRegistry = REGISTRY) -> Dataset:
    """Triples whose predicate falls into one of the *keep* dimensions."""
    keep = frozenset(keep)
    return ds.copy_filtered(lambda t: reg.dimension_of(t.predicate) in keep)


def dump_tsv(reg: VocabularyRegistry = REGISTRY) -> str:
    lines = ["term\tdimension"] + [f"{t}\t{d}" for t, d in reg.rows()]
    return "\n".join(lines) + "\n"
