"""Extract, store and query multi-dimensional RDFa metadata of document collections."""
from .collection import ingest, minisams, minisams_manifest, validate
from .rdf_model import BlankNode, Iri, Literal, Triple, compare_terms, expand_curie, serialize_term
from .rdfa import extract, extract_text, parse_xml
from .sparql import evaluate, parse_query
from .store import Dataset, TriplePattern, Variable, export_ntriples, import_ntriples

__version__ = "0.1.0"

__all__ = [
    "BlankNode", "Dataset", "Iri", "Literal", "Triple", "TriplePattern", "Variable",
    "compare_terms", "evaluate", "expand_curie", "export_ntriples", "extract", "extract_text",
    "import_ntriples", "ingest", "minisams", "minisams_manifest", "parse_query", "parse_xml",
    "serialize_term", "validate",
]
