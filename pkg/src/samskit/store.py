"""Indexed triple dataset with per-document named graphs and N-Triples I/O."""
from __future__ import annotations

import re
import threading
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Union

from .errors import SamskitError
from .rdf_model import BlankNode, InvalidTerm, Iri, Literal, Term, Triple, read_term, serialize_term

_VAR_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

Binding = Dict[str, Term]


@dataclass(frozen=True, order=True)
class Variable:
    name: str

    def __post_init__(self):
        if not _VAR_NAME.match(self.name):
            raise InvalidTerm(f"bad variable name: {self.name!r}")

    def __str__(self):
        return "?" + self.name


PatternTerm = Union[Term, Variable]


class TriplePattern(tuple):
    """(subject, predicate, object) where any position may be a :class:`Variable`."""

    __slots__ = ()

    def __new__(cls, subject: PatternTerm, predicate: PatternTerm, object: PatternTerm):
        if not isinstance(predicate, (Iri, Variable)):
            raise InvalidTerm(f"pattern predicate must be an IRI or variable, got {predicate!r}")
        return super().__new__(cls, (subject, predicate, object))

    subject = property(lambda self: self[0])
    predicate = property(lambda self: self[1])
    object = property(lambda self: self[2])

    def variables(self) -> set[str]:
        return {t.name for t in self if isinstance(t, Variable)}

    def substitute(self, binding: Binding) -> "TriplePattern":
        return TriplePattern(*(binding.get(t.name, t) if isinstance(t, Variable) else t for t in self))

    def __repr__(self):
        return "TriplePattern({!r}, {!r}, {!r})".format(*self)


def unify(pattern: TriplePattern, triple: Triple) -> Optional[Binding]:
    """Binding that makes *pattern* equal to *triple*, or None."""
    binding: Binding = {}
    for want, have in zip(pattern, triple):
        if isinstance(want, Variable):
            bound = binding.setdefault(want.name, have)
            if bound != have:
                return None
        elif want != have:
            return None
    return binding


class NtParseError(SamskitError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


def _index_add(index, a, b, c) -> bool:
    inner = index[a][b]
    if c in inner:
        return False
    inner[c] = None
    return True


class Dataset:
    """Named graphs keyed by source document IRI, plus a merged, indexed view.

    Readers get materialized results, so a concurrent insert never disturbs a
    match already in progress; writers are serialized by an internal lock.
    """

    def __init__(self):
        self.graphs: Dict[Iri, Dict[Triple, None]] = {}
        # innermost level is an insertion-ordered dict used as a set, so that
        # match results come out in a reproducible order
        self._spo = defaultdict(lambda: defaultdict(dict))
        self._pos = defaultdict(lambda: defaultdict(dict))
        self._osp = defaultdict(lambda: defaultdict(dict))
        self._size = 0
        self._lock = threading.RLock()

    def insert(self, source: Iri, triple: Triple) -> "Dataset":
        triple = Triple.checked(*triple)
        with self._lock:
            self.graphs.setdefault(source, {})[triple] = None
            s, p, o = triple
            if _index_add(self._spo, s, p, o):
                _index_add(self._pos, p, o, s)
                _index_add(self._osp, o, s, p)
                self._size += 1
        return self

    def update(self, source: Iri, triples: Iterable[Triple]) -> "Dataset":
        for t in triples:
            self.insert(source, t)
        return self

    def add_graph(self, source: Iri) -> None:
        with self._lock:
            self.graphs.setdefault(source, {})

    def __len__(self):
        return self._size

    def __contains__(self, triple):
        s, p, o = triple
        return o in self._spo.get(s, {}).get(p, ())

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.triples())

    def triples(self) -> List[Triple]:
        """Merged view as a list (snapshot)."""
        with self._lock:
            return [Triple(s, p, o) for s, po in self._spo.items() for p, os_ in po.items() for o in os_]

    def index_sizes(self) -> tuple[int, int, int]:
        def count(index):
            return sum(len(c) for ab in index.values() for c in ab.values())

        with self._lock:
            return count(self._spo), count(self._pos), count(self._osp)

    def sources_of(self, triple: Triple) -> List[Iri]:
        return sorted(src for src, g in self.graphs.items() if triple in g)

    def _candidates(self, pattern: TriplePattern) -> List[Triple]:
        s, p, o = (None if isinstance(t, Variable) else t for t in pattern)
        if s is not None:
            po = self._spo.get(s, {})
            if p is not None:
                objs = po.get(p, ())
                if o is not None:
                    return [Triple(s, p, o)] if o in objs else []
                return [Triple(s, p, x) for x in objs]
            return [Triple(s, pp, oo) for pp, objs in po.items() for oo in objs
                    if o is None or oo == o]
        if p is not None:
            os_ = self._pos.get(p, {})
            if o is not None:
                return [Triple(ss, p, o) for ss in os_.get(o, ())]
            return [Triple(ss, p, oo) for oo, subs in os_.items() for ss in subs]
        if o is not None:
            return [Triple(ss, pp, o) for ss, preds in self._osp.get(o, {}).items() for pp in preds]
        return [Triple(ss, pp, oo) for ss, po in self._spo.items() for pp, objs in po.items() for oo in objs]

    def match(self, pattern: TriplePattern) -> List[Binding]:
        """One binding per merged-view triple that unifies with *pattern*."""
        if not isinstance(pattern, TriplePattern):
            pattern = TriplePattern(*pattern)
        with self._lock:
            candidates = self._candidates(pattern)
        out = []
        for triple in candidates:
            b = unify(pattern, triple)
            if b is not None:
                out.append(b)
        return out

    # convenience lookups used by services and validation
    def objects(self, subject, predicate) -> set:
        with self._lock:
            return set(self._spo.get(subject, {}).get(predicate, ()))

    def subjects(self, predicate, obj) -> set:
        with self._lock:
            return set(self._pos.get(predicate, {}).get(obj, ()))

    def pairs(self, predicate) -> List[tuple]:
        """(subject, object) pairs for *predicate*."""
        with self._lock:
            return [(s, o) for o, subs in self._pos.get(predicate, {}).items() for s in subs]

    def copy_filtered(self, keep) -> "Dataset":
        """New dataset holding the triples for which ``keep(triple)`` is true, graphs preserved."""
        out = Dataset()
        with self._lock:
            for src, g in self.graphs.items():
                out.add_graph(src)
                for t in g:
                    if keep(t):
                        out.insert(src, t)
        return out


def insert(ds: Dataset, source: Iri, t: Triple) -> Dataset:
    return ds.insert(source, t)


def match(ds: Dataset, pattern: TriplePattern) -> List[Binding]:
    return ds.match(pattern)


def ntriples_line(t: Triple) -> str:
    return f"{serialize_term(t.subject)} {serialize_term(t.predicate)} {serialize_term(t.object)} ."


def export_ntriples(ds: Dataset, graph: Optional[Iri] = None) -> str:
    """Sorted, LF-terminated N-Triples for the merged view or one named graph."""
    if graph is None:
        triples = ds.triples()
    else:
        triples = ds.graphs.get(graph, {})
    lines = sorted({ntriples_line(t) for t in triples})
    return "".join(line + "\n" for line in lines)


def parse_ntriples_line(line: str, lineno: int = 0) -> Optional[Triple]:
    text = line.strip()
    if not text or text.startswith("#"):
        return None
    terms = []
    pos = 0
    try:
        for _ in range(3):
            term, pos = read_term(line, pos)
            terms.append(term)
    except InvalidTerm as exc:
        raise NtParseError(lineno, str(exc)) from None
    rest = line[pos:].strip()
    if not rest.startswith("."):
        raise NtParseError(lineno, "missing terminating '.'")
    rest = rest[1:].strip()
    if rest and not rest.startswith("#"):
        raise NtParseError(lineno, f"unexpected text after '.': {rest!r}")
    try:
        return Triple.checked(*terms)
    except InvalidTerm as exc:
        raise NtParseError(lineno, str(exc)) from None


def import_ntriples(text: str, source: Iri, into: Optional[Dataset] = None) -> Dataset:
    """Parse N-Triples *text* into the named graph *source*.

    Blank node labels are kept verbatim so that export/import round-trips
    exactly; extraction already makes them unique across a collection.
    """
    ds = into if into is not None else Dataset()
    ds.add_graph(source)
    for lineno, line in enumerate(text.splitlines(), start=1):
        triple = parse_ntriples_line(line, lineno)
        if triple is not None:
            ds.insert(source, triple)
    return ds


__all__ = [
    "Binding", "BlankNode", "Dataset", "Literal", "NtParseError", "TriplePattern", "Variable",
    "export_ntriples", "import_ntriples", "insert", "match", "unify",
]
