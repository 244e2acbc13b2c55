"""Project-management services over an extracted document collection.

Each service answers one recurring question (who can stand in for an
employee, what a rejected object drags along, how much is verified, ...)
directly from the dataset indexes.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Mapping, Set, Tuple, Union

from .errors import SamskitError
from .rdf_model import RDF_TYPE, XSD_STRING, Iri, Literal, Ordering, compare_terms, date_literal
from .store import Dataset, Variable
from .vocab import dc, foaf, omdoc, sd, semvm, vm


class UnknownEmployee(SamskitError):
    pass


class UnknownSymbol(SamskitError):
    pass


class OrphanObject(SamskitError):
    pass


UNREVIEWED, APPROVED, REJECTED = "unreviewed", "approved", "rejected"
STATES = (UNREVIEWED, APPROVED, REJECTED)


def _name(ds: Dataset, person) -> List[str]:
    return sorted(o.lexical for o in ds.objects(person, foaf.name) if isinstance(o, Literal))


def containers(ds: Dataset, obj) -> Set:
    """Documents that list *obj* as a part."""
    return ds.subjects(omdoc.hasPart, obj)


def related_objects(ds: Dataset, obj) -> Set:
    """Objects *obj* refines, plus objects defined in terms of *obj*."""
    return ds.objects(obj, semvm.refines) | ds.objects(obj, omdoc.occursInDefinitionOf)


def find_substitute(ds: Dataset, employee: Iri, cutoff) -> Set[Tuple[Iri, str]]:
    """People responsible for recent documents related to *employee*'s work.

    Walks: documents *employee* is responsible for, their parts, objects those
    parts refine or occur in the definition of, the documents holding those,
    keeping documents dated after *cutoff*, and finally their responsible
    people with their names. The employee never substitutes for themselves.
    """
    cutoff = date_literal(cutoff)
    own_docs = ds.subjects(vm.responsible, employee)
    if not own_docs:
        raise UnknownEmployee(f"{employee} is not responsible for any document")
    out = set()
    for doc in own_docs:
        for obj in ds.objects(doc, omdoc.hasPart):
            for rel in related_objects(ds, obj):
                for other in containers(ds, rel):
                    if not any(compare_terms(d, cutoff) is Ordering.GREATER for d in ds.objects(other, dc.date)):
                        continue
                    for person in ds.objects(other, vm.responsible):
                        if person == employee:
                            continue
                        for name in _name(ds, person):
                            out.add((person, name))
    return out


@dataclass(frozen=True)
class ImpactReport:
    root: Iri
    objects: FrozenSet
    documents: FrozenSet


def dependents(ds: Dataset, obj) -> Set:
    """Objects that refine *obj* or whose definition uses *obj*."""
    return ds.subjects(semvm.refines, obj) | ds.objects(obj, omdoc.occursInDefinitionOf)


def impact_set(ds: Dataset, obj: Iri) -> ImpactReport:
    seen = {obj}
    stack = [obj]
    while stack:
        for nxt in dependents(ds, stack.pop()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    docs = set()
    for o in seen:
        docs |= containers(ds, o)
    return ImpactReport(obj, frozenset(seen), frozenset(docs))


class CertificationState:
    """Approval state per subject; anything not recorded is unreviewed.

    Instances are treated as values: :meth:`approve` and :func:`reject`
    return new states.
    """

    def __init__(self, states: Mapping[Iri, str] = ()):
        self._states: Dict[Iri, str] = {}
        for k, v in dict(states).items():
            if v not in STATES:
                raise ValueError(f"unknown certification state {v!r}")
            if v != UNREVIEWED:
                self._states[k] = v

    def get(self, subject: Iri) -> str:
        return self._states.get(subject, UNREVIEWED)

    def with_states(self, subjects: Iterable[Iri], state: str) -> "CertificationState":
        new = dict(self._states)
        for s in subjects:
            new[s] = state
        return CertificationState(new)

    def approve(self, subject: Iri) -> "CertificationState":
        return self.with_states([subject], APPROVED)

    def rejected(self) -> Set[Iri]:
        return {s for s, v in self._states.items() if v == REJECTED}

    def items(self):
        return sorted(self._states.items())

    def __eq__(self, other):
        return isinstance(other, CertificationState) and self._states == other._states

    def __repr__(self):
        return f"CertificationState({dict(self.items())!r})"

    def dumps(self) -> str:
        return "".join(f"{s.value}\t{v}\n" for s, v in self.items())

    @classmethod
    def loads(cls, text: str) -> "CertificationState":
        states = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                subject, state = line.split("\t")
            except ValueError:
                raise SamskitError(f"state file line {lineno}: expected 'iri<TAB>state'") from None
            subject = subject.strip()
            if subject.startswith("<") and subject.endswith(">"):
                subject = subject[1:-1]
            state = state.strip()
            if state not in STATES:
                raise SamskitError(f"state file line {lineno}: unknown state {state!r}")
            states[Iri(subject)] = state
        return cls(states)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "CertificationState":
        path = Path(path)
        if not path.exists():
            return cls()
        return cls.loads(path.read_text(encoding="utf-8"))

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8", newline="\n")


def reject(ds: Dataset, state: CertificationState, obj: Iri) -> CertificationState:
    """Reject *obj*, everything depending on it, and every document holding one of those."""
    report = impact_set(ds, obj)
    return state.with_states(report.objects | report.documents, REJECTED)


def recertification_set(ds: Dataset, since) -> Set:
    """Documents changed after *since*, plus documents affected by their objects."""
    since = date_literal(since)
    changed = {doc for doc, d in ds.pairs(dc.date) if compare_terms(d, since) is Ordering.GREATER}
    out = set(changed)
    for doc in changed:
        for obj in ds.objects(doc, omdoc.hasPart):
            out |= impact_set(ds, obj).documents
    return out


def _mentioned(ds: Dataset, term) -> bool:
    p, o = Variable("p"), Variable("o")
    return bool(ds.match((term, p, o)) or ds.match((o, p, term)))


def definition_lookup(ds: Dataset, symbol: Iri) -> Set:
    """Definitions recorded for *symbol* (several are legal, e.g. recaps)."""
    if not _mentioned(ds, symbol):
        raise UnknownSymbol(f"{symbol} does not occur in the dataset")
    return ds.objects(symbol, sd.definedBy)


def symbols_named(ds: Dataset, name: str) -> Set:
    """Symbols whose display name (dc:title) is *name*."""
    title = Literal(name, XSD_STRING)
    return {s for s in ds.subjects(dc.title, title) if omdoc.Symbol in ds.objects(s, RDF_TYPE)}


def definitions_for_name(ds: Dataset, name: str) -> Dict:
    """Map every symbol displayed as *name* to its definitions."""
    symbols = symbols_named(ds, name)
    if not symbols:
        raise UnknownSymbol(f"no symbol is displayed as {name!r}")
    return {s: definition_lookup(ds, s) for s in symbols}


@dataclass(frozen=True)
class Coverage:
    total: int
    verified: int
    unverified: int


def verification_coverage(ds: Dataset) -> Coverage:
    verified_literal = Literal("verified")
    assertions = ds.subjects(RDF_TYPE, omdoc.Assertion)
    verified = 0
    for a in assertions:
        proofs = ds.subjects(omdoc.proves, a)
        if any(verified_literal in ds.objects(p, sd.proofState) for p in proofs):
            verified += 1
    return Coverage(len(assertions), verified, len(assertions) - verified)


def whois(ds: Dataset, obj: Iri) -> Set[Tuple[str, Iri, str]]:
    docs = containers(ds, obj)
    if not docs:
        raise OrphanObject(f"{obj} is not part of any document")
    out = set()
    for doc in docs:
        for role, pred in (("responsible", vm.responsible), ("reviewer", vm.reviewer)):
            for person in ds.objects(doc, pred):
                names = _name(ds, person) or [""]
                for n in names:
                    out.add((role, person, n))
    return out


def find_substitute_by_query(ds: Dataset, employee: Iri, cutoff) -> Set[str]:
    """Substitute names computed by the SPARQL engine from the bundled query."""
    from .queries import substitute_query
    from .sparql import evaluate

    q = substitute_query(employee, cutoff)
    return {b["potentialSubstituteName"].lexical for b in evaluate(q, ds) if "potentialSubstituteName" in b}
