"""Bundled SPARQL queries.

``substitute_original.rq`` is the substitute-finding query exactly as it was
published: its FILTER compares a document against a date, so it can never
succeed. ``substitute.rq`` is the working form used by
:func:`samskit.services.find_substitute_by_query`: the filter constrains the
``?date`` variable and the employee is excluded from their own results.
"""
from __future__ import annotations

from importlib import resources

from ..rdf_model import Iri, date_literal

#: constants written into substitute.rq, swapped out by substitute_query()
TEMPLATE_EMPLOYEE = Iri("http://www.sams-projekt.de/minisams/employees#Alice")
TEMPLATE_CUTOFF = date_literal("2009-01-01")


def read(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")


def original_substitute_text() -> str:
    return read("substitute_original.rq")


def substitute_text() -> str:
    return read("substitute.rq")


def substitute_query(employee: Iri, cutoff):
    """Parsed substitute query for *employee* and *cutoff*."""
    from ..sparql import parse_query, replace_terms

    q = parse_query(substitute_text())
    return replace_terms(q, {TEMPLATE_EMPLOYEE: employee, TEMPLATE_CUTOFF: date_literal(cutoff)})


__all__ = ["TEMPLATE_CUTOFF", "TEMPLATE_EMPLOYEE", "original_substitute_text", "read",
           "substitute_query", "substitute_text"]
