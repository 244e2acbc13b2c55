"""
Who can stand in for Alice?
===========================

"""

from samskit import minisams, parse_query, evaluate
from samskit.queries import original_substitute_text, substitute_text
from samskit.services import find_substitute
from samskit.sparql import to_tsv
from samskit import Iri

ds = minisams()
print(len(ds), "triples in", len(ds.graphs), "documents")

# the query as printed compares a document with a date, so it finds nobody
q = parse_query(original_substitute_text())
print(evaluate(q, ds))

# constrain ?date instead and leave Alice out of the answer
q = parse_query(substitute_text())
print(to_tsv(q.projection, evaluate(q, ds)))

# the same walk written as plain lookups
alice = Iri("http://www.sams-projekt.de/minisams/employees#Alice")
print(find_substitute(ds, alice, "2009-01-01"))

# with a later cutoff nobody qualifies
print(find_substitute(ds, alice, "2010-01-01"))
