"""
Looking at one dimension at a time
==================================

"""

from samskit import minisams, export_ntriples, import_ntriples, Iri
from samskit.vocab import Dimension, filter_by_dimensions, dump_tsv

ds = minisams()

# every predicate belongs to exactly one dimension
print(dump_tsv())

for d in Dimension:
    print(d.value, len(filter_by_dimensions(ds, {d})))

# the version-management view alone
org = filter_by_dimensions(ds, {Dimension.ORGANIZATION})
print(export_ntriples(org))

# export is sorted, so re-importing gives the same bytes back
text = export_ntriples(ds)
again = export_ntriples(import_ntriples(text, Iri("http://example.org/copy")))
print(text == again)
