"""
Pulling triples out of an annotated document
============================================

"""

from samskit import extract_text, export_ntriples, Dataset, Iri

# a fragment of a module specification with a few RDFa attributes
doc = """
<section prefix="omdoc: http://omdoc.org/ontology# semVM: http://www.sams-projekt.de/ontologies/V-model#
                 dc: http://purl.org/dc/elements/1.1/">
  <div about="#sG" typeof="omdoc:Symbol">
    <span property="dc:title">s_G</span>
    <span rel="semVM:refines" resource="sysspec#s"/>
  </div>
  <p>plain prose contributes nothing</p>
  <div rel="omdoc:hasPart">
    <div typeof="omdoc:Definition"><span property="dc:title">braking distance</span></div>
  </div>
</section>
"""

result = extract_text(doc, "http://example.org/modspec")
for t in result.triples:
    print(t.subject, t.predicate.value.split("#")[-1].split("/")[-1], t.object)

# problems are reported, not raised
bad = extract_text('<p about="#x" property="nope:title">?</p>', "http://example.org/d")
print(bad.warnings)

# the store keeps one named graph per source document
ds = Dataset().update(Iri("http://example.org/modspec"), result.triples)
print(export_ntriples(ds))
