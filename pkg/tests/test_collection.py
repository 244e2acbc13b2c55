import random

import pytest

import handjoin
from oracles import random_dataset
from samskit.collection import (
    ManifestError, documents, ingest, ingest_manifest, load_manifest, minisams_manifest, parse_manifest,
    stats, validate,
)
from samskit.rdf_model import RDF_TYPE, XSD_DATE, Iri, Literal, Triple
from samskit.store import Dataset, export_ntriples, import_ntriples
from samskit.vocab import dc, omdoc, sd, semvm, vm

M = handjoin.M


def _pairs(ds, pred):
    return {(s.value.removeprefix(M), o.value.removeprefix(M)) for s, o in ds.pairs(pred)}


def test_hand_tables_match_extraction(minisams_ds):
    assert _pairs(minisams_ds, omdoc.hasPart) == {(d, o) for d, parts in handjoin.PARTS.items() for o in parts}
    assert _pairs(minisams_ds, semvm.refines) == set(handjoin.REFINES)
    assert _pairs(minisams_ds, omdoc.occursInDefinitionOf) == set(handjoin.OCCURS_IN_DEFINITION_OF)
    assert _pairs(minisams_ds, sd.definedBy) == {(s, d) for s, (_, defs) in handjoin.SYMBOLS.items() for d in defs}
    dates = {(s.value.removeprefix(M), o.value()) for s, o in minisams_ds.pairs(dc.date)}
    assert dates == {(d, dt) for d, (dt, _, _) in handjoin.DOCUMENTS.items()}
    people = {(s.value.removeprefix(M), o.value.removeprefix(handjoin.E)) for s, o in minisams_ds.pairs(vm.responsible)}
    assert people == {(d, p) for d, (_, p, _) in handjoin.DOCUMENTS.items()}
    assert {s.value.removeprefix(M) for s in minisams_ds.subjects(RDF_TYPE, omdoc.Assertion)} == set(handjoin.ASSERTIONS)
    proves = _pairs(minisams_ds, omdoc.proves)
    assert proves == {(p, a) for p, (a, _) in handjoin.PROOFS.items()}


def test_fixture_is_valid(minisams_ds):
    report = validate(minisams_ds)
    assert report.findings == []
    _, warnings = ingest_manifest(load_manifest(minisams_manifest()))
    assert warnings == []


def test_ingest_twice_is_byte_identical():
    assert export_ntriples(ingest(minisams_manifest())) == export_ntriples(ingest(minisams_manifest()))


def test_roundtrip_fixture(minisams_ds):
    text = export_ntriples(minisams_ds)
    assert export_ntriples(import_ntriples(text, Iri("http://ex.org/x"))) == text


def test_roundtrip_random():
    rng = random.Random(11)
    for _ in range(100):
        ds = Dataset().update(Iri("http://ex.org/g"), random_dataset(rng))
        text = export_ntriples(ds)
        assert export_ntriples(import_ntriples(text, Iri("http://ex.org/g"))) == text


def test_named_graph_per_document(minisams_ds):
    assert set(minisams_ds.graphs) == {Iri(M + d) for d in handjoin.DOCUMENTS}


def test_blank_nodes_do_not_collide(tmp_path):
    body = '<div prefix="ex: http://ex.org/v#"><span typeof="ex:T"/></div>'
    (tmp_path / "a.xml").write_text(body)
    (tmp_path / "b.xml").write_text(body)
    (tmp_path / "m.tsv").write_text("@base <http://ex.org/c/>\na.xml\ta\txml\nb.xml\tb\txml\n")
    ds = ingest(tmp_path / "m.tsv")
    assert len(ds.subjects(RDF_TYPE, Iri("http://ex.org/v#T"))) == 2


@pytest.mark.parametrize("text,msg", [
    ("a.xml\ta\txml\n", "@base"),
    ("@base <http://ex.org/>\na.xml\ta\n", "columns"),
    ("@base <http://ex.org/>\na.xml\ta\txml\tcolour=red\n", "metadata"),
    ("@base <http://ex.org/>\na.xml\ta\txml\na.xml\ta\txml\n", "duplicate"),
    ("@base <http://ex.org/>\nmissing.xml\ta\txml\n", "missing file"),
    ("@base http://ex.org/\n", "@base"),
])
def test_manifest_errors(tmp_path, text, msg):
    (tmp_path / "a.xml").write_text("<a/>")
    with pytest.raises(ManifestError, match=msg):
        parse_manifest(text, tmp_path)


def test_non_xml_entries_are_stubs(tmp_path):
    (tmp_path / "x.pdf").write_bytes(b"%PDF")
    (tmp_path / "m.tsv").write_text("@base <http://ex.org/c/>\nx.pdf\tx\tPDF\tdate=2009-01-01\n")
    ds = ingest(tmp_path / "m.tsv")
    assert set(ds.triples()) == {
        Triple(Iri("http://ex.org/c/x"), dc.format, Literal("pdf")),
        Triple(Iri("http://ex.org/c/x"), dc.date, Literal("2009-01-01", XSD_DATE)),
    }


def test_xml_syntax_error_names_file(tmp_path):
    (tmp_path / "bad.xml").write_text("<a><b></a>")
    (tmp_path / "m.tsv").write_text("@base <http://ex.org/c/>\nbad.xml\tbad\txml\n")
    with pytest.raises(ManifestError, match="bad.xml"):
        ingest(tmp_path / "m.tsv")


def test_validate_findings():
    g = Iri("http://ex.org/g")
    doc, part = Iri("http://ex.org/doc"), Iri("http://ex.org/doc#p")
    ds = Dataset().update(g, [
        Triple(doc, omdoc.hasPart, part),
        Triple(part, semvm.refines, Iri("http://ex.org/gone")),
        Triple(doc, dc.date, Literal("2009-02-30", XSD_DATE)),
        Triple(part, RDF_TYPE, omdoc.Symbol),
    ])
    report = validate(ds)
    # sorted by document, then message
    assert [f.severity for f in report.findings] == ["error", "warning", "error", "warning"]
    assert {f.document for f in report.findings} == {"http://ex.org/doc"}
    assert not report.ok()
    assert len(report.errors) == 2
    assert report.to_tsv().count("\n") == 4


def test_documents_heuristic(minisams_ds):
    assert {d.value for d in documents(minisams_ds)} == {M + d for d in handjoin.DOCUMENTS}


def test_stats(minisams_ds):
    manifest = load_manifest(minisams_manifest())
    (row,) = stats(minisams_ds, manifest)
    assert row.format == "xml" and row.documents == 6
    assert row.triples == sum(len(g) for g in minisams_ds.graphs.values())
