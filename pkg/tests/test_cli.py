import subprocess
import sys

import pytest

from samskit.cli import main
from samskit.collection import minisams_manifest
from samskit.queries import read

MANIFEST = str(minisams_manifest())
E = "http://www.sams-projekt.de/minisams/employees#"
M = "http://www.sams-projekt.de/minisams/"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def nt(tmp_path, capsys):
    path = tmp_path / "mini.nt"
    assert run(capsys, "ingest", MANIFEST, "-o", str(path))[0] == 0
    return str(path)


def test_ingest_runs_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.nt", tmp_path / "b.nt"
    run(capsys, "ingest", MANIFEST, "-o", str(a))
    run(capsys, "ingest", MANIFEST, "-o", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_export_roundtrip(nt, tmp_path, capsys):
    out = tmp_path / "again.nt"
    assert run(capsys, "export", nt, "-o", str(out))[0] == 0
    assert out.read_bytes() == open(nt, "rb").read()


def test_ingest_single_graph(capsys):
    code, out, _ = run(capsys, "ingest", MANIFEST, "--graph", M + "code")
    assert code == 0
    assert all(line.startswith(f"<{M}code") or line.startswith(f"<{E}Bob") for line in out.splitlines())


def test_query(nt, tmp_path, capsys):
    q = tmp_path / "q.rq"
    q.write_text(read("substitute.rq"))
    code, out, _ = run(capsys, "query", nt, str(q))
    assert code == 0
    assert out == '?potentialSubstituteName\n"Pierre"\n'
    code, out, _ = run(capsys, "query", nt, str(q), "--pretty")
    assert out.splitlines()[0].startswith("?potentialSubstituteName")


def test_query_syntax_error_exit_1(nt, tmp_path, capsys):
    q = tmp_path / "bad.rq"
    q.write_text("SELECT ?x WHERE { ?x ")
    code, _, err = run(capsys, "query", nt, str(q))
    assert code == 1
    assert "line 1, column 22" in err


def test_substitute(capsys):
    code, out, _ = run(capsys, "substitute", MANIFEST, "--employee", E + "Alice", "--cutoff", "2009-01-01")
    assert code == 0
    assert out == f"person\tname\n{E}Pierre\tPierre\n"


def test_unknown_employee_exit_1(capsys):
    code, _, err = run(capsys, "substitute", MANIFEST, "--employee", E + "Zed", "--cutoff", "2009-01-01")
    assert code == 1 and "Zed" in err


def test_coverage(capsys):
    assert run(capsys, "coverage", MANIFEST)[1] == "total\tverified\tunverified\n2\t1\t1\n"


def test_impact(capsys):
    code, out, _ = run(capsys, "impact", MANIFEST, "--object", M + "sysspec#s")
    assert code == 0
    assert f"document\t{M}code\n" in out
    assert f"object\t{M}code#brake-impl\n" in out


def test_recert(capsys):
    out = run(capsys, "recert", MANIFEST, "--since", "2009-01-01")[1]
    assert out.splitlines() == ["document", M + "code", M + "modspec", M + "proof", M + "sysspec"]


def test_whois(capsys):
    out = run(capsys, "whois", MANIFEST, "--object", M + "proof#chain")[1]
    assert out.splitlines()[1:] == [f"responsible\t{E}Carla\tCarla", f"reviewer\t{E}Nora\tNora"]


def test_lookup_definition(capsys):
    out = run(capsys, "lookup-definition", MANIFEST, "--name", "s")[1]
    assert len(out.splitlines()) == 3
    code, _, err = run(capsys, "lookup-definition", MANIFEST, "--symbol", M + "nowhere#x")
    assert code == 1


def test_state_commands(tmp_path, capsys):
    state = str(tmp_path / "state.tsv")
    assert run(capsys, "state", state, "get", M + "code")[1] == "unreviewed\n"
    run(capsys, "state", state, "approve", M + "code")
    assert run(capsys, "state", state, "get", M + "code")[1] == "approved\n"
    assert run(capsys, "state", state, "reject", M + "sysspec#s")[0] == 2
    assert run(capsys, "state", state, "reject", M + "sysspec#s", "--dataset", MANIFEST)[0] == 0
    assert run(capsys, "state", state, "get", M + "code")[1] == "rejected\n"


def test_validate(tmp_path, capsys):
    assert run(capsys, "validate", MANIFEST)[0] == 0
    bad = tmp_path / "bad.nt"
    bad.write_text(f'<{M}x> <http://purl.org/dc/elements/1.1/date> "2009-02-30"^^<http://www.w3.org/2001/XMLSchema#date> .\n')
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1 and "malformed" in out


def test_stats(capsys):
    out = run(capsys, "stats", MANIFEST)[1]
    assert out.splitlines()[1].startswith("xml\t6\t")


def test_dimensions(nt, tmp_path, capsys):
    code, out, _ = run(capsys, "dimensions", nt, "--keep", "Collection")
    assert code == 0
    assert all("V-model#refines" in line for line in out.splitlines())
    assert len(out.splitlines()) == 3


def test_bad_dimension_is_usage_error(nt, capsys):
    assert run(capsys, "dimensions", nt, "--keep", "Colour")[0] == 2


def test_vocab_dump(capsys):
    assert "semVM:refines\tCollection" in run(capsys, "vocab-dump")[1]


def test_missing_file_exit_1(tmp_path, capsys):
    code, _, err = run(capsys, "export", str(tmp_path / "nope.nt"))
    assert code == 1 and "nope.nt" in err


def test_argparse_usage_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["substitute", MANIFEST])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "samskit", "coverage", MANIFEST],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.endswith("2\t1\t1\n")
