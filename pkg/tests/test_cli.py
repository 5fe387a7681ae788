import pytest

from pqsurf.catalog import classified_entries, Catalog, serialize_catalog
from pqsurf.cli import EXIT_INPUT, EXIT_OK, main


@pytest.fixture(scope="module")
def catalog_file(tmp_path_factory):
    p = tmp_path_factory.mktemp("cat") / "groups.cat"
    p.write_text(serialize_catalog(Catalog(classified_entries())))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_signatures(capsys):
    code, out, _ = run(capsys, "signatures", "--k2", "2")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].split("\t") == ["K2", "signature", "compact", "alpha"]
    assert len(lines) == 15
    assert "2\t2,3,7\t2,3,7\t21" in lines


def test_signatures_several_values_as_json(capsys):
    import json
    code, out, _ = run(capsys, "signatures", "--k2", "4,6", "--format", "json")
    assert code == EXIT_OK
    assert len(json.loads(out)) == 48


@pytest.mark.parametrize("value", ["3", "x", "2,5", ""])
def test_bad_k2_is_an_input_error(capsys, value):
    with pytest.raises(SystemExit) as exc:
        main(["signatures", "--k2", value])
    assert exc.value.code == EXIT_INPUT


def test_missing_catalog_file(capsys):
    code, _, err = run(capsys, "triples", "--k2", "2", "--catalog", "/no/such/file")
    assert code == EXIT_INPUT
    assert "input error" in err


def test_malformed_catalog_file(capsys, tmp_path):
    p = tmp_path / "bad.cat"
    p.write_text("group A\ndegree x\nend\n")
    code, _, err = run(capsys, "triples", "--k2", "2", "--catalog", str(p))
    assert code == EXIT_INPUT
    assert "line 2" in err


def test_triples_with_catalog_file(capsys, catalog_file):
    code, out, err = run(capsys, "triples", "--k2", "2", "--catalog", catalog_file, "--ledger")
    assert code == EXIT_OK
    assert len(out.splitlines()) == 8
    assert "PSL(2,7)" in out
    assert "missing" in err


def test_families(capsys, catalog_file):
    code, out, _ = run(capsys, "families", "--k2", "2", "--catalog", catalog_file)
    assert code == EXIT_OK
    assert sum("PSL(2,7)" in line for line in out.splitlines()) == 2


def test_pi1_without_structure(capsys, catalog_file):
    code, out, _ = run(capsys, "pi1", "--k2", "2", "--catalog", catalog_file, "--no-structure")
    assert code == EXIT_OK
    assert "Z2 x Z4" in out


def test_report(capsys, catalog_file, tmp_path):
    ledger = tmp_path / "ledger.txt"
    code, out, _ = run(capsys, "report", "--k2", "2", "--catalog", catalog_file,
                       "--ledger", str(ledger))
    assert code == EXIT_OK
    assert out.splitlines()[1] == "2\t2,3,7\t4,4,4\t3\t22\tPSL(2,7)\t2\tZ2^2\tZ2^2"
    assert "missing" in ledger.read_text()


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == EXIT_OK
    assert out.count("PASS") == 5
