import dataclasses

import pytest

from pqsurf.catalog import Catalog, classified_entries, serialize_catalog
from pqsurf.enumeration import existing_nodal_surfaces
from pqsurf.pipeline import (COLUMNS, ConfigError, InvariantViolation, ReportRow, RunConfig, emit,
                             families_json, load_catalog, parse_report_json, revalidate,
                             run_pipeline)
from pqsurf.reference import table_row

ROW1 = "2\t2,3,7\t4,4,4\t3\t22\tPSL(2,7)\t2\tZ2^2\tZ2^2"


@pytest.fixture(scope="module")
def small_catalog():
    return Catalog(classified_entries())


@pytest.fixture(scope="module")
def k2_run(small_catalog):
    return run_pipeline(RunConfig(k_squared=(2,)), small_catalog)


def test_k2_rows_match_the_table(k2_run):
    assert len(k2_run.rows) == 7
    for r in k2_run.rows:
        ref = table_row(r.k_squared, r.T1, r.T2, r.group)
        assert ref is not None, r
        assert (r.g1, r.g2) in {(ref.g1, ref.g2), (ref.g2, ref.g1)}
        assert (r.families, r.h1, r.pi1) == (ref.families, ref.h1, ref.pi1)
    assert k2_run.cap_hits == []


def test_first_tsv_row(k2_run):
    lines = emit(k2_run.rows, "tsv").splitlines()
    assert lines[0] == "\t".join(COLUMNS)
    assert lines[1] == ROW1


def test_json_round_trip(k2_run):
    text = emit(k2_run.rows, "json")
    assert parse_report_json(text) == k2_run.rows
    assert '"PSL(2,7)"' in families_json(k2_run.families)


def test_markdown_uses_compact_signatures(k2_run):
    md = emit(k2_run.rows, "md")
    assert "| 2 | 2,3,7 | 4^3 | 3 | 22 | PSL(2,7) |" in md


def test_empty_report_is_header_only():
    assert emit([], "tsv") == "\t".join(COLUMNS) + "\n"
    assert emit([], "json") == "[]\n"
    with pytest.raises(ConfigError):
        emit([], "xml")


def test_empty_catalog_gives_no_rows_and_a_full_ledger():
    result = run_pipeline(RunConfig(k_squared=(2,), probe_pi1=False), Catalog([]))
    assert result.rows == []
    assert result.ledger and all("missing" in line for line in result.ledger)


def test_ledger_records_skipped_orders(k2_run):
    assert any("|G|=1764" in line for line in k2_run.ledger)


@pytest.mark.parametrize("kwargs", [dict(k_squared=(3,)), dict(k_squared=()),
                                    dict(output_format="csv"), dict(parallelism=0),
                                    dict(coset_limit=0), dict(catalog_paths=("/nonexistent",))])
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        RunConfig(**kwargs).validate()


def test_thread_env_overrides(monkeypatch):
    cfg = RunConfig(parallelism=2)
    monkeypatch.delenv("CLASSIFY_THREADS", raising=False)
    assert cfg.effective_parallelism() == 2
    monkeypatch.setenv("CLASSIFY_THREADS", "5")
    assert cfg.effective_parallelism() == 5
    monkeypatch.setenv("CLASSIFY_THREADS", "many")
    with pytest.raises(ConfigError):
        cfg.effective_parallelism()


def test_catalog_file_loading(tmp_path, small_catalog):
    p = tmp_path / "groups.cat"
    p.write_text(serialize_catalog(small_catalog))
    assert load_catalog([str(p)]) == small_catalog


def test_revalidation_catches_tampering(k2_run, small_catalog):
    triple = existing_nodal_surfaces(2, small_catalog)[0]
    row = k2_run.rows[0]
    fams = [f for f in k2_run.families if (f.T1, f.T2, f.group) == (row.T1, row.T2, row.group)]
    revalidate(row, fams, triple)
    with pytest.raises(InvariantViolation):
        revalidate(dataclasses.replace(row, g2=21), fams, triple)
    with pytest.raises(InvariantViolation):
        revalidate(row, [dataclasses.replace(fams[0], S2=fams[0].S1)], triple)


def test_row_dict_round_trip():
    r = ReportRow(2, "2,3,7", "4,4,4", 3, 22, "PSL(2,7)", None, "", "cap exceeded")
    assert ReportRow.from_dict(r.to_dict()) == r
    assert r.cells()[6] == "?"


def test_parallel_run_matches_serial(small_catalog, k2_run):
    par = run_pipeline(RunConfig(k_squared=(2,), parallelism=3), small_catalog)
    assert emit(par.rows) == emit(k2_run.rows)
    assert par.ledger == k2_run.ledger
