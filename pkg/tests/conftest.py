import pytest

from pqsurf.catalog import builtin_catalog

# (criterion number, description, passed, detail) recorded by test_acceptance.py
ACCEPTANCE: list[tuple[int, str, bool, str]] = []


@pytest.fixture(scope="session")
def catalog():
    return builtin_catalog()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, name, ok, detail in sorted(ACCEPTANCE):
        line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def nodal_triples(catalog):
    from pqsurf.enumeration import existing_nodal_surfaces
    return {k2: existing_nodal_surfaces(k2, catalog) for k2 in (2, 4, 6)}
