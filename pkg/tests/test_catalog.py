import pytest
from hypothesis import given, settings, strategies as st

from pqsurf.catalog import (BEST_EFFORT, COMPLETE, EXCLUDED, Catalog, CatalogEntry, OrderMismatch,
                            ParseError, CLASSIFIED_GROUPS, abelian_groups, build_catalog, dicyclic,
                            dihedral, has_cyclic_direct_factor, metacyclic_groups, number_of_groups,
                            classified_entries, parse_catalog, serialize_catalog)
from pqsurf.permcore import are_isomorphic

PSL_STANZA = """\
group PSL27
degree 7
gen (3,4)(5,6)
gen (1,2,3)(4,5,7)
end
"""


@pytest.fixture(scope="module")
def small():
    return build_catalog(range(1, 61))


def test_parse_stanza_gives_order_168():
    c = parse_catalog(PSL_STANZA)
    assert len(c) == 1
    assert c["PSL27"].group.order == 168


def test_empty_file():
    assert len(parse_catalog("")) == 0
    assert len(parse_catalog("# only a comment\n\n")) == 0


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        parse_catalog(PSL_STANZA.replace("degree 7", "degree 7\norder 100"))


@pytest.mark.parametrize("text, line", [
    ("group A\ndegree x\nend\n", 2),
    ("group A\ngen (12)\nend\n", 2),
    ("degree 3\n", 1),
    ("group A\ndegree 3\nfoo 1\nend\n", 3),
    ("group A\ndegree 3\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_catalog(text)
    assert exc.value.line == line


def test_duplicate_labels_rejected():
    with pytest.raises(ParseError):
        parse_catalog(PSL_STANZA + PSL_STANZA)


def test_order_complete_is_an_assertion():
    c = parse_catalog("order-complete 7\ngroup Z7\ndegree 7\ngen (1234567)\nend\n")
    assert 7 in c.asserted_complete
    assert 7 not in c.order_complete
    assert c.groups_of_order(7)[1] == COMPLETE


def test_round_trip_of_generated_catalog(small):
    text = serialize_catalog(small)
    again = parse_catalog(text)
    assert again == small
    assert serialize_catalog(again) == text


@settings(max_examples=20, deadline=None)
@given(st.sets(st.integers(1, 40), min_size=1, max_size=4))
def test_round_trip_property(orders):
    c = build_catalog(orders)
    assert parse_catalog(serialize_catalog(c)) == c


def test_classified_groups_have_expected_orders():
    for e, (_, _, _, n) in zip(classified_entries(), CLASSIFIED_GROUPS):
        assert e.group.order == n


def test_builtin_contains_table_groups(catalog):
    for label, *_ in CLASSIFIED_GROUPS:
        assert label in catalog
    a6 = [e for e in catalog.groups_of_order(360)[0] if e.label == "A6"]
    assert a6 and a6[0].group.order == 360
    assert "Z4xZ2" in catalog


def test_groups_of_order_verdicts(catalog):
    entries, verdict = catalog.groups_of_order(168)
    assert "PSL(2,7)" in [e.label for e in entries]
    assert catalog.groups_of_order(1152)[1] == EXCLUDED
    assert catalog.groups_of_order(1024)[1] == EXCLUDED
    assert catalog.groups_of_order(2016)[1] == EXCLUDED
    entries, verdict = catalog.groups_of_order(7)
    assert len(entries) == 1 and verdict == COMPLETE
    assert catalog.groups_of_order(48)[1] == BEST_EFFORT


def test_no_isomorphic_duplicates_in_small_orders(small):
    for n in range(1, 25):
        entries = small.groups_of_order(n)[0]
        for i, a in enumerate(entries):
            for b in entries[i + 1:]:
                assert not are_isomorphic(a.group, b.group), (a.label, b.label)


@pytest.mark.parametrize("n", [1, 2, 4, 6, 8, 9, 10, 12, 14, 15, 18, 20, 21, 22, 28, 30])
def test_certified_orders_have_all_groups(small, n):
    assert n in small.order_complete
    assert len(small.groups_of_order(n)[0]) == number_of_groups(n)


@pytest.mark.parametrize("n, count", [(7, 1), (15, 1), (21, 2), (25, 2), (33, 1), (49, 2),
                                      (8, 5), (12, 5), (16, 14), (60, 13)])
def test_number_of_groups(n, count):
    assert number_of_groups(n) == count


def test_number_of_abelian_groups():
    # partitions: 72 = 2^3 3^2 gives 3 * 2 abelian groups
    assert len(abelian_groups(72)) == 6
    assert len(abelian_groups(16)) == 5


def test_constructions_have_expected_orders():
    assert dihedral(5).group.order == 10
    assert dicyclic(2).group.order == 8
    assert {e.group.order for e in metacyclic_groups(21)} == {21}


def test_cyclic_direct_factor_test():
    assert has_cyclic_direct_factor(classified_entries()[5].group)  # S4xZ2
    assert not has_cyclic_direct_factor(classified_entries()[8].group)  # S4
    assert not has_cyclic_direct_factor(dicyclic(2).group)


def test_may_admit_uses_abelianization():
    e = CatalogEntry.from_cycles("Z2^3", 6, ["(12)", "(34)", "(56)"])
    # the (2,3,7) polygonal group is perfect, so no nontrivial abelian quotient
    assert not e.may_admit((2, 3, 7))
    assert e.may_admit((2, 2, 2, 2, 2))
