import pytest
from hypothesis import given, settings, strategies as st

import oracles
from pqsurf.enumeration import (Rejection, SphericalSystem, all_spherical_systems, check_sings,
                                class_count_with_swap, component_data, exists_spherical,
                                family_key, find_all_components, full_hurwitz_orbit,
                                hurwitz_move, hurwitz_move_tuple, inverse_hurwitz_move_tuple,
                                list_of_types, systems_up_to_conjugation)
from pqsurf.geometry import Signature, alpha
from pqsurf.permcore import Permutation, PermGroup
from pqsurf.reference import FAMILIES, SIGNATURE_TABLE


def group(degree, *gens):
    return PermGroup(degree, [Permutation.parse(g, degree) for g in gens])


def systems_of(rec):
    G = rec.build_group()
    return G, SphericalSystem.from_perms(G, rec.S1), SphericalSystem.from_perms(G, rec.S2)


PSL_FAMILY = FAMILIES[0]


@pytest.mark.parametrize("k2, count", [(2, 14), (4, 24), (6, 24)])
def test_signature_lists(k2, count):
    sigs = list_of_types(k2)
    assert len(sigs) == count
    assert {s.compact() for s in sigs} == {Signature.parse(s).compact() for s, _ in SIGNATURE_TABLE[k2]}
    for s, a in SIGNATURE_TABLE[k2]:
        assert alpha(Signature.parse(s), k2) == a


@pytest.mark.parametrize("gens, degree, sig, expected", [
    (("(123)", "(345)"), 5, (2, 3, 5), True),
    (("(123)", "(345)"), 5, (2, 5, 5), True),
    (("(12)", "(1234)"), 4, (2, 3, 7), False),
    (("(12)", "(34)"), 4, (2, 2, 2), True),
    (("(12)", "(34)"), 4, (2, 2, 4), False),
    (("(1234)", "(5678)"), 8, (4, 4, 4), True),
])
def test_exists_spherical(gens, degree, sig, expected):
    assert exists_spherical(group(degree, *gens), sig) is expected


def test_all_systems_of_z2_squared():
    G = group(4, "(12)", "(34)")
    # ordered triples of distinct involutions: 3! of them
    assert len(all_spherical_systems(G, (2, 2, 2))) == 6
    assert len(systems_up_to_conjugation(G, (2, 2, 2))) == 6


def test_from_perms_rejects_non_generating_tuple():
    G = group(4, "(12)", "(34)")
    with pytest.raises(ValueError):
        SphericalSystem.from_perms(G, ["(12)", "(12)", "()"])


@pytest.mark.parametrize("rec", FAMILIES, ids=lambda r: f"{r.k_squared}-{r.group}")
def test_published_pairs_are_accepted(rec):
    G, s1, s2 = systems_of(rec)
    report = check_sings(G, s1, s2, rec.k_squared)
    assert report.accepted
    assert report.node_count == 8 - rec.k_squared


def test_rejection_reasons():
    G, s1, s2 = systems_of(PSL_FAMILY)
    # six nodes: too many for K^2 = 6, too few when eight are required
    assert check_sings(G, s1, s2, 6).rejection_reason == Rejection.TOO_MANY_NODES
    low = check_sings(G, s1, s2, 0)
    assert low.rejection_reason == Rejection.TOO_FEW_NODES and low.node_count == 6
    # a system against itself shares elements of order 3 and 7
    assert check_sings(G, s1, s1, 2).rejection_reason == Rejection.WORSE_THAN_NODE


def test_early_exit_does_not_change_verdict():
    G, s1, s2 = systems_of(PSL_FAMILY)
    a = check_sings(G, s1, s2, 6)
    b = check_sings(G, s1, s2, 6, early_exit=False)
    assert a.accepted == b.accepted and a.rejection_reason == b.rejection_reason
    assert b.node_count == 6


def test_hurwitz_move_and_inverse():
    G, s1, _ = systems_of(PSL_FAMILY)
    moved = hurwitz_move(s1, 1)
    assert moved.is_valid()
    assert sorted(moved.orders) == sorted(s1.orders)
    assert inverse_hurwitz_move_tuple(G, moved.elements, 1) == s1.elements
    with pytest.raises(IndexError):
        hurwitz_move_tuple(G, s1.elements, 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 2), min_size=1, max_size=12), st.sampled_from(range(len(FAMILIES))))
def test_hurwitz_moves_keep_a_system_and_its_class(moves, k):
    rec = FAMILIES[k]
    G, s1, s2 = systems_of(rec)
    t = s1.elements
    for i in moves:
        if i < len(t):
            t = hurwitz_move_tuple(G, t, i)
    assert G.product(t) == 0 and G.generates(t)
    report = check_sings(G, t, s2.elements, rec.k_squared)
    assert report.accepted and report.node_count == 8 - rec.k_squared


def test_hurwitz_orbit_is_closed():
    G, s1, _ = systems_of(FAMILIES[6])  # Z4^2, orbit is small
    orbit = full_hurwitz_orbit(G, s1.elements)
    for t in orbit:
        for i in range(1, len(t)):
            assert hurwitz_move_tuple(G, t, i) in orbit


def test_family_key_invariant_under_moves_and_automorphisms(nodal_triples):
    triple = next(t for t in nodal_triples[2] if t.label == "D4xZ2")
    data = component_data(triple)
    G = triple.group
    fam = find_all_components(triple, data=data)[0]
    a, b = (s.elements for s in fam.representative)
    key = family_key(G, data, a, b)
    for aut in data.aut_tables[:8]:
        assert family_key(G, data, tuple(aut[x] for x in a), tuple(aut[x] for x in b)) == key
    assert family_key(G, data, hurwitz_move_tuple(G, a, 2), b) == key


def test_swap_count_matches_plain_count(nodal_triples):
    for t in nodal_triples[4]:
        if t.T1 == t.T2 and t.group_order <= 32:
            assert class_count_with_swap(t) == len(find_all_components(t))


def test_two_families_for_psl(nodal_triples):
    t = next(t for t in nodal_triples[2] if t.label == "PSL(2,7)")
    fams = find_all_components(t)
    assert len(fams) == 2
    assert [f.class_id for f in fams] == [0, 1]


# -- independent oracles on the small triples ---------------------------------------

def small_triples(nodal_triples):
    return [t for k2 in (2, 4, 6) for t in nodal_triples[k2] if t.group_order <= 16]


def test_node_oracle_matches_on_published_pairs():
    for rec in FAMILIES:
        G, s1, s2 = systems_of(rec)
        if G.order > 200:
            continue
        worse, nodes = oracles.node_oracle(G, s1.elements, s2.elements)
        assert not worse and nodes == 8 - rec.k_squared


def test_node_oracle_matches_check_sings_on_small_triples(nodal_triples):
    for t in small_triples(nodal_triples):
        G = t.group
        data = component_data(t)
        for a in data.orbit_min1:
            for b in data.orbit_min2:
                worse, nodes = oracles.node_oracle(G, a, b)
                r = check_sings(G, a, b, t.k_squared, early_exit=False)
                assert worse == (r.rejection_reason == Rejection.WORSE_THAN_NODE)
                if not worse:
                    assert r.node_count == nodes


def test_brute_force_family_counts(nodal_triples):
    for t in small_triples(nodal_triples):
        assert oracles.family_oracle(t.group, t.T1.parts, t.T2.parts, t.k_squared) == \
            len(find_all_components(t))


def test_brute_force_automorphism_counts():
    assert len(oracles.brute_automorphisms(group(4, "(1234)", "(13)"))) == 8
    assert len(oracles.brute_automorphisms(group(6, "(12)", "(34)", "(56)"))) == 168
