import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pqsurf.geometry import (BadType, NonIntegralGenus, Signature, ThetaZero, alpha,
                             continued_fraction_value, discrepancies_and_index, euler_and_chi,
                             group_order_for_pair, hj_string, hurwitz_genus, k_squared, theta)

parts = st.lists(st.integers(2, 30), min_size=1, max_size=8)


def test_theta_and_alpha_of_2_3_7():
    assert theta((2, 3, 7)) == Fraction(1, 42)
    assert alpha((2, 3, 7), 2) == 21


def test_theta_zero_raises():
    with pytest.raises(ThetaZero):
        alpha((2, 3, 6), 2)


def test_hurwitz_genus_klein_quartic():
    # PSL(2,7) acting on a genus 3 curve with signature (2,3,7)
    assert hurwitz_genus(168, (2, 3, 7)) == 3
    assert hurwitz_genus(168, (4, 4, 4)) == 22


def test_nonintegral_genus():
    with pytest.raises(NonIntegralGenus):
        hurwitz_genus(5, (2, 3, 7))


def test_group_order_and_k_squared_agree():
    n = group_order_for_pair((2, 3, 7), (4, 4, 4), 2)
    assert n == 168
    assert k_squared(3, 22, 168) == 2


def test_signature_sorting_and_compact():
    s = Signature((4, 2, 2, 2))
    assert s.parts == (2, 2, 2, 4)
    assert s.compact() == "2^3,4"
    assert Signature((2, 3, 7)) < Signature((2, 2, 2, 3))


def test_signature_rejects_small_parts():
    with pytest.raises(ValueError):
        Signature((1, 2, 3))


@given(parts)
def test_compact_round_trip(p):
    s = Signature(p)
    assert Signature.parse(s.compact()) == s
    assert Signature.parse(str(s)) == s


@given(parts, st.integers(1, 500))
def test_genus_matches_riemann_hurwitz(p, n):
    try:
        g = hurwitz_genus(n, p)
    except NonIntegralGenus:
        return
    assert 2 * g - 2 == n * theta(p)


def test_hj_string_of_node_and_5_2():
    assert hj_string(2, 1).string == (2,)
    assert hj_string(5, 2).string == (3, 2)
    assert hj_string(7, 3).string == (3, 2, 2)


def test_hj_rejects_non_coprime():
    with pytest.raises(BadType):
        hj_string(6, 2)


@given(st.integers(2, 60).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))))
def test_hj_string_evaluates_back(na):
    n, a = na
    if math.gcd(n, a) != 1:
        return
    assert continued_fraction_value(hj_string(n, a).string) == Fraction(n, a)


def test_rational_double_points_have_zero_discrepancy():
    for n in range(2, 8):
        d = discrepancies_and_index(hj_string(n, n - 1))
        assert all(x == 0 for x in d.discrepancies)
        assert d.index == 1


def test_discrepancy_of_quarter_point():
    # (1/4)(1,1): a single (-4)-curve with discrepancy -1/2, index 2
    d = discrepancies_and_index(hj_string(4, 1))
    assert d.string == (4,)
    assert d.discrepancies == (Fraction(-1, 2),)
    assert d.index == 2


@pytest.mark.parametrize("k2", [2, 4, 6])
def test_nodes_give_chi_one(k2):
    inv = euler_and_chi(k2, 8 - k2)
    assert inv.chi_is_one
