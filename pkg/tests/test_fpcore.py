import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from pqsurf.fpcore import (AbelianInvariants, CosetLimitExceeded, Presentation, cyclic_reduce,
                           free_reduce, inverse, parse_word, smith_normal_form, todd_coxeter)
from pqsurf.fpcore.rewriting import abelian_invariants, reidemeister_schreier, simplify
from pqsurf.pi1 import polygonal_presentation

matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-12, 12), min_size=c, max_size=c), min_size=1, max_size=5))


def triangle(l, m, n):
    return polygonal_presentation((l, m, n))


# -- words -----------------------------------------------------------------------

def test_free_and_cyclic_reduction():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_reduce((-1, 2, 3, 1)) == (2, 3)
    assert inverse((1, -2)) == (2, -1)


def test_parse_word():
    assert parse_word("a*b^-1*a^2", ("a", "b")) == (1, -2, 1, 1)


@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=20))
def test_word_times_inverse_reduces_to_empty(w):
    assert free_reduce(tuple(w) + inverse(w)) == ()


# -- Smith normal form, checked against sympy -------------------------------------

@settings(max_examples=200)
@given(matrices)
def test_smith_form_matches_sympy(M):
    ours = smith_normal_form(M)
    S = sympy_snf(Matrix(M), domain=ZZ)
    theirs = [abs(S[i, i]) for i in range(min(S.shape))]
    assert sorted(d for d in ours if d) == sorted(d for d in theirs if d)
    assert sum(1 for d in ours if d) == Matrix(M).rank()


@given(matrices)
def test_smith_form_is_a_divisibility_chain(M):
    d = [x for x in smith_normal_form(M) if x]
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


def test_abelian_invariants_string_and_parse():
    inv = AbelianInvariants.from_cyclic_orders([4, 2, 3])
    assert str(inv) == "Z2 x Z12"
    assert AbelianInvariants.parse("Z2^2 x Z4") == AbelianInvariants(0, (2, 2, 4))
    assert str(AbelianInvariants(2, ())) == "Z^2"


# -- coset enumeration -------------------------------------------------------------

@pytest.mark.parametrize("lmn, order", [((2, 3, 3), 12), ((2, 3, 4), 24), ((2, 3, 5), 60),
                                        ((2, 2, 7), 14)])
def test_spherical_triangle_groups(lmn, order):
    assert todd_coxeter(triangle(*lmn)).coset_count == order


def test_subgroup_index():
    P = triangle(2, 3, 5)
    assert todd_coxeter(P, [(1,)]).coset_count == 30
    assert todd_coxeter(P, [(2,)]).coset_count == 20


def test_infinite_group_hits_the_limit():
    with pytest.raises(CosetLimitExceeded):
        todd_coxeter(triangle(2, 3, 7), coset_limit=5000)


def test_free_abelian_rank_two():
    P = Presentation(2, ((1, 2, -1, -2),))
    with pytest.raises(CosetLimitExceeded):
        todd_coxeter(P, coset_limit=2000)
    assert abelian_invariants(P) == AbelianInvariants(2, ())


# -- Reidemeister-Schreier and Tietze -----------------------------------------------

def test_schreier_index_formula_for_free_group():
    # subgroup of index n in the free group of rank k has rank 1 + n(k - 1)
    P = Presentation(2, ())
    # kernel of F2 -> Z2 sending a -> 1, b -> 0
    table = todd_coxeter(P, [(1, 1), (2,), (1, 2, -1)])
    assert table.coset_count == 2
    H, _ = reidemeister_schreier(P, table)
    assert H.ngens == 1 + 2 * (2 - 1)
    assert abelian_invariants(H) == AbelianInvariants(3, ())


def test_commutator_subgroup_of_a4():
    P = triangle(2, 3, 3)
    # kernel of the map onto Z3 sending c1 -> 0, c2 -> 1
    table = todd_coxeter(P, [(1,), (2, 1, -2)])
    assert table.coset_count == 3
    H, _ = reidemeister_schreier(P, table)
    assert abelian_invariants(H) == AbelianInvariants(0, (2, 2))


def test_rewriter_round_trip():
    P = triangle(2, 3, 4)
    table = todd_coxeter(P, [(1,), (2, 1, -2)])
    H, rw = reidemeister_schreier(P, table)
    for i, w in enumerate(rw.generator_words, start=1):
        assert free_reduce(rw(w)) == (i,)


@pytest.mark.parametrize("lmn", [(2, 3, 5), (2, 4, 5), (3, 3, 4), (2, 6, 6)])
def test_simplify_preserves_abelianization(lmn):
    P = triangle(*lmn)
    table = todd_coxeter(P, [(1,)], coset_limit=10 ** 5) if lmn == (2, 3, 5) else None
    Q = P if table is None else reidemeister_schreier(P, table)[0]
    S = simplify(Q)
    assert abelian_invariants(S.presentation) == abelian_invariants(Q)
    assert S.presentation.ngens <= Q.ngens
