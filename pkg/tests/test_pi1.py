import pytest

from pqsurf.enumeration import SphericalSystem
from pqsurf.fpcore import AbelianInvariants
from pqsurf.fpcore.rewriting import abelian_invariants
from pqsurf.geometry import hurwitz_genus
from pqsurf.pi1 import (fiber_product, finite_order_probe, is_quotient_of, pi1_presentation,
                        polygonal_product_presentation, system_kernel, torsion_generators)
from pqsurf.reference import FAMILIES


def systems_of(rec):
    G = rec.build_group()
    return SphericalSystem.from_perms(G, rec.S1), SphericalSystem.from_perms(G, rec.S2)


def presentation_of(rec):
    s1, s2 = systems_of(rec)
    fp = fiber_product(s1, s2)
    return fp, pi1_presentation(fp, torsion_generators(s1, s2, fp))


ids = [f"{r.k_squared}-{r.group}-{i}" for i, r in enumerate(FAMILIES)]


@pytest.mark.parametrize("rec", FAMILIES, ids=ids)
def test_first_homology(rec):
    _, report = presentation_of(rec)
    assert report.h1 == AbelianInvariants.parse(rec.h1)
    # p_g = q = 0 forces finite H1
    assert report.h1.is_finite


@pytest.mark.parametrize("rec", [r for r in FAMILIES if r.pi1_order], ids=lambda r: f"{r.k_squared}-{r.group}")
def test_finite_orders(rec):
    _, report = presentation_of(rec)
    assert finite_order_probe(report) == rec.pi1_order
    assert report.is_finite


def test_fiber_product_has_index_of_the_group():
    fp, _ = presentation_of(FAMILIES[0])
    assert fp.index == 168


def test_summary_strings():
    _, rep = presentation_of(FAMILIES[0])
    finite_order_probe(rep)
    assert rep.summary() == "Z2^2"
    _, rep = presentation_of(next(r for r in FAMILIES if r.group == "A6"))  # H1 = Z15
    finite_order_probe(rep)
    assert rep.summary() == "finite of order 60"


@pytest.mark.parametrize("rec", FAMILIES[:8], ids=ids[:8])
def test_kernel_is_a_surface_group(rec):
    for s in systems_of(rec):
        g = hurwitz_genus(s.group.order, s.signature)
        assert abelian_invariants(system_kernel(s)) == AbelianInvariants(2 * g, ())


def test_product_presentation_shape():
    P = polygonal_product_presentation((2, 3, 7), (4, 4, 4))
    assert P.ngens == 6
    # 2 x (orders + product) + 9 commutators
    assert len(P.relators) == 4 + 4 + 9


@pytest.mark.parametrize("small, big, expected", [
    ("Z2", "Z2 x Z4", True), ("Z4", "Z2^2", False), ("Z3^2", "Z3^3", True),
    ("Z2^3", "Z2 x Z4", False), ("Z5", "Z", True),
])
def test_quotient_of_abelian_groups(small, big, expected):
    assert is_quotient_of(AbelianInvariants.parse(small), AbelianInvariants.parse(big)) is expected
