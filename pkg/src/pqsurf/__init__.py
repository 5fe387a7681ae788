"""Classification of product-quotient surfaces with p_g = q = 0, K^2 = 2, 4, 6."""
from .geometry import Signature, alpha, hurwitz_genus, theta
from .permcore import Permutation, PermGroup, automorphisms, are_isomorphic
from .enumeration import (SphericalSystem, Triple, check_sings, exists_spherical,
                          existing_nodal_surfaces, find_all_components, list_of_types,
                          list_triples)
from .catalog import Catalog, CatalogEntry, builtin_catalog, parse_catalog, serialize_catalog
from .pi1 import compute_pi1, finite_order_probe, structure_probe
from .pipeline import RunConfig, ReportRow, emit, run_pipeline

__version__ = "0.1.0"
