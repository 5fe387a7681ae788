"""Families of the D4 x Z2 surfaces with K^2 = 2, step by step.

Shows the numbers behind the family search: how many generating systems
each signature has, how the braid action groups them, and which pairs of
orbits survive the node condition.
"""
from pqsurf.catalog import CatalogEntry
from pqsurf.enumeration import Triple, check_sings, component_data, find_all_components
from pqsurf.geometry import Signature

entry = CatalogEntry.from_cycles("D4xZ2", 6, ["(1234)", "(14)(23)", "(56)"])
T = Signature((2, 2, 2, 4))
triple = Triple(2, T, T, entry, 16)

data = component_data(triple)
print(f"{len(data.systems1)} systems of type {T}, {len(data.orbit_min1)} braid orbits")
print(f"{len(data.aut_tables)} automorphisms, {len(data.classes)} orbit pairs up to Aut(G)")
for a, b in data.classes:
    r = check_sings(triple.group, a, b, 2, early_exit=False)
    # a worse singularity stops the count, so only complete counts are shown
    nodes = "" if r.rejection_reason.value == "WorseThanNode" else f" ({r.node_count} nodes)"
    print(f"  {'accepted' if r.accepted else r.rejection_reason.value}{nodes}")
fams = find_all_components(triple, data=data)
print(f"{len(fams)} family; representative:")
for s in fams[0].representative:
    print("  " + str(s))
