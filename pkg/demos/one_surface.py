"""Walk one surface through the whole computation.

PSL(2,7) acting on curves of genus 3 and 22 with branching (2,3,7) and
(4,4,4): count the nodes of the quotient, then compute its first homology
and the order of its fundamental group.
"""
from pqsurf import PermGroup, Permutation, SphericalSystem, check_sings, compute_pi1, hurwitz_genus


def perms(cycles, degree=7):
    return [Permutation.parse(c, degree) for c in cycles]


G = PermGroup(7, perms(["(34)(56)", "(123)(457)"]), name="PSL(2,7)")
s1 = SphericalSystem.from_perms(G, ["(13)(26)", "(127)(345)", "(1762354)"])
s2 = SphericalSystem.from_perms(G, ["(1632)(47)", "(1524)(36)", "(1743)(25)"])

print(f"|G| = {G.order}")
for s in (s1, s2):
    print(f"  {s.signature}: genus {hurwitz_genus(G.order, s.signature)}")

report = check_sings(G, s1, s2, k_squared=2)
print(f"nodes: {report.node_count} (accepted: {report.accepted})")

pi1 = compute_pi1(s1, s2, probe_structure=False)
print(f"presentation: {pi1.presentation.ngens} generators, {len(pi1.presentation.relators)} relators")
print(f"H1 = {pi1.h1}, |pi1| = {pi1.finite_order}")
