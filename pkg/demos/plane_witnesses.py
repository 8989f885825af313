"""
Exponential witnesses in the plane
==================================

For Z^2, the two endpoints u, v of a hull edge give u^n v^n at distance 2n
with at least C(2n, n) geodesics.  For the index-two extension G2 the
same game runs on squares of letters and doubles the length.
"""

from fractions import Fraction

from geodesic_growth import bfs_census, builtin, convex_hull, witness_reports
from geodesic_growth.hull import containment_violations, hull_edge_pair, witness_polygon

G, X = builtin("Z2", "hex")
P = convex_hull([G.lattice_part(x.element) for x in X])
print("hexagon vertices:", P.vertices)
print("first hull edge: ", hull_edge_pair(G, X))
for r in witness_reports(G, X, 4):
    print("  ", r.to_text())

# every element z sits inside d(z) * P: this is why the witness words are geodesic
c = bfs_census(G, X, 8)
print("violations of d(z) P on radius 8:", len(containment_violations(c, P)))

G, X = builtin("G2", "abt")
print()
print("G2 short-set polygon:", witness_polygon(G, X).vertices)
for r in witness_reports(G, X, 3):
    print("  ", r.to_text())
c = bfs_census(G, X, 8)
print("violations of (d(h)/2) P on radius 8:", len(containment_violations(c, witness_polygon(G, X), Fraction(1, 2))))
