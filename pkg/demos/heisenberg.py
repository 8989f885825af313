"""
The Heisenberg group
====================

Nilpotent but not virtually abelian: its word growth is polynomial of
degree 4, while its geodesic growth is exponential for every generating
set it has.
"""

from geodesic_growth import (
    bfs_census,
    builtin,
    builtin_group,
    classify,
    quotient_compare,
)
from geodesic_growth.groups import heisenberg_abelianization

H, X = builtin("Heisenberg", "std")
c = bfs_census(H, X, 36)
print("ball sizes:    ", c.cumulative_gamma[:12], "...")
print("geodesics:     ", c.cumulative_Gamma[:12], "...")
print("classify Gamma:", classify(c.cumulative_Gamma, rate_window=(8, 14)).summary())

# the ball sizes satisfy an order-9 recurrence whose roots include i and the
# cube roots of unity, so gamma is a quasi-polynomial of period 12
print("classify gamma:", classify(c.cumulative_gamma, max_order=12, holdout=8).summary())

# the abelianization sends geodesics forward: Gamma_H >= Gamma_Z2 everywhere
q = quotient_compare(H, X, heisenberg_abelianization(H, builtin_group("Z2")), 10)
for n in range(0, 11, 2):
    print(f"  n={n:2d}  H: {q.source.cumulative_Gamma[n]:8d}   Z2: {q.target.cumulative_Gamma[n]:8d}")
