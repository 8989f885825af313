"""
The same group, different generating sets
==========================================

Geodesic growth depends on the generating set, not just the group.
"""

from geodesic_growth import bfs_census, builtin, classify

# Z x C2 with {t, T, a}: two geodesics per direction per length, plus the a-insertions
G, X = builtin("ZxC2", "ta")
c = bfs_census(G, X, 30)
print("ZxC2 {t,T,a}    per length:", c.sphere_geodesics[:13], "...")
print("                verdict:", classify(c.cumulative_Gamma).summary())

# substitute c = a t: the four letters now all move along Z
G, X = builtin("ZxC2", "tc")
c = bfs_census(G, X, 30)
print("ZxC2 {t,T,c,C}  per length:", c.sphere_geodesics[:13], "...")
print("                verdict:", classify(c.cumulative_Gamma).summary())

# a duplicated letter is enough: t and s name the same element
G, X = builtin("Z", "doubled")
c = bfs_census(G, X, 10)
print("Z doubled       geodesics to t^n:", [c.count[G.element((n,))] for n in range(11)])

# word growth stays linear in every case; only the number of spellings changes
print("Z doubled       ball sizes:", c.cumulative_gamma)
