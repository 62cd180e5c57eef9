"""
Cohomology of line bundles
==========================

Every h^i(X, O(D)) below is an exact integer. The computation runs degree by
degree over characters u of the torus; only the sign pattern of
a + <u, v> matters, so each pattern is done once.
"""

from torix import (canonical_divisor, cohomology_table, negative_ray_table, product, projective_space,
                   weighted_projective_plane)

P2 = projective_space(2)
for k in range(-5, 4):
    print(f"h^*(P^2, O({k})) =", cohomology_table(P2, (k, 0, 0)).dims)

# which characters carry the classes
t = cohomology_table(P2, (-4, 0, 0), per_degree=True)
print("\nH^2(O(-4)) lives in degrees", sorted(t.per_degree))

P1 = projective_space(1)
Q = product(P1, P1)
print("\nO(1,-3) on P1 x P1:", cohomology_table(Q, (1, 0, -3, 0)).dims)

# Serre duality
D = (2, 0, -3, 0)
K = canonical_divisor(Q)
print("h(D)     =", cohomology_table(Q, D).dims)
print("h(K - D) =", cohomology_table(Q, K - D).dims)

# Weil divisors on a singular surface; the fast path agrees with the Cech engine
P112 = weighted_projective_plane(1, 1, 2)
for D in [(1, 0, 0), (0, 1, 0), (-3, 0, -1)]:
    print(f"P(1,1,2), D = {D}:", cohomology_table(P112, D).dims, negative_ray_table(P112, D).dims)
