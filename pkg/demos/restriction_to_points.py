"""
Sections and blown-up points
============================

Blowing up disjoint torus-invariant subvarieties and twisting by minus the
exceptional divisors cuts down the sections of an ample L by the sections
living on the corresponding faces of P_L. The H^1 of the twist vanishes,
so the restriction map is onto.
"""

from torix import product, projective_space, run_surjectivity

P1 = projective_space(1)
Q = product(P1, P1)

# O(1,1): four sections; two opposite corners are blown up
r = run_surjectivity(Q, (1, 0, 1, 0), [(0, 2), (1, 3)])
print("blown-up fan rays:", r.blown_up.rays)
print("pi^*L - E:", r.divisor.coeffs)
print("h^0(L) =", r.h0_L, " face points =", r.face_counts, " h^*(pi^*L - E) =", r.table.dims)
print("surjective:", r.surjective)

# a ray is already a divisor: nothing is blown up and E is D0 itself
P2 = projective_space(2)
r = run_surjectivity(P2, (2, 0, 0), [(0,)])
print("\nP^2, O(2), along D0:", r.h0_L, r.face_counts, r.table.dims)
