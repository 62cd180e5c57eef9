"""
Blowing up a point of the plane
===============================

Start from P^2, blow up the torus-fixed point of the cone spanned by the
first two rays and look at what happens to divisors and curves.
"""

from torix import (blow_up_along, class_group, nef_big_factorization, positivity_profile, projective_space,
                   pullback, wall_degrees)

P2 = projective_space(2)
print("P^2 rays:", P2.rays)
print("Cl(P^2) =", class_group(P2))

# the new ray is the sum of the two rays of the cone
F1, (E,) = blow_up_along(P2, [(0, 1)])
print("\nblown up rays:", F1.rays, " exceptional ray index:", E)
print("Cl =", class_group(F1))

# self-intersection of the exceptional curve: the wall is the ray itself
exc = [0] * F1.nrays
exc[E] = 1
for wd in wall_degrees(F1, exc):
    if wd.wall.tau == (E,):
        print("E.E =", wd.value)

# the pullback of a line is nef and big but no longer ample
H = pullback(P2, (1, 0, 0), F1)
print("\npullback of a line:", H.coeffs)
prof = positivity_profile(F1, H)
print("nef", prof.nef, " ample", prof.ample, " big", prof.big, " contracted curve", prof.witness.tau)

# grouping maximal cones by their Cartier data gives back the plane
fac = nef_big_factorization(F1, H)
print("\ncoarse fan rays:", fac.coarse.rays)
print("descended divisor:", fac.divisor.coeffs)
