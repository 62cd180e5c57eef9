"""
Differential forms
==================

Cohomology of Omega^p twisted by a line bundle, and the Hodge diamond of a
smooth complete toric variety, which is diagonal.
"""

from torix import hirzebruch, hodge_numbers, omega_table, projective_space, random_smooth_blowup_tower

P2 = projective_space(2)
for p in range(3):
    print(f"Omega^{p}(k) on P^2:", [omega_table(P2, p, (k, 0, 0)).dims for k in range(-3, 3)])

for name, fan in [("P^2", P2), ("F1", hirzebruch(1)), ("tower", random_smooth_blowup_tower(3, 2))]:
    print(f"\n{name}: {fan.nrays} rays")
    for row in hodge_numbers(fan):
        print("  ", row)

# ample twists kill higher cohomology of every Omega^p
L = (1, 1, 0)
print("\nOmega^p(2) on P^2:", [omega_table(P2, p, L).dims for p in range(3)])
