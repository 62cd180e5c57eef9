"""
Adjoint bundles on toric surfaces
=================================

If every invariant curve has L-degree at least n, then K + L is globally
generated, with one exception: O(n) on P^n. This script walks through a
few cases and shows the verdicts.
"""

from torix import (adjoint_check, fujita_global_generation, fujita_very_ample, hirzebruch, min_curve_degree,
                   projective_space)

P2 = projective_space(2)
for L in [(1, 0, 0), (2, 0, 0), (3, 0, 0)]:
    v = adjoint_check(P2, L)
    print("P^2", L, "->", v.outcome.value)

# fewer prime divisors than n + 1: no exception
print("P^2 (2,0,0) minus D0 + D1 ->", fujita_global_generation(P2, (2, 0, 0), [0, 1]).outcome.value)
print("P^2 (3,0,0) very ample, all primes ->", fujita_very_ample(P2, (3, 0, 0), [0, 1, 2]).outcome.value)

F2 = hirzebruch(2)
L = (0, 0, 2, 4)
print("\nF2 rays", F2.rays)
print("min curve degree of", L, "=", min_curve_degree(F2, L)[0])
v = adjoint_check(F2, L)
print("K + L ->", v.outcome.value, " residual", v.detail["residual"].coeffs)
