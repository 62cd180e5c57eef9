"""Standard fans used as a test and demonstration corpus."""

from __future__ import annotations

import random
from itertools import combinations

from .fan import Fan, star_subdivision
from .errors import FanError


def projective_space(n: int) -> Fan:
    if n < 1:
        raise FanError("projective space needs n >= 1")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple([-1] * n))
    return Fan(n, rays, combinations(range(n + 1), n))


def hirzebruch(a: int) -> Fan:
    """F_a with rays (1,0), (0,1), (-1,a), (0,-1)."""
    if a < 0:
        raise FanError("Hirzebruch index must be nonnegative")
    return Fan(2, [(1, 0), (0, 1), (-1, a), (0, -1)], [(0, 1), (1, 2), (2, 3), (3, 0)])


def product(f1: Fan, f2: Fan) -> Fan:
    n1, n2 = f1.rank, f2.rank
    rays = [tuple(r) + (0,) * n2 for r in f1.rays] + [(0,) * n1 + tuple(r) for r in f2.rays]
    d1 = f1.nrays
    cones = [tuple(a) + tuple(d1 + j for j in b) for a in f1.max_cones for b in f2.max_cones]
    return Fan(n1 + n2, rays, cones)


def weighted_projective_plane(q0: int, q1: int, q2: int) -> Fan:
    """P(q0, q1, q2) for the weights (1, 1, q) used in the corpus."""
    if (q0, q1) != (1, 1):
        raise FanError("only weights of the form (1, 1, q) are provided")
    return Fan(2, [(1, 0), (0, 1), (-1, -q2)], [(0, 1), (1, 2), (0, 2)])


def random_smooth_blowup_tower(seed: int, steps: int, base: Fan | None = None) -> Fan:
    """Apply ``steps`` random star subdivisions of 2-cones, starting at ``base``.

    The default base is the projective plane. The result is smooth and
    complete whenever the base is.
    """
    rng = random.Random(seed)
    fan = base if base is not None else projective_space(2)
    for _ in range(steps):
        two_cones = [c for c in fan.all_cones if len(c) == 2]
        fan, _ = star_subdivision(fan, rng.choice(two_cones))
    return fan
