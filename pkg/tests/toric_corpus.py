"""Fans and random divisors shared by the test modules."""

import random
from functools import cache
from itertools import product as cartesian

from torix import (Divisor, Fan, hirzebruch, is_ample, is_cartier, is_nef, principal_divisor, product,
                   projective_space, q_cartier_index, random_smooth_blowup_tower, weighted_projective_plane)

P1 = projective_space(1)
P2 = projective_space(2)
P3 = projective_space(3)
F1 = hirzebruch(1)
P1xP1 = product(P1, P1)
P112 = weighted_projective_plane(1, 1, 2)


def cube_fan() -> Fan:
    """Fan over the faces of the cube: complete, not simplicial."""
    rays = list(cartesian([1, -1], repeat=3))
    cones = [[i for i, r in enumerate(rays) if r[k] == s] for k in range(3) for s in (1, -1)]
    return Fan(3, rays, cones)


@cache
def towers() -> dict:
    out = {f"tower2_{s}": random_smooth_blowup_tower(s, 1 + s % 4) for s in range(8)}
    out.update({f"tower3_{s}": random_smooth_blowup_tower(s, 1 + s, base=P3) for s in range(2)})
    return out


@cache
def smooth_corpus() -> dict:
    fans = {"P1": P1, "P2": P2, "P3": P3, "P1xP1": P1xP1}
    fans.update({f"F{a}": hirzebruch(a) for a in range(4)})
    fans.update(towers())
    return fans


@cache
def simplicial_corpus() -> dict:
    fans = dict(smooth_corpus())
    fans["P112"] = P112
    return fans


def random_divisor(fan: Fan, rng: random.Random, lo: int = -3, hi: int = 3) -> Divisor:
    return Divisor(rng.randint(lo, hi) for _ in range(fan.nrays))


def random_cartier(fan: Fan, rng: random.Random, lo: int = -3, hi: int = 3) -> Divisor:
    for _ in range(20):
        D = random_divisor(fan, rng, lo, hi)
        if is_cartier(fan, D):
            return D
        index = q_cartier_index(fan, D)
        if index is not None:
            return index * D
    # off simplicial fans most Weil divisors are not Q-Cartier
    anti = Divisor([1] * fan.nrays)
    k = rng.randint(lo, hi) * q_cartier_index(fan, anti)
    return k * anti + principal_divisor(fan, random_character(fan, rng, hi))


def random_character(fan: Fan, rng: random.Random, bound: int = 3):
    return tuple(rng.randint(-bound, bound) for _ in range(fan.rank))


_pools: dict = {}


def _pool(fan: Fan, ample: bool) -> list:
    key = (fan, ample)
    if key not in _pools:
        rng = random.Random(0)
        test = is_ample if ample else is_nef
        pool = []
        for _ in range(400):
            D = random_divisor(fan, rng, 0, 3)
            if is_cartier(fan, D) and test(fan, D):
                pool.append(D)
        _pools[key] = pool
    return _pools[key]


def nef_divisors(fan: Fan, rng: random.Random, count: int, ample: bool = False) -> list:
    """``count`` random nef (or ample) divisors.

    Rejection sampling builds a pool once per fan; sums of pool members and
    principal shifts add variety without leaving the cone.
    """
    pool = _pool(fan, ample)
    if not pool:
        return []
    out = []
    while len(out) < count:
        D = rng.choice(pool)
        if rng.random() < 0.4:
            D = D + rng.choice(pool)
        D = D + principal_divisor(fan, random_character(fan, rng, 2))
        out.append(D)
    return out


def pic_box(fan: Fan, lo: int, hi: int):
    """Divisors vanishing on the first maximal cone, coefficients in ``[lo, hi]``.

    On a smooth complete fan these represent each Picard class once.
    """
    sigma = set(fan.max_cones[0])
    free = [i for i in range(fan.nrays) if i not in sigma]
    for values in cartesian(range(lo, hi + 1), repeat=len(free)):
        coeffs = [0] * fan.nrays
        for i, x in zip(free, values):
            coeffs[i] = x
        yield Divisor(coeffs)


def ample_box(fan: Fan, level: int, radius: int):
    """Picard classes in a box around a multiple of an ample class.

    The center is the smallest multiple of a pool member whose curve degrees
    are all at least ``level``; the box is spanned by the prime divisors off
    the first maximal cone, which form a basis of Pic on a smooth fan.
    """
    from torix import min_curve_degree, prime_divisor

    base = min(_pool(fan, True), key=lambda D: (min_curve_degree(fan, D)[0], sum(D)))
    low = min_curve_degree(fan, base)[0]
    center = -(-level // low) * base
    sigma = set(fan.max_cones[0])
    basis = [prime_divisor(fan, i) for i in range(fan.nrays) if i not in sigma]
    for steps in cartesian(range(-radius, radius + 1), repeat=len(basis)):
        D = center
        for k, B in zip(steps, basis):
            D = D + k * B
        yield D

