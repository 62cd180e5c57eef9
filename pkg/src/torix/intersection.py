"""Degrees of (Q-)Cartier divisors on invariant curves, pullback and restriction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._linalg import as_exact, dot
from .divisors import CartierData, Divisor, as_divisor, cartier_data, q_cartier_index, zero_on_cone
from .errors import NotCartierError, NotSmoothError, PreconditionError, TheoremViolation, FanError
from .fan import Cone, Fan, StarFan, Wall, is_complete, is_smooth, lattice_index, quotient_map, star_fan_data


@dataclass(frozen=True)
class WallDegree:
    wall: Wall
    value: Fraction | int


def _wall_row(fan: Fan, tau: Cone) -> list[int]:
    cache = fan.__dict__.setdefault("_cache", {})
    key = ("wall_row", tau)
    if key not in cache:
        rows = quotient_map(fan, tau)
        if len(rows) != 1:
            raise FanError(f"cone {list(tau)} is not of codimension one")
        cache[key] = rows[0]
    return cache[key]


def degree_from_side(fan: Fan, cd: CartierData, tau: Cone, near: Cone, far: Cone, ray: int):
    """Degree on ``V(tau)`` read off from the character on ``near``.

    ``ray`` must be a ray of ``far`` outside ``tau``. The divisor of ``cd``
    must be integral.
    """
    e = _wall_row(fan, tau)
    v = fan.rays[ray]
    c = abs(dot(e, v))
    b = cd.divisor[ray] + dot(cd.u[near], v)
    if c != 1 and lattice_index(fan, near) == 1 and lattice_index(fan, far) == 1:
        raise TheoremViolation(f"smooth wall {list(tau)} has lattice multiplicity {c}")
    return as_exact(Fraction(b) / c)


def _integral_multiple(fan: Fan, D):
    D = as_divisor(D)
    m = q_cartier_index(fan, D)
    if m is None:
        raise NotCartierError("divisor is not Q-Cartier")
    return m, cartier_data(fan, m * D)


def wall_curve_degree(fan: Fan, D, wall: Wall):
    """``(D . V(tau))`` for the invariant curve of ``wall``."""
    m, cd = _integral_multiple(fan, D)
    ray = min(set(wall.sigma2) - set(wall.tau))
    return as_exact(Fraction(degree_from_side(fan, cd, wall.tau, wall.sigma1, wall.sigma2, ray)) / m)


def wall_degrees(fan: Fan, D) -> list[WallDegree]:
    if not is_complete(fan):
        raise PreconditionError("intersection numbers need a complete fan")
    m, cd = _integral_multiple(fan, D)
    out = []
    for w in fan.walls:
        ray = min(set(w.sigma2) - set(w.tau))
        val = degree_from_side(fan, cd, w.tau, w.sigma1, w.sigma2, ray)
        out.append(WallDegree(w, as_exact(Fraction(val) / m)))
    return out


def min_curve_degree(fan: Fan, D) -> tuple:
    """Smallest degree on an invariant curve, with a wall attaining it."""
    best = min(wall_degrees(fan, D), key=lambda wd: wd.value)
    return best.value, best.wall


def is_refinement(fine: Fan, coarse: Fan) -> bool:
    if fine.rank != coarse.rank:
        return False
    for g in fine.max_cones:
        vecs = [fine.rays[i] for i in g]
        if not any(all(coarse.geometry(c).contains(v) for v in vecs) for c in coarse.all_cones):
            return False
    return True


def pullback(coarse: Fan, D, fine: Fan) -> Divisor:
    """The divisor on ``fine`` with the same support function as ``D``."""
    if not is_refinement(fine, coarse):
        raise PreconditionError("the target fan does not refine the source fan")
    cd = cartier_data(coarse, D)
    out = []
    for v in fine.rays:
        c = coarse.find_cone(v)
        out.append(-dot(cd.u[c], v))
    return Divisor(out)


def restrict_to_divisor(fan: Fan, L, j: int) -> tuple[StarFan, Divisor]:
    """Restriction of the Cartier divisor ``L`` to the prime divisor ``D_j``.

    Returns the star fan of ray ``j`` (with its map back to the original
    rays) and the restricted divisor on it.
    """
    if not is_smooth(fan):
        raise NotSmoothError("restriction is implemented for smooth fans")
    sigma = next(c for c in fan.max_cones if j in c)
    L0 = zero_on_cone(fan, L, sigma)
    sf = star_fan_data(fan, (j,))
    return sf, Divisor(L0[i] for i in sf.ray_origin)
