"""Nef, ample, globally generated and big line bundles; Fujita-type checks.

Global generation is decided from convexity of the support function, while
nefness and ampleness are decided from wall degrees. The two routes are
computed independently and compared at runtime.
"""

from __future__ import annotations

import enum
import random
import warnings
from dataclasses import dataclass, field

from ._linalg import dot
from .divisors import (Divisor, as_divisor, cartier_data, class_group, is_convex,
                       is_strictly_convex, polytope, prime_divisor)
from .errors import NotCompleteError, NotSmoothError, PreconditionError, TheoremViolation
from .fan import Fan, Wall, is_complete, is_projective_space, is_smooth
from .intersection import min_curve_degree, pullback, wall_degrees


def _require_complete(fan: Fan):
    if not is_complete(fan):
        raise NotCompleteError("fan is not complete")


def _require_smooth_complete(fan: Fan):
    if not is_smooth(fan):
        raise NotSmoothError("fan is not smooth")
    _require_complete(fan)


def is_nef(fan: Fan, L) -> bool:
    cartier_data(fan, L)
    return all(wd.value >= 0 for wd in wall_degrees(fan, L))


def is_ample(fan: Fan, L) -> bool:
    cartier_data(fan, L)
    return all(wd.value > 0 for wd in wall_degrees(fan, L))


def is_globally_generated(fan: Fan, L) -> bool:
    _require_complete(fan)
    return is_convex(fan, cartier_data(fan, L))


def is_very_ample(fan: Fan, L) -> bool | None:
    """Very ampleness on smooth complete fans; ``None`` when no claim is made."""
    if not is_smooth(fan) or not is_complete(fan):
        return None
    return is_ample(fan, L)


def is_big(fan: Fan, L) -> bool:
    """Bigness of a nef Cartier divisor: its polytope is full-dimensional."""
    if not is_nef(fan, L):
        raise PreconditionError("bigness is only decided here for nef divisors")
    return polytope(fan, L).dim == fan.rank


def base_locus_curves(fan: Fan, L) -> list[Wall]:
    return [wd.wall for wd in wall_degrees(fan, L) if wd.value < 0]


@dataclass(frozen=True)
class PositivityProfile:
    nef: bool
    globally_generated: bool
    ample: bool
    very_ample: bool | None
    big: bool | None
    min_degree: object
    witness: Wall | None


def positivity_profile(fan: Fan, L) -> PositivityProfile:
    degs = wall_degrees(fan, L)
    nef = all(wd.value >= 0 for wd in degs)
    ample = all(wd.value > 0 for wd in degs)
    gg = is_globally_generated(fan, L)
    if gg != nef:
        raise TheoremViolation(f"global generation ({gg}) disagrees with nefness ({nef})")
    if is_strictly_convex(fan, cartier_data(fan, L)) != ample:
        raise TheoremViolation("strict convexity disagrees with positivity on all walls")
    best = min(degs, key=lambda wd: wd.value)
    very = ample if is_smooth(fan) else None
    big = polytope(fan, L).dim == fan.rank if nef else None
    return PositivityProfile(nef, gg, ample, very, big, best.value, best.wall)


# -- big and nef -------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    coarse: Fan
    divisor: Divisor
    cone_map: dict = field(repr=False)


def nef_big_factorization(fan: Fan, L) -> Factorization:
    """Write a nef and big ``L`` as the pullback of an ample divisor.

    The coarse fan is the normal fan of ``P_L``; ``cone_map`` sends each
    maximal cone of ``fan`` to the coarse maximal cone containing it.
    """
    L = as_divisor(L)
    if not is_nef(fan, L) or not is_big(fan, L):
        raise PreconditionError("divisor must be nef and big")
    n = fan.rank
    P = polytope(fan, L)
    cd = cartier_data(fan, L)
    facet_rays = []
    for i, (v, b) in enumerate(P.inequalities):
        tight = [p for p in P.vertices if dot(v, p) == b]
        if len(tight) >= n and _affine_rank(tight) == n - 1:
            facet_rays.append(i)
    pos = {i: k for k, i in enumerate(facet_rays)}
    cones = []
    for p in P.vertices:
        cones.append([pos[i] for i in facet_rays if dot(fan.rays[i], p) == P.inequalities[i][1]])
    coarse = Fan(n, [fan.rays[i] for i in facet_rays], cones)
    Dp = Divisor(L[i] for i in facet_rays)
    cone_map = {}
    for c in fan.max_cones:
        u = cd.u[c]
        vidx = P.vertices.index(tuple(u))
        target = tuple(sorted(cones[vidx]))
        if not all(coarse.geometry(target).contains(fan.rays[i]) for i in c):
            raise TheoremViolation(f"cone {list(c)} is not inside the normal cone of its vertex")
        cone_map[c] = target
    if not is_ample(coarse, Dp):
        raise TheoremViolation("descended divisor is not ample")
    if pullback(coarse, Dp, fan) != L:
        raise TheoremViolation("pullback of the descended divisor differs from L")
    return Factorization(coarse, Dp, cone_map)


def _affine_rank(points) -> int:
    from ._linalg import rank
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


# -- Fujita --------------------------------------------------------------------

class Outcome(enum.Enum):
    HOLDS = "Holds"
    PROJECTIVE_SPACE_EXCEPTION = "ProjectiveSpaceException"
    HYPOTHESIS_NOT_MET = "HypothesisNotMet"


@dataclass(frozen=True)
class FujitaVerdict:
    outcome: Outcome
    detail: dict


def hyperplane_degree(fan: Fan, L) -> int:
    """Degree of ``L`` in multiples of the hyperplane class (projective space only)."""
    cg = class_group(fan)
    g = cg.project(prime_divisor(fan, 0)).free[0]
    return cg.project(L).free[0] // g


def has_ample_class(fan: Fan, tries: int = 1000, seed: int = 0) -> bool:
    """Search random divisors for an ample one, widening the range as it goes."""
    rng = random.Random(seed)
    for k in range(tries):
        D = Divisor(rng.randint(0, 2 + k // 25) for _ in range(fan.nrays))
        try:
            if is_strictly_convex(fan, cartier_data(fan, D)):
                return True
        except Exception:
            continue
    return False


def _fujita(fan: Fan, L, primes, threshold_shift: int, very_ample: bool) -> FujitaVerdict:
    _require_smooth_complete(fan)
    primes = sorted(primes)
    if len(set(primes)) != len(primes):
        raise PreconditionError("prime divisors must be distinct")
    if any(not 0 <= j < fan.nrays for j in primes):
        raise PreconditionError("prime divisor index out of range")
    cache = fan.__dict__.setdefault("_cache", {})
    if "projective_probe" not in cache:
        cache["projective_probe"] = has_ample_class(fan)
    if not cache["projective_probe"]:
        warnings.warn("no ample class found among random divisors; projectivity is unverified")
    n = fan.rank
    L = as_divisor(L)
    need = n + threshold_shift
    low, wall = min_curve_degree(fan, L)
    if low < need:
        return FujitaVerdict(Outcome.HYPOTHESIS_NOT_MET, {"min_degree": low, "required": need, "wall": wall})
    residual = L - sum((prime_divisor(fan, j) for j in primes), Divisor([0] * fan.nrays))
    if is_projective_space(fan) and hyperplane_degree(fan, L) == need and len(primes) == n + 1:
        return FujitaVerdict(Outcome.PROJECTIVE_SPACE_EXCEPTION,
                             {"n": n, "hyperplane_degree": need, "m": len(primes), "residual": residual})
    if very_ample:
        ok = is_ample(fan, residual)
    else:
        ok = is_globally_generated(fan, residual)
    if not ok:
        raise TheoremViolation(f"L - sum D_j is not {'very ample' if very_ample else 'globally generated'}"
                               f" for L={L}, primes={primes}")
    return FujitaVerdict(Outcome.HOLDS, {"min_degree": low, "residual": residual})


def fujita_global_generation(fan: Fan, L, primes) -> FujitaVerdict:
    return _fujita(fan, L, primes, 0, very_ample=False)


def fujita_very_ample(fan: Fan, L, primes) -> FujitaVerdict:
    return _fujita(fan, L, primes, 1, very_ample=True)


def adjoint_check(fan: Fan, L, very_ample: bool = False) -> FujitaVerdict:
    """Global generation (or very ampleness) of ``K_X + L``."""
    primes = range(fan.nrays)
    if very_ample:
        return fujita_very_ample(fan, L, primes)
    return fujita_global_generation(fan, L, primes)


# -- induction and obstructions ----------------------------------------------

def induction_step_check(fan: Fan, L, l: int, j: int) -> bool:
    _require_smooth_complete(fan)
    if l < 1 or min_curve_degree(fan, L)[0] < l:
        raise PreconditionError("need l >= 1 and all curve degrees >= l")
    return min_curve_degree(fan, as_divisor(L) - prime_divisor(fan, j))[0] >= l - 1


def _require_ample(fan: Fan, L):
    _require_smooth_complete(fan)
    if not is_ample(fan, L):
        raise PreconditionError("L must be ample")


def two_divisor_gg_obstruction(fan: Fan, L, j1: int, j2: int) -> tuple[bool, Wall | None]:
    """Whether ``L - D_j1 - D_j2`` fails to be globally generated, with a witness wall."""
    if j1 == j2:
        raise PreconditionError("the two prime divisors must be distinct")
    _require_ample(fan, L)
    L = as_divisor(L)
    not_gg = not is_globally_generated(fan, L - prime_divisor(fan, j1) - prime_divisor(fan, j2))
    witness = None
    for wd in wall_degrees(fan, L):
        w = wd.wall
        outside = (set(w.sigma1) | set(w.sigma2)) - set(w.tau)
        if wd.value == 1 and outside == {j1, j2}:
            witness = w
            break
    if not_gg != (witness is not None):
        raise TheoremViolation(f"obstruction biconditional failed for L={L}, j1={j1}, j2={j2}")
    return not_gg, witness


def ample_minus_divisor_obstruction(fan: Fan, L, j: int) -> tuple[bool, Wall | None]:
    """Whether ``L - D_j`` fails to be ample, with a witness wall."""
    _require_ample(fan, L)
    L = as_divisor(L)
    not_ample = not is_ample(fan, L - prime_divisor(fan, j))
    witness = None
    for wd in wall_degrees(fan, L):
        w = wd.wall
        if wd.value == 1 and j not in w.tau and (j in w.sigma1 or j in w.sigma2):
            witness = w
            break
    if not_ample != (witness is not None):
        raise TheoremViolation(f"obstruction biconditional failed for L={L}, j={j}")
    return not_ample, witness
