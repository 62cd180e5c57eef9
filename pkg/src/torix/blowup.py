"""Blow-ups along disjoint invariant subvarieties and restriction surjectivity.

For an ample ``L`` and pairwise disjoint orbit closures ``V(tau_i)`` the
restriction ``H^0(X, L) -> sum H^0(V(tau_i), L)`` is surjective. This is
checked on the blow-up ``pi`` along all ``V(tau_i)`` by computing
``h^1(pi^* L - sum E_i)`` and comparing section counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ._linalg import dot
from .cohomology import CohomologyTable, cohomology_table
from .divisors import Divisor, as_divisor, lattice_points, polytope, prime_divisor
from .errors import PreconditionError
from .fan import Cone, Fan, is_complete, is_smooth, star_subdivision
from .intersection import pullback
from .positivity import is_ample


def _as_cone(fan: Fan, tau) -> Cone:
    c = tuple(sorted(set(tau)))
    if not c or not fan.contains_cone(c):
        raise PreconditionError(f"{list(tau)} is not a nonzero cone of the fan")
    return c


def check_disjoint(fan: Fan, targets) -> None:
    """Raise unless no cone of ``fan`` contains two of the targets."""
    for a, b in combinations(targets, 2):
        both = set(a) | set(b)
        if any(both <= set(c) for c in fan.max_cones):
            raise PreconditionError(f"V({list(a)}) and V({list(b)}) intersect")


def blow_up_along(fan: Fan, targets) -> tuple[Fan, list[int]]:
    """Star-subdivide along each target; return the fan and exceptional ray indices.

    A one-dimensional target is already a divisor, so its exceptional
    divisor is the prime divisor itself.
    """
    targets = [_as_cone(fan, t) for t in targets]
    check_disjoint(fan, targets)
    out, exceptional = fan, []
    for tau in targets:
        if len(tau) == 1:
            exceptional.append(tau[0])
        else:
            out, new = star_subdivision(out, tau)
            exceptional.append(new)
    return out, exceptional


def face_lattice_points(fan: Fan, L, tau: Cone) -> int:
    """``h^0(V(tau), L)``: lattice points of the face of ``P_L`` cut out by ``tau``."""
    L = as_divisor(L)
    P = polytope(fan, L)
    return sum(1 for u in lattice_points(P) if all(dot(u, fan.rays[i]) == -L[i] for i in tau))


@dataclass
class SurjectivityReport:
    blown_up: Fan = field(repr=False)
    exceptional: list
    divisor: Divisor
    table: CohomologyTable
    h0_L: int
    face_counts: list
    violations: list

    @property
    def h1(self) -> int:
        return self.table[1]

    @property
    def surjective(self) -> bool:
        return self.h1 == 0


def run_surjectivity(fan: Fan, L, targets) -> SurjectivityReport:
    if not is_smooth(fan) or not is_complete(fan):
        raise PreconditionError("surjectivity is checked on smooth complete fans")
    L = as_divisor(L)
    if not is_ample(fan, L):
        raise PreconditionError("L must be ample")
    targets = [_as_cone(fan, t) for t in targets]
    big, exc = blow_up_along(fan, targets)
    D = pullback(fan, L, big)
    for e in exc:
        D = D - prime_divisor(big, e)
    table = cohomology_table(big, D)
    h0_L = len(lattice_points(polytope(fan, L)))
    faces = [face_lattice_points(fan, L, t) for t in targets]
    violations = []
    if table[1] != 0:
        violations.append(f"h^1(pi^*L - E) = {table[1]}")
    elif table[0] != h0_L - sum(faces):
        violations.append(f"h^0(pi^*L - E) = {table[0]} but h^0(L) - sum of face counts = {h0_L - sum(faces)}")
    return SurjectivityReport(big, exc, D, table, h0_L, faces, violations)
