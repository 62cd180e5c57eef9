"""Torus-invariant divisors, the class group, Cartier data and polytopes.

Sign convention: a Cartier divisor ``D = sum a_i D_i`` restricts on ``U_sigma``
to ``div(chi^{-u_sigma})``, so ``<u_sigma, v_i> = -a_i`` for every ray ``v_i``
of ``sigma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from ._cones import extreme_rays
from ._linalg import as_exact, dot, hermite_rows, lcm, rank, smith, solve
from .errors import NotCartierError, NotCompleteError
from .fan import Cone, Fan, is_complete, require_nondegenerate


@dataclass(frozen=True)
class Divisor:
    """An invariant Weil or Q-divisor, one coefficient per ray."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        object.__setattr__(self, "coeffs", tuple(as_exact(x) for x in coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other):
        other = as_divisor(other)
        if len(other) != len(self):
            raise ValueError("divisors live on different fans")
        return Divisor(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return self + (-as_divisor(other))

    def __neg__(self):
        return Divisor(-a for a in self)

    def __mul__(self, k):
        return Divisor(k * a for a in self)

    __rmul__ = __mul__

    @property
    def is_integral(self) -> bool:
        return all(isinstance(a, int) for a in self.coeffs)

    def __str__(self):
        return ",".join(str(a) for a in self.coeffs)


def as_divisor(D) -> Divisor:
    return D if isinstance(D, Divisor) else Divisor(D)


def prime_divisor(fan: Fan, j: int) -> Divisor:
    return Divisor(int(i == j) for i in range(fan.nrays))


def canonical_divisor(fan: Fan) -> Divisor:
    return Divisor([-1] * fan.nrays)


def principal_divisor(fan: Fan, u: Sequence[int]) -> Divisor:
    """``div(chi^u) = sum <u, v_i> D_i``."""
    return Divisor(dot(u, v) for v in fan.rays)


def round_up(D) -> Divisor:
    return Divisor(math.ceil(a) for a in as_divisor(D))


def round_down(D) -> Divisor:
    return Divisor(math.floor(a) for a in as_divisor(D))


# -- class group -------------------------------------------------------------

@dataclass(frozen=True)
class DivisorClass:
    free: tuple[int, ...]
    torsion: tuple[int, ...]
    moduli: tuple[int, ...]

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple((a + b) % m for a, b, m in zip(self.torsion, other.torsion, self.moduli)),
            self.moduli,
        )

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.free), tuple((-a) % m for a, m in zip(self.torsion, self.moduli)), self.moduli)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return DivisorClass(tuple(k * a for a in self.free), tuple((k * a) % m for a, m in zip(self.torsion, self.moduli)), self.moduli)

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)


@dataclass(frozen=True)
class ClassGroup:
    """``Cl(X) = Z^d / M`` with a fixed isomorphism to ``Z^r + sum Z/m_i``."""

    free_rank: int
    moduli: tuple[int, ...]
    free_rows: tuple[tuple[int, ...], ...]
    torsion_rows: tuple[tuple[int, ...], ...]

    def project(self, D) -> DivisorClass:
        D = as_divisor(D)
        if not D.is_integral:
            raise ValueError("only integral divisors have a class")
        return DivisorClass(
            tuple(dot(r, D) for r in self.free_rows),
            tuple(dot(r, D) % m for r, m in zip(self.torsion_rows, self.moduli)),
            self.moduli,
        )

    __call__ = project

    def __str__(self):
        return " + ".join([f"Z^{self.free_rank}"] + [f"Z/{m}" for m in self.moduli])


def class_group(fan: Fan) -> ClassGroup:
    cache = fan.__dict__.setdefault("_cache", {})
    if "class_group" in cache:
        return cache["class_group"]
    require_nondegenerate(fan)
    n, d = fan.rank, fan.nrays
    diag, U, _ = smith([list(v) for v in fan.rays], n)
    torsion_rows, moduli = [], []
    for i, s in enumerate(diag):
        if s > 1:
            torsion_rows.append(tuple(U[i]))
            moduli.append(s)
    free = hermite_rows([U[i] for i in range(n, d)], d) if d > n else []
    out = ClassGroup(d - n, tuple(moduli), tuple(map(tuple, free)), tuple(torsion_rows))
    cache["class_group"] = out
    return out


def linearly_equivalent(fan: Fan, D1, D2) -> bool:
    return class_group(fan).project(as_divisor(D1) - as_divisor(D2)).is_zero


def is_principal(fan: Fan, D) -> bool:
    return class_group(fan).project(D).is_zero


# -- Cartier data ------------------------------------------------------------

def _cone_system(fan: Fan, c: Cone):
    cache = fan.__dict__.setdefault("_cache", {})
    key = ("snf", c)
    if key not in cache:
        rows = [list(fan.rays[i]) for i in c]
        cache[key] = smith(rows, fan.rank)
    return cache[key]


def _solve_on_cone(fan: Fan, c: Cone, rhs: Sequence):
    """Solve ``<u, v_i> = rhs_i`` for the rays of ``c``.

    Returns ``(u, m)``: a rational solution (``None`` if inconsistent) and
    the least ``m >= 1`` such that ``m * rhs`` admits an integral solution.
    """
    diag, U, V = _cone_system(fan, c)
    if len(c) == len(diag) == fan.rank and all(s == 1 for s in diag) and all(isinstance(x, int) for x in rhs):
        # unimodular full-dimensional cone: u = V U rhs, already integral
        t = [dot(row, rhs) for row in U]
        return tuple(dot(row, t) for row in V), 1
    rhs = [Fraction(x) for x in rhs]
    t = [dot(row, rhs) for row in U]
    r = sum(1 for s in diag if s)
    if any(t[i] != 0 for i in range(r, len(t))):
        return None, None
    y = [t[i] / diag[i] for i in range(r)] + [Fraction(0)] * (fan.rank - r)
    m = lcm(*(Fraction(x).denominator for x in y))
    u = tuple(as_exact(dot(row, y)) for row in V)
    return u, m


@dataclass(frozen=True)
class CartierData:
    """Local characters ``u_sigma`` of a (Q-)Cartier divisor."""

    fan: Fan
    divisor: Divisor
    u: dict

    def __getitem__(self, c: Cone):
        return self.u[c]

    def __hash__(self):
        return hash((self.fan, self.divisor))


def cartier_data(fan: Fan, D, rational: bool = False) -> CartierData:
    """Per-maximal-cone characters of ``D``.

    With ``rational=True`` Q-Cartier divisors are accepted and the
    characters may be rational. Raises :class:`NotCartierError` naming the
    first maximal cone where the local equations fail.
    """
    D = as_divisor(D)
    if len(D) != fan.nrays:
        raise ValueError(f"divisor has {len(D)} coefficients, fan has {fan.nrays} rays")
    u = {}
    for c in fan.max_cones:
        sol, m = _solve_on_cone(fan, c, [-D[i] for i in c])
        if sol is None:
            raise NotCartierError(f"not Q-Cartier on cone {list(c)}", witness=c)
        if not rational and m != 1:
            raise NotCartierError(f"not Cartier on cone {list(c)} (local character {sol})", witness=c)
        u[c] = sol
    return CartierData(fan, D, u)


def is_cartier(fan: Fan, D) -> bool:
    try:
        cartier_data(fan, D)
    except NotCartierError:
        return False
    return True


def q_cartier_index(fan: Fan, D) -> int | None:
    D = as_divisor(D)
    out = 1
    for c in fan.max_cones:
        sol, m = _solve_on_cone(fan, c, [-D[i] for i in c])
        if sol is None:
            return None
        out = lcm(out, m)
    den = lcm(*(Fraction(a).denominator for a in D))
    return lcm(out, den)


def support_function_eval(cd: CartierData, v: Sequence):
    c = cd.fan.find_cone(v)
    if c is None:
        raise ValueError(f"point {list(v)} lies outside the support of the fan")
    return as_exact(dot(cd.u[c], v))


def _wall_gaps(fan: Fan, cd: CartierData):
    if not is_complete(fan):
        raise NotCompleteError("convexity of the support function needs a complete fan")
    for w in fan.walls:
        for a, b in ((w.sigma1, w.sigma2), (w.sigma2, w.sigma1)):
            for i in set(b) - set(a):
                v = fan.rays[i]
                yield dot(cd.u[a], v) - dot(cd.u[b], v)


def is_convex(fan: Fan, cd: CartierData) -> bool:
    """Whether ``psi_D`` is (upper) convex, checked across every wall."""
    return all(g >= 0 for g in _wall_gaps(fan, cd))


def is_strictly_convex(fan: Fan, cd: CartierData) -> bool:
    return all(g > 0 for g in _wall_gaps(fan, cd))


# -- polytopes ---------------------------------------------------------------

@dataclass(frozen=True)
class DivisorPolytope:
    """``P_D = {u : <u, v_i> >= -a_i for all i}``."""

    inequalities: tuple
    vertices: tuple
    dim: int
    bounded: bool

    def contains(self, u: Sequence) -> bool:
        return all(dot(v, u) >= b for v, b in self.inequalities)


def polytope(fan: Fan, D) -> DivisorPolytope:
    D = as_divisor(D)
    n = fan.rank
    ineq = tuple((v, -a) for v, a in zip(fan.rays, D))
    verts = set()
    for sub in combinations(range(fan.nrays), n):
        rows = [fan.rays[i] for i in sub]
        if rank(rows) != n:
            continue
        x = solve(rows, [-D[i] for i in sub], n)
        if all(dot(v, x) >= b for v, b in ineq):
            verts.add(tuple(as_exact(t) for t in x))
    verts = tuple(sorted(verts))
    if verts:
        base = verts[0]
        dim = rank([[a - b for a, b in zip(p, base)] for p in verts[1:]]) if len(verts) > 1 else 0
    else:
        dim = -1
    bounded = rank(fan.rays) == n and not extreme_rays(fan.rays, [], n)
    return DivisorPolytope(ineq, verts, dim, bounded)


def lattice_points(P: DivisorPolytope) -> list[tuple[int, ...]]:
    if not P.vertices:
        return []
    if not P.bounded:
        raise ValueError("polytope is unbounded")
    n = len(P.vertices[0])
    lo = [math.floor(min(p[k] for p in P.vertices)) for k in range(n)]
    hi = [math.ceil(max(p[k] for p in P.vertices)) for k in range(n)]
    return [u for u in product(*(range(a, b + 1) for a, b in zip(lo, hi))) if P.contains(u)]


# -- representatives on smooth complete fans ---------------------------------

def zero_on_cone(fan: Fan, D, sigma: Cone) -> Divisor:
    """The divisor linearly equivalent to ``D`` vanishing on the rays of ``sigma``."""
    D = as_divisor(D)
    u, m = _solve_on_cone(fan, sigma, [-D[i] for i in sigma])
    if u is None or m != 1:
        raise NotCartierError(f"not Cartier on cone {list(sigma)}", witness=sigma)
    return D + principal_divisor(fan, u)
