"""Fans, cones, walls, star fans and star subdivisions.

A :class:`Fan` stores primitive ray generators in ``Z^n`` and its cones as
sorted tuples of ray indices. Cones are compared structurally, so the same
cone always has the same representation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from ._cones import ConeGeometry, cone_geometry, extreme_rays
from ._linalg import dot, rank, smith
from .errors import DegenerateFanError, FanError, NotSmoothError

Cone = tuple[int, ...]


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("the zero vector has no primitive generator")
    return tuple(int(x) // g for x in v)


def cone(*indices: int) -> Cone:
    return tuple(sorted(set(indices)))


@dataclass(frozen=True)
class Wall:
    """An (n-1)-cone ``tau`` with the two maximal cones meeting along it."""

    tau: Cone
    sigma1: Cone
    sigma2: Cone


@dataclass(frozen=True)
class Fan:
    """A rational polyhedral fan in ``N = Z^rank``.

    Construction only checks the shape of the data (index ranges, vector
    lengths); use :func:`validate_fan` for the geometric invariants.
    """

    rank: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[Cone, ...]
    all_cones: tuple[Cone, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, rank: int, rays: Iterable[Sequence[int]], max_cones: Iterable[Iterable[int]]):
        rays = tuple(tuple(int(x) for x in r) for r in rays)
        if rank < 1:
            raise FanError("rank must be positive")
        for i, r in enumerate(rays):
            if len(r) != rank:
                raise FanError(f"ray {i} has length {len(r)}, expected {rank}")
        cones = set()
        for c in max_cones:
            c = cone(*c)
            if not c:
                raise FanError("empty maximal cone")
            for i in c:
                if not 0 <= i < len(rays):
                    raise FanError(f"cone {list(c)} references ray {i}, out of range 0..{len(rays) - 1}")
            cones.add(c)
        # drop listed cones that are faces of other listed cones
        maxc = sorted(c for c in cones if not any(c != o and set(c) <= set(o) for o in cones))
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", tuple(maxc))
        object.__setattr__(self, "all_cones", self._face_closure())

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def geometry(self, c: Cone) -> ConeGeometry:
        cache = self.__dict__.setdefault("_geom", {})
        if c not in cache:
            cache[c] = cone_geometry([self.rays[i] for i in c], self.rank)
        return cache[c]

    def dim(self, c: Cone) -> int:
        return rank([self.rays[i] for i in c]) if c else 0

    def _faces_of(self, c: Cone) -> set[Cone]:
        vecs = [self.rays[i] for i in c]
        if not c:
            return {()}
        if rank(vecs) == len(c):
            return {sub for k in range(len(c) + 1) for sub in combinations(c, k)}
        out = {c}
        for _, on in self.geometry(c).facets:
            out |= self._faces_of(tuple(c[i] for i in sorted(on)))
        return out

    def _face_closure(self) -> tuple[Cone, ...]:
        faces = set()
        for c in self.max_cones:
            faces |= self._faces_of(c)
        return tuple(sorted(faces, key=lambda c: (len(c), c)))

    def cones_of_dim(self, k: int) -> list[Cone]:
        return [c for c in self.all_cones if self.dim(c) == k]

    def cones_containing(self, tau: Cone, maximal: bool = True) -> list[Cone]:
        pool = self.max_cones if maximal else self.all_cones
        return [c for c in pool if set(tau) <= set(c)]

    def contains_cone(self, c: Cone) -> bool:
        return cone(*c) in set(self.all_cones)

    def find_cone(self, point: Sequence, strict: bool = False) -> Cone | None:
        """A maximal cone containing ``point`` (rational coordinates allowed)."""
        for c in self.max_cones:
            if self.geometry(c).contains(point, strict=strict):
                return c
        return None

    @cached_property
    def walls(self) -> tuple[Wall, ...]:
        return tuple(walls(self))

    def __repr__(self):
        return f"Fan(rank={self.rank}, rays={list(map(list, self.rays))}, max_cones={list(map(list, self.max_cones))})"


def _spans_ambient(fan: Fan) -> bool:
    return bool(fan.rays) and rank(fan.rays) == fan.rank


def require_nondegenerate(fan: Fan) -> None:
    if not _spans_ambient(fan):
        raise DegenerateFanError(
            "rays do not span the ambient space; quotient the lattice by the span first"
        )


def validate_fan(fan: Fan) -> list[str]:
    """List every violated fan invariant (empty when the fan is valid)."""
    out = []
    seen = {}
    for i, r in enumerate(fan.rays):
        if all(x == 0 for x in r):
            out.append(f"ray {i} is zero")
            continue
        if primitive(r) != r:
            out.append(f"ray {i} not primitive")
        if r in seen:
            out.append(f"ray {i} duplicates ray {seen[r]}")
        seen.setdefault(r, i)
    if not _spans_ambient(fan):
        out.append("rays do not span the ambient space (degenerate fan)")
    used = {i for c in fan.max_cones for i in c}
    for i in range(fan.nrays):
        if i not in used:
            out.append(f"ray {i} lies in no cone")
    for c in fan.max_cones:
        if not fan.geometry(c).is_pointed(fan.rank):
            out.append(f"cone {list(c)} is not strongly convex")
        for i in c:
            # every listed generator must span an extremal ray of its cone
            if not _is_extremal(fan, c, i):
                out.append(f"ray {i} is not an extremal ray of cone {list(c)}")
    if out:
        return out
    for c1, c2 in combinations(fan.max_cones, 2):
        common = tuple(sorted(set(c1) & set(c2)))
        if not _is_common_face(fan, c1, c2, common):
            out.append(f"cones {list(c1)} and {list(c2)} do not meet in a common face")
    return out


def _is_extremal(fan: Fan, c: Cone, i: int) -> bool:
    others = [fan.rays[j] for j in c if j != i]
    if not others:
        return True
    return not cone_geometry(others, fan.rank).contains(fan.rays[i])


def _is_common_face(fan: Fan, c1: Cone, c2: Cone, common: Cone) -> bool:
    g1, g2 = fan.geometry(c1), fan.geometry(c2)
    ineq = [h for h, _ in g1.facets] + [h for h, _ in g2.facets]
    eqs = list(g1.equations) + list(g2.equations)
    face = cone_geometry([fan.rays[i] for i in common], fan.rank)
    return all(face.contains(x) for x in extreme_rays(ineq, eqs, fan.rank))


def lattice_index(fan: Fan, c: Cone) -> int | None:
    """Index of the sublattice generated by the rays of ``c`` in its saturation.

    ``None`` when the rays are linearly dependent (non-simplicial cone).
    """
    vecs = [fan.rays[i] for i in c]
    if not vecs:
        return 1
    if rank(vecs) != len(vecs):
        return None
    diag, _, _ = smith(vecs, fan.rank)
    out = 1
    for s in diag:
        out *= s
    return out


def singular_cones(fan: Fan) -> list[tuple[Cone, int | None]]:
    """Maximal cones that are not smooth, with their lattice index."""
    out = []
    for c in fan.max_cones:
        idx = lattice_index(fan, c)
        if idx != 1:
            out.append((c, idx))
    return out


def is_smooth(fan: Fan) -> bool:
    return not singular_cones(fan)


def is_simplicial(fan: Fan) -> bool:
    return all(fan.dim(c) == len(c) for c in fan.max_cones)


def is_complete(fan: Fan, samples: int = 200, seed: int = 0) -> bool:
    """Whether the support of the fan is all of ``R^n``.

    Combinatorial criterion (pure, every (n-1)-face in exactly two maximal
    cones, connected adjacency) backed by a randomized membership check.
    """
    cache = fan.__dict__.setdefault("_cache", {})
    key = ("complete", samples, seed)
    if key not in cache:
        cache[key] = _is_complete(fan, samples, seed)
    return cache[key]


def _is_complete(fan: Fan, samples: int, seed: int) -> bool:
    n = fan.rank
    if not fan.max_cones or any(fan.dim(c) != n for c in fan.max_cones):
        return False
    count: dict[Cone, list[Cone]] = {}
    for c in fan.max_cones:
        for f in fan._faces_of(c):
            if fan.dim(f) == n - 1:
                count.setdefault(f, []).append(c)
    if any(len(v) != 2 for v in count.values()):
        return False
    adj = {c: set() for c in fan.max_cones}
    for a, b in count.values():
        adj[a].add(b)
        adj[b].add(a)
    start = fan.max_cones[0]
    seen, stack = {start}, [start]
    while stack:
        for o in adj[stack.pop()]:
            if o not in seen:
                seen.add(o)
                stack.append(o)
    if len(seen) != len(fan.max_cones):
        return False
    rng = random.Random(seed)
    for _ in range(samples):
        x = [rng.randint(-97, 97) for _ in range(n)]
        if any(x) and fan.find_cone(x) is None:
            return False
    return True


def walls(fan: Fan) -> list[Wall]:
    """One :class:`Wall` per (n-1)-cone, ordered by ray indices."""
    n = fan.rank
    found: dict[Cone, list[Cone]] = {}
    for c in fan.max_cones:
        for f in fan._faces_of(c):
            if fan.dim(f) == n - 1:
                found.setdefault(f, []).append(c)
    out = []
    for tau in sorted(found):
        adj = sorted(found[tau])
        if len(adj) != 2 or any(fan.dim(c) != n for c in adj):
            raise FanError(f"fan not complete: cone {list(tau)} lies in {len(adj)} maximal cones")
        out.append(Wall(tau, adj[0], adj[1]))
    return out


def quotient_map(fan: Fan, tau: Cone) -> list[list[int]]:
    """Rows of an integer matrix inducing ``N -> N / N_tau``.

    ``N_tau`` is the saturated sublattice spanned by ``tau``.
    """
    n = fan.rank
    vecs = [fan.rays[i] for i in tau]
    if not vecs:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    k = rank(vecs)
    # columns of T are the rays of tau; U T V = S puts span(tau) in the first k rows
    cols = [list(r) for r in zip(*vecs)]
    _, U, _ = smith(cols, len(vecs))
    return [U[i] for i in range(k, n)]


@dataclass(frozen=True)
class StarFan:
    fan: Fan
    ray_origin: tuple[int, ...]
    projection: tuple[tuple[int, ...], ...]

    def index_of(self, original_ray: int) -> int:
        return self.ray_origin.index(original_ray)


def star_fan_data(fan: Fan, tau: Cone) -> StarFan:
    tau = cone(*tau)
    if not fan.contains_cone(tau):
        raise FanError(f"cone {list(tau)} is not in the fan")
    if not tau:
        return StarFan(fan, tuple(range(fan.nrays)), tuple(tuple(int(i == j) for j in range(fan.rank)) for i in range(fan.rank)))
    P = quotient_map(fan, tau)
    image = {}
    for g in fan.all_cones:
        if set(tau) < set(g) and fan.dim(g) == fan.dim(tau) + 1:
            i = min(set(g) - set(tau))
            image.setdefault(primitive([dot(p, fan.rays[i]) for p in P]), i)
    origin = sorted(image.values())
    new_rays = [primitive([dot(p, fan.rays[i]) for p in P]) for i in origin]
    pos = {r: k for k, r in enumerate(new_rays)}
    new_cones = []
    for c in fan.max_cones:
        if set(tau) <= set(c):
            img = set()
            for i in c:
                if i in tau:
                    continue
                v = [dot(p, fan.rays[i]) for p in P]
                if any(v) and primitive(v) in pos:
                    img.add(pos[primitive(v)])
            if img:
                new_cones.append(img)
    return StarFan(Fan(len(P), new_rays, new_cones), tuple(origin), tuple(map(tuple, P)))


def star_fan(fan: Fan, tau: Cone) -> Fan:
    """The fan of the orbit closure ``V(tau)`` in ``N / N_tau``."""
    return star_fan_data(fan, tau).fan


def star_subdivision(fan: Fan, sigma: Cone) -> tuple[Fan, int]:
    """Insert the ray through the sum of ``sigma``'s generators.

    Returns the subdivided fan and the index of the new (exceptional) ray.
    """
    sigma = cone(*sigma)
    if not fan.contains_cone(sigma):
        raise FanError(f"cone {list(sigma)} is not in the fan")
    if len(sigma) < 2:
        raise FanError("star subdivision needs a cone of dimension at least 2")
    affected = fan.cones_containing(sigma)
    for c in affected:
        if lattice_index(fan, c) != 1:
            raise NotSmoothError(f"cone {list(c)} containing {list(sigma)} is not smooth")
    w = primitive([sum(fan.rays[i][k] for i in sigma) for k in range(fan.rank)])
    new = fan.nrays
    cones = [c for c in fan.max_cones if c not in affected]
    for c in affected:
        for r in sigma:
            cones.append(cone(*(set(c) - {r}), new))
    return Fan(fan.rank, list(fan.rays) + [w], cones), new


def is_projective_space(fan: Fan) -> bool:
    return fan.nrays == fan.rank + 1 and is_smooth(fan) and is_complete(fan)
