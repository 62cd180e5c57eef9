"""Sheaf cohomology of invariant divisors via degreewise Cech complexes.

For a Weil divisor ``D = sum a_i D_i`` and a character ``u`` put
``alpha_i = a_i + <u, v_i>``. The degree ``u`` piece of ``H^p(X, O(D))`` is
computed by a complex with one basis vector for every nonempty set ``L`` of
maximal cones whose common face contains no ray with ``alpha_i < 0``. That
complex depends on ``u`` only through the set of negative rays, so results
are cached per sign pattern. It is evaluated through the complementary
complex of dead subsets, which is small. The same complex with the empty set allowed
computes the local cohomology of the Cox ring at the irrelevant ideal.
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ._linalg import inverse, rank, sparse_rank
from .divisors import Divisor, as_divisor, canonical_divisor, is_cartier, polytope
from .errors import NotCompleteError, NotSmoothError, PreconditionError, TheoremViolation
from .fan import Fan, is_complete, is_simplicial, is_smooth, require_nondegenerate
from .intersection import wall_degrees


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TORIX_THREADS", "1")))
    except ValueError:
        return 1


# -- cone bookkeeping ---------------------------------------------------------

def _tau_table(fan: Fan) -> tuple[int, ...]:
    """Ray bitmask of the common face of every subset of maximal cones.

    Entry ``mask`` describes the subset whose bits are set in ``mask``; the
    empty subset maps to the set of all rays.
    """
    cache = fan.__dict__.setdefault("_cache", {})
    if "tau_table" not in cache:
        cones = [sum(1 << i for i in c) for c in fan.max_cones]
        table = [(1 << fan.nrays) - 1] * (1 << len(cones))
        for mask in range(1, len(table)):
            low = mask & -mask
            table[mask] = table[mask ^ low] & cones[low.bit_length() - 1]
        cache["tau_table"] = tuple(table)
    return cache["tau_table"]


def _stars(fan: Fan) -> tuple[int, ...]:
    """Bitmask of the maximal cones containing each ray."""
    cache = fan.__dict__.setdefault("_cache", {})
    if "stars" not in cache:
        cache["stars"] = tuple(sum(1 << k for k, c in enumerate(fan.max_cones) if i in c)
                               for i in range(fan.nrays))
    return cache["stars"]


def _cech_dims(stars: tuple[int, ...], ncones: int, negative: int, augmented: bool) -> tuple[int, ...]:
    """Cohomology of the sign-pattern complex, same indexing as :func:`_cech_dims_direct`.

    The live subsets form an up-set in the simplex on the maximal cones. Its
    complement ``K`` (subsets whose common face has a negative ray) is the
    union of the simplices on the stars of the negative rays. The simplex is
    acyclic, so the live complex has ``H^p = H~^(p-1)(K)``, and the augmented
    one ``H^i = H~^(i-2)(K)``. ``K`` is usually far smaller.
    """
    if augmented and not negative:
        return (0,) * (ncones + 1)
    dead = {0}
    for i, star in enumerate(stars):
        if negative >> i & 1:
            sub = star
            while sub:
                dead.add(sub)
                sub = (sub - 1) & star
    by_size: list[list[int]] = [[] for _ in range(ncones + 2)]
    for mask in dead:
        by_size[mask.bit_count()].append(mask)
    pos = [{mask: i for i, mask in enumerate(level)} for level in by_size]
    ranks = [0] * (ncones + 2)
    for s in range(ncones):
        if not by_size[s] or not by_size[s + 1]:
            continue
        target = pos[s + 1]
        rows = []
        for mask in by_size[s]:
            row = {}
            below = 0
            for k in range(ncones):
                bit = 1 << k
                if mask & bit:
                    below += 1
                    continue
                t = target.get(mask | bit)
                if t is not None:
                    row[t] = -1 if below % 2 else 1
            rows.append(row)
        ranks[s] = sparse_rank(rows)
    # reduced cohomology of K at faces of size s
    red = [len(by_size[s]) - ranks[s] - (ranks[s - 1] if s else 0) for s in range(ncones + 1)]
    if augmented:
        return (0,) + tuple(red[:ncones])
    return tuple(red[:ncones])


def _cech_dims_direct(tau: tuple[int, ...], ncones: int, negative: int, augmented: bool) -> tuple[int, ...]:
    """Cohomology of the sign-pattern complex, enumerating every live subset.

    Entry ``q`` is the cohomology at subsets of size ``q`` (augmented) or
    ``q + 1`` (otherwise). Exponential in ``ncones``; kept as a reference
    for :func:`_cech_dims`.
    """
    start = 0 if augmented else 1
    by_size: list[list[int]] = [[] for _ in range(ncones + 1)]
    for mask in range(1 << ncones):
        if not tau[mask] & negative:
            by_size[mask.bit_count()].append(mask)
    pos = [{mask: i for i, mask in enumerate(level)} for level in by_size]
    ranks = [0] * (ncones + 2)
    for s in range(start, ncones):
        target = pos[s + 1]
        rows = []
        for mask in by_size[s]:
            row = {}
            below = 0
            for k in range(ncones):
                bit = 1 << k
                if mask & bit:
                    below += 1
                    continue
                t = target.get(mask | bit)
                if t is not None:
                    row[t] = -1 if below % 2 else 1
            rows.append(row)
        ranks[s] = sparse_rank(rows)
    out = []
    for s in range(start, ncones + 1):
        out.append(len(by_size[s]) - ranks[s] - (ranks[s - 1] if s > start else 0))
    return tuple(out)


def _pattern_dims(fan: Fan, negative: int, augmented: bool = False) -> tuple[int, ...]:
    cache = fan.__dict__.setdefault("_cache", {})
    key = ("cech", negative, augmented)
    if key not in cache:
        cache[key] = _cech_dims(_stars(fan), len(fan.max_cones), negative, augmented)
    return cache[key]


def _negative_mask(values) -> int:
    return sum(1 << i for i, x in enumerate(values) if x < 0)


def _integral(D) -> Divisor:
    D = as_divisor(D)
    if not D.is_integral:
        raise ValueError("sheaf cohomology is computed for integral divisors")
    return D


def _alpha(fan: Fan, D: Divisor, u) -> list[int]:
    return [a + sum(x * y for x, y in zip(u, v)) for a, v in zip(D, fan.rays)]


def cech_degree_piece(fan: Fan, D, u, i: int) -> int:
    """Dimension of the degree ``u`` part of ``H^i(X, O(D))``."""
    D = _integral(D)
    if len(u) != fan.rank:
        raise ValueError(f"character has {len(u)} entries, expected {fan.rank}")
    dims = _pattern_dims(fan, _negative_mask(_alpha(fan, D, u)))
    return dims[i] if 0 <= i < len(dims) else 0


def negative_ray_piece(fan: Fan, D, u, i: int) -> int:
    """Same as :func:`cech_degree_piece`, via the complex of negative cones.

    On a simplicial fan the degree ``u`` piece of ``H^i`` is the reduced
    cohomology ``H~^{i-1}`` of the subcomplex of cones all of whose rays are
    negative. Independent of the Cech code path.
    """
    if not is_simplicial(fan):
        raise PreconditionError("the negative-ray complex needs a simplicial fan")
    D = _integral(D)
    neg = {k for k, x in enumerate(_alpha(fan, D, u)) if x < 0}
    return _reduced_cohomology(fan, neg).get(i - 1, 0)


def _reduced_cohomology(fan: Fan, vertices: set[int]) -> dict[int, int]:
    faces: dict[int, list] = {-1: [()]}
    for c in fan.all_cones:
        if c and set(c) <= vertices:
            faces.setdefault(len(c) - 1, []).append(c)
    top = max(faces)
    index = {k: {f: i for i, f in enumerate(fs)} for k, fs in faces.items()}
    ranks = {}
    for k in range(-1, top):
        rows = []
        for f in faces[k]:
            row = {}
            for g in faces.get(k + 1, []):
                if set(f) <= set(g):
                    extra = next(x for x in g if x not in f)
                    row[index[k + 1][g]] = -1 if g.index(extra) % 2 else 1
            rows.append(row)
        ranks[k] = sparse_rank(rows)
    return {k: len(faces[k]) - ranks.get(k, 0) - ranks.get(k - 1, 0) for k in range(-1, top + 1)}


# -- degree region ------------------------------------------------------------

def degree_box(fan: Fan, D, levels=(0, -1)) -> list[tuple[int, int]]:
    """Integer box containing every bounded chamber of the degree arrangement.

    The hyperplanes are ``<u, v_i> = -a_i + c`` for ``c`` in ``levels``.
    """
    D = as_divisor(D)
    require_nondegenerate(fan)
    n = fan.rank
    lo = [math.inf] * n
    hi = [-math.inf] * n
    for sub in combinations(range(fan.nrays), n):
        rows = [fan.rays[i] for i in sub]
        if rank(rows) < n:
            continue
        inv = inverse(rows)
        rhs = [[-D[t] + c for c in levels] for t in sub]
        for k in range(n):
            lo[k] = min(lo[k], sum(min(inv[k][t] * b for b in rhs[t]) for t in range(n)))
            hi[k] = max(hi[k], sum(max(inv[k][t] * b for b in rhs[t]) for t in range(n)))
    return [(math.floor(a) - 1, math.ceil(b) + 1) for a, b in zip(lo, hi)]


def _box_points(box) -> np.ndarray:
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in box]
    grid = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grid], axis=1)


def _alpha_matrix(fan: Fan, D: Divisor, pts: np.ndarray) -> np.ndarray:
    rays = np.array(fan.rays, dtype=np.int64).reshape(fan.nrays, fan.rank)
    return pts @ rays.T + np.array([int(a) for a in D], dtype=np.int64)


def _sign_codes(alpha: np.ndarray) -> np.ndarray:
    weights = np.array([1 << i for i in range(alpha.shape[1])], dtype=np.int64)
    return (alpha < 0).astype(np.int64) @ weights


@dataclass(frozen=True)
class CohomologyTable:
    dims: tuple[int, ...]
    per_degree: dict | None = field(default=None, compare=False)

    def __getitem__(self, i: int) -> int:
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * h for i, h in enumerate(self.dims))


def _pattern_worker(args):
    stars, ncones, negative = args
    return _cech_dims(stars, ncones, negative, False)


def _dims_for_patterns(fan: Fan, patterns) -> dict[int, tuple[int, ...]]:
    cache = fan.__dict__.setdefault("_cache", {})
    todo = [p for p in patterns if ("cech", p, False) not in cache]
    threads = _threads()
    if threads > 1 and len(todo) > 8 and len(fan.max_cones) > 6:
        stars, m = _stars(fan), len(fan.max_cones)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for p, dims in zip(todo, pool.map(_pattern_worker, [(stars, m, p) for p in todo])):
                cache[("cech", p, False)] = dims
    return {p: _pattern_dims(fan, p) for p in patterns}


def cohomology_table(fan: Fan, D, per_degree: bool = False, check_outside: bool = False) -> CohomologyTable:
    """``h^i(X, O(D))`` for ``i = 0..n`` on a complete fan.

    With ``check_outside`` a sample of characters just outside the searched
    box is verified to contribute nothing.
    """
    if not is_complete(fan):
        raise NotCompleteError("cohomology tables need a complete fan")
    D = _integral(D)
    n = fan.rank
    box = degree_box(fan, D)
    pts = _box_points(box)
    codes = _sign_codes(_alpha_matrix(fan, D, pts))
    uniq, inv, counts = np.unique(codes, return_inverse=True, return_counts=True)
    dims_of = _dims_for_patterns(fan, [int(p) for p in uniq])
    total = [0] * (n + 1)
    for p, cnt in zip(uniq, counts):
        dims = dims_of[int(p)]
        if any(dims[n + 1:]):
            raise TheoremViolation(f"nonzero Cech cohomology above degree {n}")
        for i in range(n + 1):
            total[i] += int(cnt) * dims[i]
    breakdown = None
    if per_degree:
        breakdown = {}
        inv = inv.ravel()
        for k, pt in enumerate(pts):
            dims = dims_of[int(uniq[inv[k]])]
            if any(dims):
                breakdown[tuple(int(x) for x in pt)] = dims[: n + 1]
    if check_outside:
        _check_outside(fan, D, box)
    return CohomologyTable(tuple(total), breakdown)


def _check_outside(fan: Fan, D: Divisor, box, samples: int = 100, seed: int = 0):
    rng = random.Random(seed)
    n = fan.rank
    for _ in range(samples):
        u = [rng.randint(a, b) for a, b in box]
        k = rng.randrange(n)
        u[k] = box[k][1] + 1 + rng.randrange(3) if rng.random() < 0.5 else box[k][0] - 1 - rng.randrange(3)
        if any(_pattern_dims(fan, _negative_mask(_alpha(fan, D, u)))):
            raise TheoremViolation(f"character {u} outside the degree box contributes cohomology")


def negative_ray_table(fan: Fan, D) -> CohomologyTable:
    """:func:`cohomology_table` computed through :func:`negative_ray_piece`."""
    if not is_complete(fan):
        raise NotCompleteError("cohomology tables need a complete fan")
    if not is_simplicial(fan):
        raise PreconditionError("the negative-ray complex needs a simplicial fan")
    D = _integral(D)
    n = fan.rank
    pts = _box_points(degree_box(fan, D))
    alpha = _alpha_matrix(fan, D, pts)
    uniq, counts = np.unique(_sign_codes(alpha), return_counts=True)
    total = [0] * (n + 1)
    for code, cnt in zip(uniq, counts):
        neg = {k for k in range(fan.nrays) if int(code) >> k & 1}
        red = _reduced_cohomology(fan, neg)
        for i in range(n + 1):
            total[i] += int(cnt) * red.get(i - 1, 0)
    return CohomologyTable(tuple(total))


def h(fan: Fan, D, i: int) -> int:
    return cohomology_table(fan, D)[i]


# -- local cohomology of the Cox ring ----------------------------------------

def sign_normalize(alpha) -> tuple[int, ...]:
    return tuple(0 if a >= 0 else -1 for a in alpha)


def local_cohomology_S(fan: Fan, alpha, i: int) -> int:
    """``dim H^i_B(S)_alpha`` for the fine degree ``alpha`` in ``Z^d``."""
    if len(alpha) != fan.nrays:
        raise ValueError(f"degree has {len(alpha)} entries, expected {fan.nrays}")
    dims = _pattern_dims(fan, _negative_mask(alpha), augmented=True)
    return dims[i] if 0 <= i < len(dims) else 0


def frobenius_split_dims(fan: Fan, p: int) -> tuple[int, int]:
    if not is_smooth(fan):
        raise NotSmoothError("the Frobenius check is stated for smooth fans")
    if not is_complete(fan):
        raise NotCompleteError("the Frobenius check needs a complete fan")
    if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
        raise PreconditionError(f"{p} is not a prime")
    top = fan.rank + 1
    return (local_cohomology_S(fan, [-1] * fan.nrays, top), local_cohomology_S(fan, [-p] * fan.nrays, top))


# -- vanishing checks ---------------------------------------------------------

@dataclass
class VanishingReport:
    hypotheses: dict
    table: CohomologyTable | None
    shifted_table: CohomologyTable | None
    violations: list

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def verdict(self) -> str:
        if self.violations:
            return "THEOREM VIOLATION"
        return "vanishing holds" if self.hypotheses_hold else "hypotheses not met"


def vanishing_audit(fan: Fan, D, E, m: int) -> VanishingReport:
    """Check the hypotheses of the fractional vanishing theorem and its conclusion.

    ``D`` is integral, ``E`` has coefficients in ``[0, 1]``. When ``m(D+E)``
    is integral and Cartier the shifted divisor ``D + m(D+E)`` is also
    examined: whenever its ``h^i`` vanishes, so must that of ``D``.
    """
    if not is_complete(fan):
        raise NotCompleteError("the audit needs a complete fan")
    if m < 1:
        raise PreconditionError("m must be a positive integer")
    D, E = _integral(D), as_divisor(E)
    if len(D) != fan.nrays or len(E) != fan.nrays:
        raise ValueError("divisor length does not match the number of rays")
    mDE = m * (D + E)
    hyp = {"0 <= E <= 1": all(0 <= e <= 1 for e in E), "m(D+E) integral": mDE.is_integral}
    hyp["m(D+E) Cartier"] = hyp["m(D+E) integral"] and is_cartier(fan, mDE)
    hyp["D+E ample"] = hyp["m(D+E) Cartier"] and all(w.value > 0 for w in wall_degrees(fan, mDE))
    table = cohomology_table(fan, D)
    shifted = None
    violations = []
    n = fan.rank
    if hyp["0 <= E <= 1"] and hyp["m(D+E) Cartier"]:
        shifted = cohomology_table(fan, D + mDE)
        for i in range(1, n + 1):
            if shifted[i] == 0 and table[i] != 0:
                violations.append(f"h^{i}(D + m(D+E)) = 0 but h^{i}(D) = {table[i]}")
    if all(hyp.values()):
        for i in range(1, n + 1):
            if table[i] != 0:
                violations.append(f"h^{i}(D) = {table[i]} although D+E is ample")
    return VanishingReport(hyp, table, shifted, violations)


def serre_duality_check(fan: Fan, D) -> bool:
    if not is_smooth(fan):
        raise NotSmoothError("duality is checked on smooth fans")
    D = _integral(D)
    left = cohomology_table(fan, D)
    right = cohomology_table(fan, canonical_divisor(fan) - D)
    n = fan.rank
    return all(left[i] == right[n - i] for i in range(n + 1))


def kawamata_viehweg_check(fan: Fan, L) -> bool:
    """``h^i(K + L) = 0`` for ``i >= 1`` and a nef and big ``L``.

    Also recomputes the same groups on the coarse fan of the nef and big
    factorization, where ``L`` descends to an ample divisor.
    """
    from .positivity import nef_big_factorization

    if not is_smooth(fan):
        raise NotSmoothError("the check is stated for smooth fans")
    L = _integral(L)
    fac = nef_big_factorization(fan, L)
    n = fan.rank
    here = cohomology_table(fan, canonical_divisor(fan) + L)
    there = cohomology_table(fac.coarse, canonical_divisor(fac.coarse) + fac.divisor)
    if here.dims != there.dims:
        raise TheoremViolation(f"K+L has cohomology {here.dims} but its descent has {there.dims}")
    return all(here[i] == 0 for i in range(1, n + 1))


def h0_oracle(fan: Fan, D) -> int:
    """Number of lattice points of ``P_D``."""
    from .divisors import lattice_points

    return len(lattice_points(polytope(fan, D)))
