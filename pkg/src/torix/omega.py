"""Cohomology of ``Omega^j (D)`` on smooth complete fans.

Fix a character and put ``alpha_i = a_i + <u, v_i>``. On the chart of a cone
``tau`` the corresponding piece of ``Omega^j(D)`` vanishes if some ray of
``tau`` has ``alpha_i < 0``. Otherwise it is ``wedge^j`` of the annihilator
of the rays of ``tau`` with ``alpha_i = 0``, sitting inside
``wedge^j (M tensor Q)``. Restriction maps are inclusions, so each Cech
complex is a complex of subspaces of one fixed space.

A second, slower route goes through the Euler sequence
``0 -> Omega^1 -> sum O(-D_k) -> O^(d-n) -> 0``: with ``E = sum S(-f_k)`` and
``F = S^(d-n)`` the module ``M_j = ker(wedge^j E -> wedge^(j-1) E (x) F)``
sheafifies to ``Omega^j``. It serves as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ._linalg import hermite_rows, integer_nullspace, nullspace, smith, sparse_rank
from .cohomology import CohomologyTable, _alpha_matrix, _box_points, _integral, _tau_table, degree_box
from .errors import NotCompleteError, NotSmoothError, PreconditionError, TheoremViolation
from .fan import Fan, is_complete, is_smooth, require_nondegenerate


@dataclass(frozen=True)
class EulerPresentation:
    """Rows ``r`` with ``sum_k r_k v_k = 0``; ``e_k`` maps to ``sum_s r[s][k] Y_k f_s``."""

    relation_basis: tuple[tuple[int, ...], ...]

    def image(self, k: int) -> tuple[int, ...]:
        return tuple(r[k] for r in self.relation_basis)


def euler_presentation(fan: Fan) -> EulerPresentation:
    if not is_smooth(fan):
        raise NotSmoothError("the Euler sequence is used for smooth fans")
    require_nondegenerate(fan)
    n, d = fan.rank, fan.nrays
    _, U, _ = smith([list(v) for v in fan.rays], n)
    rows = hermite_rows([U[i] for i in range(n, d)], d) if d > n else []
    return EulerPresentation(tuple(map(tuple, rows)))


def _check(fan: Fan, j: int):
    if not is_smooth(fan):
        raise NotSmoothError("Omega^j cohomology needs a smooth fan")
    if not is_complete(fan):
        raise NotCompleteError("Omega^j cohomology needs a complete fan")
    if not 0 <= j <= fan.rank:
        raise PreconditionError(f"j must lie in 0..{fan.rank}")


def _det(m: list[list[int]]) -> int:
    if not m:
        return 1
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** c * m[0][c] * _det([row[:c] + row[c + 1:] for row in m[1:]])
               for c in range(len(m)) if m[0][c])


def _forms_basis(fan: Fan, j: int, zero: tuple[int, ...]) -> list[dict[int, int]]:
    """``wedge^j`` of the annihilator of the rays ``zero``, in Pluecker coordinates."""
    n = fan.rank
    rows = [list(fan.rays[i]) for i in zero]
    V = integer_nullspace(rows, n) if rows else [[int(i == k) for i in range(n)] for k in range(n)]
    coords = list(combinations(range(n), j))
    out = []
    for S in combinations(V, j):
        vec = {}
        for c, I in enumerate(coords):
            x = _det([[w[i] for i in I] for w in S])
            if x:
                vec[c] = x
        out.append(vec)
    return out


def _kernel_basis(ep: EulerPresentation, subsets, alpha, tau: int) -> list[dict[int, int]]:
    """Basis of the localized degree piece of ``M_j`` in ``e_J`` coordinates."""
    cols = [i for i, J in enumerate(subsets)
            if all(alpha[r] - (r in J) >= 0 for r in range(len(alpha)) if tau >> r & 1)]
    if not cols:
        return []
    rel = ep.relation_basis
    targets: dict[tuple, int] = {}
    entries = []
    for c, i in enumerate(cols):
        J = subsets[i]
        for t, k in enumerate(J):
            rest = J[:t] + J[t + 1:]
            for s, row in enumerate(rel):
                if row[k]:
                    key = (rest, s)
                    entries.append((targets.setdefault(key, len(targets)), c, (-1) ** t * row[k]))
    matrix = [[0] * len(cols) for _ in range(len(targets))]
    for r, c, x in entries:
        matrix[r][c] += x
    return [_integral_row({cols[c]: x for c, x in enumerate(v) if x}) for v in nullspace(matrix, len(cols))]


def _cech_dims(fan: Fan, blocks: dict[int, list], width: int) -> tuple[int, ...]:
    """Cohomology of the Cech complex whose term for ``mask`` is spanned by ``blocks[mask]``.

    Every term is a subspace of one ambient space of dimension ``width`` and
    every map is a signed inclusion.
    """
    m = len(fan.max_cones)
    by_size: list[list[int]] = [[] for _ in range(m + 1)]
    for mask in range(1, 1 << m):
        by_size[mask.bit_count()].append(mask)
    pos = [{mask: i for i, mask in enumerate(level)} for level in by_size]
    ranks = [0] * (m + 2)
    for s in range(1, m):
        rows = []
        for mask in by_size[s]:
            for vec in blocks[mask]:
                row = {}
                below = 0
                for k in range(m):
                    bit = 1 << k
                    if mask & bit:
                        below += 1
                        continue
                    if not blocks[mask | bit]:
                        continue
                    base = pos[s + 1][mask | bit] * width
                    sign = -1 if below % 2 else 1
                    for col, x in vec.items():
                        row[base + col] = sign * x
                rows.append(row)
        ranks[s] = sparse_rank(rows)
    dims = []
    for s in range(1, m + 1):
        size = sum(len(blocks[mask]) for mask in by_size[s])
        dims.append(size - ranks[s] - ranks[s - 1])
    n = fan.rank
    if any(dims[n + 1:]):
        raise TheoremViolation(f"nonzero Cech cohomology above degree {n}")
    return tuple(dims[: n + 1])


def omega_degree_piece(fan: Fan, j: int, alpha, method: str = "forms") -> tuple[int, ...]:
    """``dim H^p`` of the degree ``alpha`` Cech complex of ``Omega^j``, ``p = 0..n``.

    ``method="euler"`` uses the Euler-sequence presentation instead of the
    local description by differential forms.
    """
    _check(fan, j)
    if len(alpha) != fan.nrays:
        raise ValueError(f"degree has {len(alpha)} entries, expected {fan.nrays}")
    alpha = tuple(alpha)
    if method == "forms":
        return _omega_dims(fan, j, alpha)
    if method == "euler":
        return _omega_dims_euler(fan, j, alpha)
    raise ValueError(f"unknown method {method!r}")


def _omega_dims(fan: Fan, j: int, alpha: tuple) -> tuple[int, ...]:
    cache = fan.__dict__.setdefault("_cache", {})
    tau = _tau_table(fan)
    m = len(fan.max_cones)
    blocks = {}
    for mask in range(1, 1 << m):
        rays = [i for i in range(fan.nrays) if tau[mask] >> i & 1]
        if any(alpha[i] < 0 for i in rays):
            blocks[mask] = []
            continue
        zero = tuple(i for i in rays if alpha[i] == 0)
        key = ("forms", j, zero)
        if key not in cache:
            cache[key] = _forms_basis(fan, j, zero)
        blocks[mask] = cache[key]
    return _cech_dims(fan, blocks, len(list(combinations(range(fan.rank), j))))


def _omega_dims_euler(fan: Fan, j: int, alpha: tuple) -> tuple[int, ...]:
    ep = euler_presentation(fan)
    subsets = list(combinations(range(fan.nrays), j))
    tau = _tau_table(fan)
    blocks = {mask: _kernel_basis(ep, subsets, alpha, tau[mask]) for mask in range(1, 1 << len(fan.max_cones))}
    return _cech_dims(fan, blocks, len(subsets))


def _integral_row(row: dict) -> dict[int, int]:
    from math import lcm
    den = lcm(*(x.denominator for x in row.values())) if row else 1
    return {k: int(x * den) for k, x in row.items()}


def omega_table(fan: Fan, j: int, D) -> CohomologyTable:
    """``h^p(X, Omega^j (D))`` for ``p = 0..n``.

    Degree pieces depend only on ``alpha`` clamped to ``{-1, 0, 1}``, which
    is used to share work between characters.
    """
    _check(fan, j)
    D = _integral(D)
    n = fan.rank
    pts = _box_points(degree_box(fan, D, levels=(-1, 0, 1)))
    alpha = np.clip(_alpha_matrix(fan, D, pts), -1, 1)
    uniq, counts = np.unique(alpha, axis=0, return_counts=True)
    cache = fan.__dict__.setdefault("_cache", {})
    total = [0] * (n + 1)
    for a, cnt in zip(uniq, counts):
        key = ("omega", j, tuple(int(x) for x in a))
        if key not in cache:
            cache[key] = _omega_dims(fan, j, key[2])
        for p in range(n + 1):
            total[p] += int(cnt) * cache[key][p]
    return CohomologyTable(tuple(total))


def omega_cohomology(fan: Fan, j: int, D, p: int) -> int:
    return omega_table(fan, j, D)[p]


def hodge_numbers(fan: Fan) -> list[list[int]]:
    """``h^{p,q} = h^q(Omega^p)`` as a square table indexed ``[p][q]``."""
    zero = [0] * fan.nrays
    return [list(omega_table(fan, p, zero).dims) for p in range(fan.rank + 1)]
