"""Exact H-representations of rational polyhedral cones given by generators."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from ._linalg import dot, integer_nullspace, rank


@dataclass(frozen=True)
class ConeGeometry:
    """Facet normals and span equations of ``cone(vectors)``.

    ``facets`` pairs each inner normal with the indices of the generators it
    vanishes on. ``equations`` spans the orthogonal complement of the span.
    """

    dim: int
    facets: tuple[tuple[tuple[int, ...], frozenset[int]], ...]
    equations: tuple[tuple[int, ...], ...]

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        if any(dot(e, x) != 0 for e in self.equations):
            return False
        if strict:
            return all(dot(h, x) > 0 for h, _ in self.facets)
        return all(dot(h, x) >= 0 for h, _ in self.facets)

    def is_pointed(self, ambient: int) -> bool:
        rows = [h for h, _ in self.facets] + list(self.equations)
        return rank(rows) == ambient if rows else ambient == 0


def cone_geometry(vectors: Sequence[Sequence[int]], ambient: int) -> ConeGeometry:
    vectors = [tuple(v) for v in vectors]
    k = rank(vectors) if vectors else 0
    equations = tuple(tuple(e) for e in integer_nullspace(vectors, ambient)) if vectors else tuple(
        tuple(int(i == j) for i in range(ambient)) for j in range(ambient)
    )
    facets: dict[frozenset[int], tuple[int, ...]] = {}
    if k == 0:
        return ConeGeometry(0, (), equations)
    for sub in combinations(range(len(vectors)), k - 1):
        rows = [vectors[i] for i in sub]
        if rows and rank(rows) != k - 1:
            continue
        for b in integer_nullspace(rows, ambient) if rows else [
            [int(i == j) for i in range(ambient)] for j in range(ambient)
        ]:
            vals = [dot(b, v) for v in vectors]
            if any(vals):
                break
        else:
            continue
        if all(x >= 0 for x in vals):
            h = tuple(b)
        elif all(x <= 0 for x in vals):
            h = tuple(-x for x in b)
        else:
            continue
        on = frozenset(i for i, x in enumerate(vals) if x == 0)
        facets.setdefault(on, h)
    return ConeGeometry(k, tuple((h, on) for on, h in sorted(facets.items(), key=lambda t: sorted(t[0]))), equations)


def extreme_rays(inequalities: Sequence[Sequence[int]], equations: Sequence[Sequence[int]],
                 ambient: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {x : A x >= 0, E x = 0}."""
    eq = [tuple(e) for e in equations]
    base = rank(eq) if eq else 0
    free_dim = ambient - base
    if free_dim <= 0:
        return []
    out = set()
    ineq = [tuple(a) for a in inequalities]
    for sub in combinations(range(len(ineq)), free_dim - 1):
        rows = eq + [ineq[i] for i in sub]
        ker = integer_nullspace(rows, ambient) if rows else [
            [int(i == j) for i in range(ambient)] for j in range(ambient)
        ]
        if len(ker) != 1:
            continue
        x = ker[0]
        for cand in (x, [-t for t in x]):
            if all(dot(a, cand) >= 0 for a in ineq):
                out.add(tuple(cand))
    return sorted(out)
