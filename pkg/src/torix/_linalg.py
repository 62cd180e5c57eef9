"""Exact integer and rational linear algebra on small dense matrices.

Everything here works on plain Python ``int`` and ``fractions.Fraction``
values; nothing is ever converted to floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

Number = int | Fraction


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def as_exact(x) -> Number:
    """Return ``x`` as ``int`` when integral, else as ``Fraction``."""
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


def dot(u: Sequence[Number], v: Sequence[Number]) -> Number:
    return sum(a * b for a, b in zip(u, v))


def _integral_row(row: Sequence[Number]) -> dict[int, int]:
    den = lcm(*(Fraction(x).denominator for x in row if x))
    out = {}
    for j, x in enumerate(row):
        if x:
            out[j] = int(x * den)
    return out


def _normalize(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
    if g > 1:
        return {j: x // g for j, x in row.items()}
    return row


def rank(rows: Sequence[Sequence[Number]]) -> int:
    """Rank over the rationals via sparse fraction-free elimination."""
    return sparse_rank(_integral_row(raw) for raw in rows)


def sparse_rank(rows: Iterable[dict[int, int]]) -> int:
    """Rank of integer rows given as ``{column: value}`` dictionaries."""
    pivots: dict[int, dict[int, int]] = {}
    for r in rows:
        r = {j: x for j, x in r.items() if x}
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = _normalize(r)
                break
            a, b = p[c], r[c]
            new = {}
            for j in set(r) | set(p):
                x = a * r.get(j, 0) - b * p.get(j, 0)
                if x:
                    new[j] = x
            r = _normalize(new)
    return len(pivots)


def rref(rows: Sequence[Sequence[Number]], ncols: int):
    """Reduced row echelon form over Q. Returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivcols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivcols.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivcols


def nullspace(rows: Sequence[Sequence[Number]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : rows @ x = 0} over Q."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivcols = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivcols]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red, pivcols):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def integer_nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Rational nullspace basis scaled to primitive integer vectors."""
    out = []
    for x in nullspace(rows, ncols):
        den = lcm(*(v.denominator for v in x))
        y = [int(v * den) for v in x]
        g = 0
        for v in y:
            g = gcd(g, v)
        out.append([v // g for v in y])
    return out


def solve(rows: Sequence[Sequence[Number]], rhs: Sequence[Number], ncols: int):
    """One rational solution of ``rows @ x = rhs`` (free variables set to 0).

    Returns ``None`` when the system is inconsistent.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivcols = rref(aug, ncols + 1)
    if ncols in pivcols:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivcols):
        x[pc] = row[ncols]
    return x


def inverse(rows: Sequence[Sequence[Number]]) -> list[list[Fraction]]:
    """Inverse of a square nonsingular rational matrix."""
    n = len(rows)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    red, pivcols = rref(aug, 2 * n)
    if pivcols[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def smith(rows: Sequence[Sequence[int]], ncols: int):
    """Smith normal form ``U @ A @ V = S`` with nonnegative diagonal.

    Returns ``(diag, U, V)`` where ``diag`` lists the ``min(m, n)`` diagonal
    entries and ``U``, ``V`` are unimodular integer matrices as lists of rows.
    """
    m = len(rows)
    if m == 0 or ncols == 0:
        U = [[int(i == j) for j in range(m)] for i in range(m)]
        V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
        return [], U, V
    A = Matrix(rows)
    S, U, V = smith_normal_decomp(A, domain=ZZ)
    U = [[int(x) for x in U.row(i)] for i in range(m)]
    V = [[int(x) for x in V.row(i)] for i in range(ncols)]
    diag = []
    for i in range(min(m, ncols)):
        s = int(S[i, i])
        if s < 0:
            U[i] = [-x for x in U[i]]
            s = -s
        diag.append(s)
    return diag, U, V


def matmul(A: Sequence[Sequence[Number]], B: Sequence[Sequence[Number]]):
    cols = list(zip(*B))
    return [[dot(r, c) for c in cols] for r in A]


def matvec(A: Sequence[Sequence[Number]], x: Sequence[Number]):
    return [dot(r, x) for r in A]


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of a full-row-rank integer matrix.

    Used only to give lattice bases a canonical, run-independent shape.
    """
    m = [list(r) for r in rows]
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[piv] = m[piv], m[r]
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if any(m[i][c] for i in range(r, len(m))):
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
    return m
