import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torix import (NotSmoothError, PreconditionError, canonical_divisor, cohomology_table,
                   euler_presentation, hodge_numbers, omega_cohomology, omega_degree_piece, omega_table,
                   prime_divisor)

from toric_corpus import F1, P1, P112, P1xP1, P2, P3, nef_divisors, random_divisor, smooth_corpus


def bott(n, p, k):
    """``h^q(P^n, Omega^p(k))``, classical formula."""
    out = [0] * (n + 1)
    if k > p:
        out[0] = comb(k + n - p, k) * comb(k - 1, p)
    elif p == 0 and k == 0:
        out[0] = 1
    if k == 0 and 0 < p < n:
        out[p] = 1
    if k < p - n:
        out[n] = comb(-k + p, -k) * comb(-k - 1, n - p)
    elif p == n and k == 0:
        out[n] = 1
    return tuple(out)


def hodge_from_faces(fan):
    n = fan.rank
    f = [sum(1 for c in fan.all_cones if len(c) == i) for i in range(n + 1)]
    return [sum((-1) ** (k - p) * comb(k, p) * f[n - k] for k in range(p, n + 1)) for p in range(n + 1)]


@pytest.mark.parametrize("n, fan", [(1, P1), (2, P2), (3, P3)], ids=["P1", "P2", "P3"])
def test_bott_formula(n, fan):
    for p in range(n + 1):
        for k in range(-5, 5):
            assert omega_table(fan, p, [k] + [0] * n).dims == bott(n, p, k), (p, k)


def test_pinned_values():
    assert omega_table(P2, 1, (1, 0, 0)).dims == (0, 0, 0)
    assert omega_table(P2, 1, (2, 0, 0))[0] == 3
    assert omega_table(P2, 1, (-3, 0, 0))[2] == 8
    assert omega_table(P3, 1, (0, 0, 0, 0)).dims == (0, 1, 0, 0)
    assert omega_cohomology(P2, 1, (0, 0, 0), 1) == 1


def test_hodge_diamonds():
    assert hodge_numbers(P1) == [[1, 0], [0, 1]]
    assert hodge_numbers(P2) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert hodge_numbers(P1xP1)[1] == [0, 2, 0]
    assert hodge_numbers(F1)[1] == [0, 2, 0]


@pytest.mark.parametrize("name", sorted(smooth_corpus()))
def test_hodge_numbers_match_face_counts(name):
    fan = smooth_corpus()[name]
    table = hodge_numbers(fan)
    diag = hodge_from_faces(fan)
    for p in range(fan.rank + 1):
        for q in range(fan.rank + 1):
            assert table[p][q] == (diag[p] if p == q else 0)


def test_euler_presentation():
    ep = euler_presentation(P2)
    assert len(ep.relation_basis) == 1
    for r in ep.relation_basis:
        assert all(sum(r[k] * P2.rays[k][c] for k in range(3)) == 0 for c in range(2))
    assert ep.image(0) == ep.relation_basis[0][:1]
    with pytest.raises(NotSmoothError):
        euler_presentation(P112)


def test_degree_piece():
    # H^1(P^2, Omega^1) lives in degree zero
    assert omega_degree_piece(P2, 1, (0, 0, 0)) == (0, 1, 0)
    assert omega_degree_piece(P2, 0, (0, 0, 0)) == (1, 0, 0)


def test_preconditions():
    with pytest.raises(PreconditionError):
        omega_table(P2, 3, (0, 0, 0))
    with pytest.raises(NotSmoothError):
        omega_table(P112, 1, (0, 0, 0))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(smooth_corpus())), st.integers(0, 10**6))
def test_extreme_wedge_powers(name, seed):
    fan = smooth_corpus()[name]
    D = random_divisor(fan, random.Random(seed), -2, 2)
    assert omega_table(fan, 0, D) == cohomology_table(fan, D)
    assert omega_table(fan, fan.rank, D) == cohomology_table(fan, canonical_divisor(fan) + D)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(name for name, f in smooth_corpus().items() if f.rank <= 2)),
       st.integers(0, 10**6))
def test_euler_sequence_characteristic(name, seed):
    fan = smooth_corpus()[name]
    D = random_divisor(fan, random.Random(seed), -2, 2)
    chi = lambda A: cohomology_table(fan, A).euler_characteristic
    expected = sum(chi(D - prime_divisor(fan, k)) for k in range(fan.nrays)) - (fan.nrays - fan.rank) * chi(D)
    assert omega_table(fan, 1, D).euler_characteristic == expected


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(smooth_corpus())), st.integers(0, 10**6))
def test_serre_duality_for_forms(name, seed):
    fan = smooth_corpus()[name]
    rng = random.Random(seed)
    D = random_divisor(fan, rng, -2, 2)
    n = fan.rank
    p = rng.randint(0, n)
    left = omega_table(fan, p, D)
    right = omega_table(fan, n - p, -D)
    assert all(left[q] == right[n - q] for q in range(n + 1))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(smooth_corpus())), st.integers(0, 10**6))
def test_bott_vanishing(name, seed):
    fan = smooth_corpus()[name]
    rng = random.Random(seed)
    for L in nef_divisors(fan, rng, 1, ample=True):
        for p in range(fan.rank + 1):
            assert omega_table(fan, p, L).dims[1:] == (0,) * fan.rank


@pytest.mark.parametrize("name", ["P1", "P2", "F1", "P1xP1", "tower2_1"])
def test_forms_match_euler_sequence(name):
    fan = smooth_corpus()[name]
    rng = random.Random(len(name))
    for _ in range(12):
        alpha = [rng.randint(-1, 1) for _ in range(fan.nrays)]
        for j in range(fan.rank + 1):
            assert omega_degree_piece(fan, j, alpha) == omega_degree_piece(fan, j, alpha, method="euler")
    with pytest.raises(ValueError):
        omega_degree_piece(fan, 0, [0] * fan.nrays, method="other")
