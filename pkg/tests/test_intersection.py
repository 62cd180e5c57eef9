import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from torix import (Divisor, Fan, NotSmoothError, PreconditionError, is_refinement, min_curve_degree, prime_divisor,
                   principal_divisor, pullback, restrict_to_divisor, star_subdivision, wall_curve_degree,
                   wall_degrees)

from toric_corpus import F1, P1, P112, P2, P3, smooth_corpus


def wall_relation_degree(fan, D, wall):
    """Oracle on smooth fans: ``v_p + v_q + sum c_i v_i = 0`` gives ``D.C = a_p + a_q + sum c_i a_i``."""
    (p,) = set(wall.sigma1) - set(wall.tau)
    (q,) = set(wall.sigma2) - set(wall.tau)
    target = [-(a + b) for a, b in zip(fan.rays[p], fan.rays[q])]
    total = D[p] + D[q]
    if wall.tau:
        A = sympy.Matrix([list(fan.rays[i]) for i in wall.tau]).T
        c, params = A.gauss_jordan_solve(sympy.Matrix(target))
        assert not params
        total += sum(int(ci) * D[i] for ci, i in zip(c, wall.tau))
    else:
        assert not any(target)
    return total


def test_p2_lines():
    assert [wd.value for wd in wall_degrees(P2, (1, 0, 0))] == [1, 1, 1]
    assert [wd.value for wd in wall_degrees(P2, (-1, -1, -1))] == [-3, -3, -3]


def test_hirzebruch_self_intersections():
    selfs = {j: next(wd.value for wd in wall_degrees(F1, prime_divisor(F1, j)) if wd.wall.tau == (j,))
             for j in range(4)}
    assert selfs == {0: 0, 1: -1, 2: 0, 3: 1}


def test_minus_one_curve_degrees():
    degs = {wd.wall.tau: wd.value for wd in wall_degrees(F1, prime_divisor(F1, 1))}
    assert degs == {(0,): 1, (1,): -1, (2,): 1, (3,): 0}
    value, wall = min_curve_degree(F1, prime_divisor(F1, 1))
    assert value == -1 and wall.tau == (1,)


def test_rational_degrees_on_weighted_plane():
    degs = {wd.wall.tau: wd.value for wd in wall_degrees(P112, (1, 0, 0))}
    assert degs == {(0,): Fraction(1, 2), (1,): 1, (2,): Fraction(1, 2)}
    w = next(w for w in P112.walls if w.tau == (1,))
    assert wall_curve_degree(P112, (0, 1, 0), w) == 2


def test_p1_degree_is_sum():
    assert [wd.value for wd in wall_degrees(P1, (2, 3))] == [5]


def test_incomplete_fan_rejected():
    with pytest.raises(PreconditionError):
        wall_degrees(Fan(2, P2.rays, [(0, 1)]), (1, 0, 0))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(smooth_corpus())), st.data())
def test_wall_degrees_match_relation_oracle(name, data):
    fan = smooth_corpus()[name]
    D = Divisor(data.draw(st.lists(st.integers(-4, 4), min_size=fan.nrays, max_size=fan.nrays)))
    for wd in wall_degrees(fan, D):
        assert wd.value == wall_relation_degree(fan, D, wd.wall)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(smooth_corpus())), st.data())
def test_principal_divisors_have_degree_zero(name, data):
    fan = smooth_corpus()[name]
    u = [data.draw(st.integers(-5, 5)) for _ in range(fan.rank)]
    assert all(wd.value == 0 for wd in wall_degrees(fan, principal_divisor(fan, u)))


def test_pullback_to_blowup():
    fine, new = star_subdivision(P2, (0, 1))
    assert is_refinement(fine, P2) and not is_refinement(P2, fine)
    assert pullback(P2, (1, 0, 0), fine).coeffs == (1, 0, 0, 1)
    assert pullback(P2, (0, 0, 1), fine).coeffs == (0, 0, 1, 0)
    with pytest.raises(PreconditionError):
        pullback(fine, (1, 0, 0, 0), P2)


def test_projection_formula_on_towers():
    rng = random.Random(2)
    for steps in range(1, 4):
        coarse = P2
        fine = coarse
        for _ in range(steps):
            fine, new = star_subdivision(fine, rng.choice([c for c in fine.all_cones if len(c) == 2]))
        for _ in range(5):
            D = Divisor(rng.randint(-3, 3) for _ in range(3))
            pulled = pullback(coarse, D, fine)
            # exceptional curves are contracted, so the pullback has degree zero on them
            for wd in wall_degrees(fine, pulled):
                if wd.wall.tau[0] >= 3:
                    assert wd.value == 0
            assert sum(wd.value for wd in wall_degrees(fine, pulled) if wd.wall.tau[0] < 3) == 3 * sum(D)


def test_restriction():
    sf, L = restrict_to_divisor(P2, (2, 0, 0), 0)
    assert sum(L) == 2 and sf.fan.rank == 1
    sf, L = restrict_to_divisor(F1, (0, 0, 0, 1), 1)
    assert sum(L) == 0
    sf, L = restrict_to_divisor(P3, (1, 1, 0, 0), 3)
    assert sf.fan.rank == 2 and [wd.value for wd in wall_degrees(sf.fan, L)] == [2, 2, 2]
    with pytest.raises(NotSmoothError):
        restrict_to_divisor(P112, (0, 1, 0), 0)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(smooth_corpus())), st.data())
def test_restriction_preserves_curve_degrees(name, data):
    fan = smooth_corpus()[name]
    if fan.rank < 2:
        return
    D = Divisor(data.draw(st.lists(st.integers(-3, 3), min_size=fan.nrays, max_size=fan.nrays)))
    j = data.draw(st.integers(0, fan.nrays - 1))
    sf, L = restrict_to_divisor(fan, D, j)
    full = {wd.wall.tau: wd.value for wd in wall_degrees(fan, D)}
    for wd in wall_degrees(sf.fan, L):
        tau = tuple(sorted({j} | {sf.ray_origin[i] for i in wd.wall.tau}))
        assert wd.value == full[tau]
