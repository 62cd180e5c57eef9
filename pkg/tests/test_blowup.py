import random

import pytest

from torix import (PreconditionError, blow_up_along, is_complete, is_smooth, run_surjectivity,
                   wall_degrees)
from torix.blowup import check_disjoint, face_lattice_points
from torix.cohomology import h0_oracle

from toric_corpus import F1, P112, P1xP1, P2, P3, nef_divisors, smooth_corpus


def test_blow_up_points_of_the_plane():
    fan, exc = blow_up_along(P2, [(0, 1)])
    assert exc == [3] and fan.rays[3] == (1, 1)
    degs = {wd.wall.tau: wd.value for wd in wall_degrees(fan, [0, 0, 0, 1])}
    assert degs[(3,)] == -1


def test_blow_up_two_disjoint_points():
    fan, exc = blow_up_along(P1xP1, [(0, 2), (1, 3)])
    assert len(exc) == 2 and is_smooth(fan) and is_complete(fan)
    assert fan.nrays == 6


def test_blow_up_curve_in_threefold():
    fan, exc = blow_up_along(P3, [(0, 1)])
    assert fan.rays[exc[0]] == (1, 1, 0) and len(fan.max_cones) == 6


def test_divisor_target_is_identity():
    fan, exc = blow_up_along(P2, [(1,)])
    assert fan == P2 and exc == [1]


def test_intersecting_targets_rejected():
    with pytest.raises(PreconditionError, match="intersect"):
        blow_up_along(P2, [(0, 1), (1,)])
    with pytest.raises(PreconditionError):
        check_disjoint(P3, [(0, 1), (1, 2)])
    check_disjoint(P1xP1, [(0, 2), (1, 3)])


def test_bad_target():
    with pytest.raises(PreconditionError, match="not a nonzero cone"):
        blow_up_along(F1, [(0, 2)])


def test_face_lattice_points():
    assert face_lattice_points(P2, (2, 0, 0), (1, 2)) == 1
    assert face_lattice_points(P2, (2, 0, 0), (0,)) == 3
    assert face_lattice_points(P2, (2, 0, 0), ()) == 6


def test_pinned_surjectivity():
    r = run_surjectivity(P1xP1, (1, 0, 1, 0), [(0, 2), (1, 3)])
    assert r.table.dims == (2, 0, 0)
    assert r.h0_L == 4 and r.face_counts == [1, 1]
    assert r.surjective and not r.violations


def test_surjectivity_on_the_plane():
    r = run_surjectivity(P2, (1, 0, 0), [(0, 1)])
    assert r.table.dims == (2, 0, 0) and r.surjective
    r = run_surjectivity(P2, (2, 0, 0), [(0,)])
    assert r.table.dims == (3, 0, 0) and r.face_counts == [3]


def test_surjectivity_preconditions():
    with pytest.raises(PreconditionError):
        run_surjectivity(F1, (0, 0, 0, 1), [(0, 1)])
    with pytest.raises(PreconditionError):
        run_surjectivity(P112, (0, 1, 0), [(0, 1)])


def _disjoint_targets(fan, rng, k):
    cones = [c for c in fan.all_cones if c]
    rng.shuffle(cones)
    chosen = []
    for c in cones:
        if all(not any(set(c) | set(d) <= set(m) for m in fan.max_cones) for d in chosen):
            chosen.append(c)
        if len(chosen) == k:
            break
    return chosen


def test_random_surjectivity_cases():
    rng = random.Random(17)
    done = 0
    for name, fan in smooth_corpus().items():
        if len(fan.max_cones) > 8:
            continue
        for L in nef_divisors(fan, rng, 3, ample=True):
            targets = _disjoint_targets(fan, rng, rng.randint(1, 2))
            r = run_surjectivity(fan, L, targets)
            assert not r.violations
            assert r.table[0] == h0_oracle(r.blown_up, r.divisor) == r.h0_L - sum(r.face_counts)
            done += 1
    assert done >= 30
