"""Angle-sum identities, their checks, and the degenerate families."""

import math

import numpy as np
import pytest

from polyangles import (
    angle_sum,
    check_gaddum_membership,
    check_gram_euler,
    check_polygon_identity,
    check_polyhedron_identity,
    check_simplex_shadow_probability,
    cube,
    gaddum_scan,
    predict_simplex_probability,
    random_polygon,
    random_simplex,
    regular_polygon,
    regular_simplex,
    run_verification,
    solid_angle,
)
from polyangles.geometry import random_rotation, transformed
from polyangles.identities import FLAT_APEX, SKEW_SEGMENTS, log_grid


def test_angle_sums_on_reference_shapes(cube3, square):
    t = random_simplex(2, 2)
    assert abs(angle_sum(t, 0, method="exact").value - math.pi) < 1e-12
    assert abs(angle_sum(square, 0).value - 2.0 * math.pi) < 1e-12
    assert abs(angle_sum(cube3, 0).value - 4.0 * math.pi) < 1e-12
    assert abs(angle_sum(cube3, 1).value - 12.0 * math.pi) < 1e-12
    with pytest.raises(ValueError):
        angle_sum(cube3, 3)
    with pytest.raises(ValueError):
        angle_sum(cube3, -1)


def test_predict_simplex_probability(regular_tetra):
    t = random_simplex(2, 14)
    assert abs(predict_simplex_probability(t) - 1.0) < 1e-12
    expected = 2.0 * math.acos(23.0 / 27.0) / math.pi
    assert abs(predict_simplex_probability(regular_tetra) - expected) < 1e-12


def test_near_flat_tetrahedron_probability():
    from polyangles import flat_apex_tetrahedron

    p = predict_simplex_probability(flat_apex_tetrahedron(1e-3))
    assert 0.99 < p < 1.0


def test_shadow_probability_check(regular_tetra):
    c = check_simplex_shadow_probability(regular_tetra, samples=50_000, seed=1)
    assert c.name == "simplex-shadow-probability"
    assert c.passed, "residual %g tolerance %g" % (c.residual, c.tolerance)
    assert c.tolerance >= 4.0 * c.lhs_stderr
    t = random_simplex(2, 3)
    c2 = check_simplex_shadow_probability(t, samples=5_000, seed=1)
    assert c2.residual == 0.0
    assert c2.passed


def test_polygon_identity():
    assert check_polygon_identity(regular_polygon(4)).residual < 1e-12
    hexagon = check_polygon_identity(regular_polygon(6))
    assert abs(hexagon.lhs - 4.0 * math.pi) < 1e-12
    for seed in range(10):
        c = check_polygon_identity(random_polygon(seed))
        assert c.passed, "seed %d residual %g" % (seed, c.residual)
    with pytest.raises(ValueError):
        check_polygon_identity(cube(3))


def test_polyhedron_identity(cube3, regular_tetra):
    c = check_polyhedron_identity(cube3)
    assert abs(c.lhs - (-4.0)) < 1e-12 and abs(c.rhs - (-4.0)) < 1e-12
    t = check_polyhedron_identity(regular_tetra)
    assert abs(t.lhs - (-2.0)) < 1e-12
    for seed in range(10):
        c = check_polyhedron_identity(random_simplex(3, seed))
        assert c.residual <= 1e-9, "seed %d residual %g" % (seed, c.residual)
    with pytest.raises(ValueError):
        check_polyhedron_identity(regular_polygon(3))


def test_gram_euler_exact_cases(cube3):
    tri = check_gram_euler(random_simplex(2, 5))
    assert abs(tri.rhs - (-2.0 * math.pi)) < 1e-12
    assert tri.residual <= 1e-9
    c = check_gram_euler(cube3)
    assert abs(c.rhs - 4.0 * math.pi) < 1e-12
    assert c.residual <= 1e-9
    for seed in range(5):
        t = check_gram_euler(random_simplex(3, seed))
        assert t.residual <= 1e-9, "seed %d residual %g" % (seed, t.residual)


def test_gram_euler_four_simplex_mc():
    s4 = regular_simplex(4)
    c = check_gram_euler(s4, samples=60_000, seed=0, workers=2)
    # the right-hand side flips sign with dimension: negative in R^4
    assert abs(c.rhs - (-2.0 * math.pi ** 2)) < 1e-12
    assert c.lhs < 0
    assert c.passed, "residual %g tolerance %g" % (c.residual, c.tolerance)
    assert c.tolerance >= 4.0 * c.lhs_stderr > 0


def test_gaddum_membership(regular_tetra):
    c = check_gaddum_membership(regular_tetra)
    assert c.passed
    assert 0.0 < c.lhs < 1.0
    with pytest.raises(ValueError):
        check_gaddum_membership(random_simplex(2, 0))


def test_gaddum_scan_families():
    flat = dict(gaddum_scan(FLAT_APEX, [1e-3, 1e-2, 1e-1]))
    assert flat[1e-3] > 0.99
    # pushing the apex down to the base drives the probability up to 1
    assert flat[1e-3] > flat[1e-2] > flat[1e-1]
    skew = dict(gaddum_scan(SKEW_SEGMENTS, [1e-3, 1e-2, 1e-1]))
    assert skew[1e-3] < 0.01
    assert skew[1e-3] < skew[1e-2] < skew[1e-1]
    for p in list(flat.values()) + list(skew.values()):
        assert 0.0 < p < 1.0


def test_gaddum_scan_validation():
    with pytest.raises(ValueError):
        gaddum_scan("spiral", [0.1])
    with pytest.raises(ValueError):
        gaddum_scan(FLAT_APEX, [])
    with pytest.raises(ValueError):
        gaddum_scan(FLAT_APEX, [0.1, -0.2])
    with pytest.raises(ValueError):
        gaddum_scan(FLAT_APEX, [0.0])


def test_log_grid():
    g = log_grid(1e-3, 10.0, 5)
    assert len(g) == 5
    assert abs(g[0] - 1e-3) < 1e-15 and abs(g[-1] - 10.0) < 1e-12
    ratios = [g[i + 1] / g[i] for i in range(4)]
    assert max(ratios) - min(ratios) < 1e-9
    assert log_grid(2.0, 5.0, 1) == [2.0]
    with pytest.raises(ValueError):
        log_grid(1.0, 2.0, 0)
    with pytest.raises(ValueError):
        log_grid(0.0, 2.0, 3)


def test_run_verification_suites(cube3, regular_tetra):
    tri = run_verification(random_simplex(2, 21), samples=4_000, seed=3)
    assert [c.name for c in tri] == [
        "polygon-angle-sum",
        "simplex-shadow-probability",
        "gram-euler",
    ]
    assert all(c.passed for c in tri)
    cube_checks = run_verification(cube3, samples=2_000, seed=3)
    assert [c.name for c in cube_checks] == ["polyhedron-angle-alternation", "gram-euler"]
    assert all(c.passed for c in cube_checks)
    tetra_checks = run_verification(regular_tetra, samples=30_000, seed=3)
    assert [c.name for c in tetra_checks] == [
        "polyhedron-angle-alternation",
        "simplex-shadow-probability",
        "gaddum-membership",
        "gram-euler",
    ]
    assert all(c.passed for c in tetra_checks), [
        (c.name, c.residual, c.tolerance) for c in tetra_checks
    ]


def test_rigid_motion_and_scale_invariance(regular_tetra):
    rng = np.random.default_rng(8)
    r = random_rotation(rng, 3)
    moved = transformed(regular_tetra, rotation=r, translation=np.array([0.4, -1.2, 2.0]))
    scaled = transformed(regular_tetra, scale=3.7)
    for q in (moved, scaled):
        for k in range(3):
            for f0, f1 in zip(regular_tetra.faces(k), q.faces(k)):
                assert f0.vertex_ids == f1.vertex_ids
                a0 = solid_angle(regular_tetra, f0).raw
                a1 = solid_angle(q, f1).raw
                assert abs(a0 - a1) <= 1e-9
        assert check_gram_euler(q).residual <= 1e-9
