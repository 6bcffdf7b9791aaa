"""Shadow classification, face survival, and projection experiments."""

import math

import numpy as np
import pytest

from polyangles import (
    build_simplex,
    classify_many,
    classify_simplex_projection,
    cube,
    estimate_expected_face_count,
    estimate_simplex_probability,
    face_survives,
    flat_apex_tetrahedron,
    project,
    random_simplex,
    regular_polygon,
    tangent_cone_contains,
)
from polyangles.geometry import sample_unit_sphere_batch
from polyangles.projection import (
    CLASS_LABELS,
    DEGENERATE,
    LOWER_SIMPLEX,
    NOT_SIMPLEX,
)


def test_project_cube_along_axis(cube3):
    w = project(cube3, np.array([0.0, 0.0, 1.0]))
    assert w.shape == (8, 2)
    # top and bottom vertices collapse pairwise onto a unit square
    uniq = {tuple(np.round(row, 12)) for row in w}
    assert len(uniq) == 4
    side = max(abs(w[:, 0].max() - w[:, 0].min()), abs(w[:, 1].max() - w[:, 1].min()))
    assert abs(side - 1.0) < 1e-12


def test_project_triangle_is_collinear():
    t = random_simplex(2, 1)
    w = project(t, np.array([math.cos(0.3), math.sin(0.3)]))
    assert w.shape == (3, 1)


def test_project_requires_unit_direction(cube3):
    with pytest.raises(ValueError):
        project(cube3, np.array([0.0, 0.0, 2.0]))


def test_triangle_projections_always_lower_simplex():
    rng = np.random.default_rng(17)
    t = random_simplex(2, 6)
    for u in sample_unit_sphere_batch(rng, 2, 200):
        out = classify_simplex_projection(t, u)
        assert out.simplex_class == LOWER_SIMPLEX
        assert out.interior_vertex in (0, 1, 2)


def test_right_corner_classification_with_barycentric_oracle(right_corner_tetra):
    u = np.ones(3) / math.sqrt(3.0)
    out = classify_simplex_projection(right_corner_tetra, u)
    assert out.simplex_class == LOWER_SIMPLEX
    assert out.interior_vertex == 0
    # oracle: barycentric coordinates of the corner image by signed areas
    w = project(right_corner_tetra, u)

    def area(a, b, c):
        return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))

    total = area(w[1], w[2], w[3])
    lam = np.array([
        area(w[0], w[2], w[3]) / total,
        area(w[1], w[0], w[3]) / total,
        area(w[1], w[2], w[0]) / total,
    ])
    assert np.allclose(lam, 1.0 / 3.0, atol=1e-12)
    assert lam.min() > 0


def test_flat_apex_projects_to_interior():
    t = flat_apex_tetrahedron(0.25)
    out = classify_simplex_projection(t, np.array([0.0, 0.0, 1.0]))
    assert out.simplex_class == LOWER_SIMPLEX
    assert out.interior_vertex == 3


def test_edge_direction_is_degenerate(regular_tetra):
    e = regular_tetra.vertices[1] - regular_tetra.vertices[0]
    u = e / np.linalg.norm(e)
    out = classify_simplex_projection(regular_tetra, u)
    assert out.simplex_class == DEGENERATE
    assert out.interior_vertex is None


def test_classification_rejects_non_simplex(cube3):
    with pytest.raises(ValueError):
        classify_simplex_projection(cube3, np.array([0.0, 0.0, 1.0]))
    with pytest.raises(ValueError):
        estimate_simplex_probability(cube3, 10, 0)


def test_classify_many_matches_per_sample():
    rng = np.random.default_rng(23)
    for p in (random_simplex(2, 4), random_simplex(3, 4), random_simplex(4, 4)):
        dirs = sample_unit_sphere_batch(rng, p.dim, 300)
        codes, interior = classify_many(p, dirs)
        for s in range(dirs.shape[0]):
            out = classify_simplex_projection(p, dirs[s])
            assert CLASS_LABELS[codes[s]] == out.simplex_class
            if out.simplex_class == LOWER_SIMPLEX:
                assert interior[s] == out.interior_vertex
            else:
                assert interior[s] == -1


def test_classify_many_validates_shape(regular_tetra):
    with pytest.raises(ValueError):
        classify_many(regular_tetra, np.zeros((5, 2)))


def test_face_survival_cube_facet(cube3):
    top = next(f for f in cube3.faces(2) if abs(f.centroid[2] - 1.0) < 1e-12)
    assert not face_survives(cube3, top, np.array([0.0, 0.0, 1.0]))
    assert face_survives(cube3, top, np.array([1.0, 0.0, 0.0]))


def test_survival_complements_cone_membership(cube3, regular_tetra):
    # a vertex survives the shadow exactly when the direction avoids
    # both its tangent cone and the antipode (generic directions)
    rng = np.random.default_rng(5)
    for p in (cube3, regular_tetra):
        for u in sample_unit_sphere_batch(rng, 3, 100):
            for v in p.faces(0):
                swallowed = tangent_cone_contains(p, v, u) or tangent_cone_contains(p, v, -u)
                assert face_survives(p, v, u) == (not swallowed)


def test_surviving_face_masks(cube3, regular_tetra):
    rng = np.random.default_rng(31)
    u = sample_unit_sphere_batch(rng, 3, 1)[0]
    out = classify_simplex_projection(regular_tetra, u, survival=True)
    assert len(out.surviving_faces) == 3
    # bitmask agrees with the one-face test
    for k in range(3):
        for i, f in enumerate(regular_tetra.faces(k)):
            assert bool(out.surviving_faces[k] >> i & 1) == face_survives(regular_tetra, f, u)
    # the cube's generic shadow is a hexagon: 6 vertices survive
    counts = [bin(m).count("1") for m in _cube_masks(cube3, u)]
    assert counts[0] == 6
    assert counts[1] == 6


def _cube_masks(p, u):
    from polyangles.projection import _survival_masks

    return [int(m[0]) for m in _survival_masks(p, u[None, :], p.tol)]


def test_triangle_probability_is_exactly_one():
    t = random_simplex(2, 9)
    rep = estimate_simplex_probability(t, 10_000, seed=2)
    assert rep.estimate == 1.0
    assert rep.degenerate == 0
    assert rep.stderr == 0.0
    assert rep.samples == 10_000


def test_probability_report_is_deterministic(regular_tetra):
    a = estimate_simplex_probability(regular_tetra, 30_000, seed=4, workers=1)
    b = estimate_simplex_probability(regular_tetra, 30_000, seed=4, workers=1)
    assert a.estimate == b.estimate
    c = estimate_simplex_probability(regular_tetra, 30_000, seed=4, workers=3)
    d = estimate_simplex_probability(regular_tetra, 30_000, seed=4, workers=3)
    assert c.estimate == d.estimate
    with pytest.raises(ValueError):
        estimate_simplex_probability(regular_tetra, 0, seed=4)


def test_expected_face_count_cube(cube3):
    r0 = estimate_expected_face_count(cube3, 0, 20_000, seed=3)
    assert abs(r0.prediction - 6.0) < 1e-12
    assert r0.estimate == 6.0  # every generic cube shadow is a hexagon
    r1 = estimate_expected_face_count(cube3, 1, 20_000, seed=3)
    assert abs(r1.prediction - 6.0) < 1e-12
    assert r1.estimate == 6.0
    assert r1.residual <= 1e-12


def test_expected_face_count_polygon():
    p = regular_polygon(7)
    r = estimate_expected_face_count(p, 0, 5_000, seed=1)
    assert abs(r.prediction - 2.0) < 1e-12
    assert r.estimate == 2.0


def test_expected_face_count_rejects_facet_dimension(cube3):
    with pytest.raises(ValueError):
        estimate_expected_face_count(cube3, 2, 100, seed=0)
    with pytest.raises(ValueError):
        estimate_expected_face_count(cube3, -1, 100, seed=0)


def test_expected_face_count_random_tetrahedron():
    t = random_simplex(3, 12)
    r = estimate_expected_face_count(t, 0, 40_000, seed=7)
    # 4 sigma of the per-direction count spread, plus tiny exact slack
    assert r.residual <= 4.0 * math.hypot(r.stderr, r.prediction_stderr) + 1e-9
