"""Generators for the test corpus: regular solids, degenerate tetrahedron
families, and seeded random polytopes.

The two parametric tetrahedron families realize the extremes of the vertex
angle-sum range for 3-simplices: a flat-apex tetrahedron approaches the
upper bound as the apex height h -> 0, and a skew-segment tetrahedron
(almost a parallelogram) approaches the lower bound as the center
distance d -> 0.
"""

import math

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    HalfSpace,
    build_polytope,
    build_simplex,
)


def _as_rng(seed_or_rng):
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def regular_simplex(n, tol=DEFAULT_TOL):
    """Regular n-simplex with edge length sqrt(2), centered constructively.

    The n+1 standard basis vectors of R^(n+1) form a regular simplex inside
    the hyperplane sum(x) = 1; a Householder reflection mapping the
    hyperplane normal onto the last axis drops them into R^n.
    """
    e = np.eye(n + 1)
    u = np.full(n + 1, 1.0 / math.sqrt(n + 1))
    w = u - e[-1]
    w /= np.linalg.norm(w)
    h = np.eye(n + 1) - 2.0 * np.outer(w, w)
    points = (h @ e.T).T[:, :n]
    return build_simplex(points, tol)


def cube(n, tol=DEFAULT_TOL):
    """Unit cube [0, 1]^n with its 2n facet halfspaces."""
    if n < 2:
        raise ValueError("cube dimension must be >= 2")
    vertices = np.array([[float(b >> i & 1) for i in range(n)] for b in range(2 ** n)])
    halfspaces = []
    for i in range(n):
        lo = np.zeros(n)
        lo[i] = -1.0
        hi = np.zeros(n)
        hi[i] = 1.0
        halfspaces.append(HalfSpace(lo, 0.0))
        halfspaces.append(HalfSpace(hi, 1.0))
    return build_polytope(vertices, halfspaces, tol)


def flat_apex_tetrahedron(h, tol=DEFAULT_TOL):
    """Unit equilateral triangle plus an apex at height h over its centroid.

    As h -> 0 the apex angle tends to a half-sphere and the projection
    probability of the tetrahedron tends to 1.
    """
    if h <= 0:
        raise ValueError("apex height must be positive, got %r" % (h,))
    r = 1.0 / math.sqrt(3.0)  # circumradius of a unit-side equilateral triangle
    base = [
        [r, 0.0, 0.0],
        [-r / 2.0, 0.5, 0.0],
        [-r / 2.0, -0.5, 0.0],
    ]
    return build_simplex(np.array(base + [[0.0, 0.0, float(h)]]), tol)


def skew_segment_tetrahedron(d, tol=DEFAULT_TOL):
    """Convex hull of two skew unit segments whose centers are d apart.

    One segment runs along x at height d/2, the other along y at height
    -d/2.  As d -> 0 the hull flattens toward a square and the projection
    probability tends to 0.
    """
    if d <= 0:
        raise ValueError("center distance must be positive, got %r" % (d,))
    z = float(d) / 2.0
    vertices = np.array(
        [
            [0.5, 0.0, z],
            [-0.5, 0.0, z],
            [0.0, 0.5, -z],
            [0.0, -0.5, -z],
        ]
    )
    return build_simplex(vertices, tol)


def random_simplex(n, seed_or_rng, tol=DEFAULT_TOL, min_relative_volume=1e-6):
    """Seeded random n-simplex with standard normal vertices.

    Draws are rejected while the simplex volume, relative to the product of
    its edge lengths from the first vertex, falls below
    `min_relative_volume`; this keeps the corpus clear of near-degenerate
    lattices without biasing generic shape statistics.
    """
    rng = _as_rng(seed_or_rng)
    while True:
        v = rng.standard_normal((n + 1, n))
        edges = v[1:] - v[0]
        lengths = np.linalg.norm(edges, axis=1)
        if lengths.min() <= tol:
            continue
        if abs(np.linalg.det(edges)) / lengths.prod() >= min_relative_volume:
            return build_simplex(v, tol)


def regular_polygon(k, tol=DEFAULT_TOL):
    """Regular k-gon inscribed in the unit circle, first vertex at angle 0."""
    if k < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    angles = 2.0 * math.pi * np.arange(k) / k
    vertices = np.column_stack([np.cos(angles), np.sin(angles)])
    return polygon_from_ccw_vertices(vertices, tol)


def random_polygon(seed_or_rng, k=None, tol=DEFAULT_TOL):
    """Seeded random convex k-gon: random points on a random ellipse.

    Points on an ellipse are automatically in convex position, so every
    input point is a vertex.  Angular gaps below 1e-3 are resampled to keep
    the incidence tests well conditioned.
    """
    rng = _as_rng(seed_or_rng)
    if k is None:
        k = int(rng.integers(3, 9))
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, k))
        gaps = np.diff(np.concatenate([angles, [angles[0] + 2.0 * math.pi]]))
        if gaps.min() > 1e-3:
            break
    circle = np.column_stack([np.cos(angles), np.sin(angles)])
    while True:
        a = rng.standard_normal((2, 2))
        if abs(np.linalg.det(a)) > 0.3:
            break
    vertices = circle @ a.T + rng.standard_normal(2)
    if np.linalg.det(a) < 0:
        vertices = vertices[::-1]
    return polygon_from_ccw_vertices(vertices, tol)


def polygon_from_ccw_vertices(vertices, tol=DEFAULT_TOL):
    """Polygon from counterclockwise-ordered convex-position vertices."""
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise ValueError("polygon vertices must be points in the plane")
    center = v.mean(axis=0)
    halfspaces = []
    for i in range(v.shape[0]):
        a, b = v[i], v[(i + 1) % v.shape[0]]
        t = b - a
        normal = np.array([t[1], -t[0]])  # right of the edge direction
        offset = float(normal @ a)
        if normal @ center > offset:
            normal, offset = -normal, -offset
        halfspaces.append(HalfSpace(normal, offset))
    return build_polytope(v, halfspaces, tol)
