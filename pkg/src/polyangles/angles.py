"""Solid inner angle measures at proper faces of a convex polytope.

The solid angle at a face is the spherical measure of its tangent cone,
i.e. of the directions one can move from the face centroid without leaving
the polytope.  Vertices and edges in dimensions 2 and 3 have closed-form
values; facet centroids see exactly a half-space in any dimension; every
other case is estimated by Monte Carlo sampling of the sphere.  The
normalized measure (raw divided by the sphere area n*omega_n) is the
quantity that turns into a projection probability.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    require_unit,
    sample_unit_sphere_batch,
    sphere_area,
    complete_basis,
)

EXACT_2D = "exact-2d"
EXACT_3D_VERTEX = "exact-3d-vertex"
EXACT_3D_EDGE = "exact-3d-edge"
EXACT_FACET = "exact-facet"
MONTE_CARLO = "monte-carlo"

_MC_CHUNK = 1 << 17


@dataclass(frozen=True)
class SolidAngleMeasure:
    """Raw spherical measure, its normalized fraction, and the MC error.

    `raw` lives in [0, n*omega_n]; `normalized` is raw divided by the full
    sphere area; `stderr` is zero for exact methods.
    """

    raw: float
    normalized: float
    stderr: float
    method: str


def _measure(raw, n, stderr=0.0, method=MONTE_CARLO):
    area = sphere_area(n)
    raw = float(raw)
    if raw < -1e-9 or raw > area + 1e-9:
        raise ValueError("solid angle %.17g outside [0, %.17g]" % (raw, area))
    raw = min(max(raw, 0.0), area)
    return SolidAngleMeasure(raw, raw / area, float(stderr), method)


def _require_face(p, face):
    if not p.has_face(face):
        raise ValueError("face %r is not a proper face of the polytope" % (face,))


def tangent_cone_normals(p, face):
    """Outward normals of the halfspaces active at the face centroid.

    These cut out the tangent cone: a direction u stays in the polytope to
    first order iff normal . u <= 0 for every active halfspace.
    """
    _require_face(p, face)
    idx = p.active_halfspace_indices(face.centroid)
    if len(idx) < p.dim - face.dim:
        raise ValueError(
            "face of dimension %d is active on only %d halfspaces; lattice is inconsistent"
            % (face.dim, len(idx))
        )
    return np.array([p.halfspaces[j].normal for j in idx])


def tangent_cone_contains(p, face, u, tol=None):
    """Closed tangent-cone membership test for a unit direction u.

    True iff normal . u <= tol for every halfspace active at the face
    centroid.  The boundary of the cone has measure zero, so the closed
    convention (and the tolerance slack) leaves all probabilities intact.
    """
    tol = p.tol if tol is None else tol
    u = require_unit(u, p.dim)
    normals = tangent_cone_normals(p, face)
    return bool(np.all(normals @ u <= tol))


def solid_angle_exact_2d(p, vertex_face):
    """Interior angle of a polygon at a vertex, from the two incident edges."""
    if p.dim != 2:
        raise ValueError("exact 2-d angles require a polygon, got dimension %d" % p.dim)
    _require_face(p, vertex_face)
    if vertex_face.dim != 0:
        raise ValueError("expected a vertex (0-face), got dimension %d" % vertex_face.dim)
    (vid,) = vertex_face.vertex_ids
    directions = _edge_directions_at_vertex(p, vid)
    if len(directions) != 2:
        raise ValueError("polygon vertex %d has %d incident edges" % (vid, len(directions)))
    d1, d2 = directions
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    angle = math.atan2(abs(cross), float(d1 @ d2))
    return _measure(angle, 2, method=EXACT_2D)


def _edge_directions_at_vertex(p, vid):
    dirs = []
    for edge in p.faces(1):
        if vid in edge.vertex_ids:
            other = edge.vertex_ids[0] if edge.vertex_ids[1] == vid else edge.vertex_ids[1]
            d = p.vertices[other] - p.vertices[vid]
            dirs.append(d / np.linalg.norm(d))
    return dirs


def spherical_triangle_area(a, b, c):
    """Solid angle of the spherical triangle with unit-vector corners a, b, c.

    Uses the two-argument arctangent of the scalar triple product against
    1 + the pairwise dot products (Van Oosterom-Strackee), which is stable
    for small and near-degenerate triangles.
    """
    numerator = float(np.dot(a, np.cross(b, c)))
    denominator = 1.0 + float(a @ b) + float(b @ c) + float(a @ c)
    return abs(2.0 * math.atan2(numerator, denominator))


def solid_angle_exact_3d_vertex(p, vertex_face):
    """Solid angle at a polyhedron vertex, by spherical fan triangulation.

    The unit edge directions at the vertex are ordered cyclically (sort by
    angle in the plane orthogonal to their mean) and the resulting convex
    spherical polygon is fanned into triangles.
    """
    if p.dim != 3:
        raise ValueError("exact 3-d vertex angles require dimension 3, got %d" % p.dim)
    _require_face(p, vertex_face)
    if vertex_face.dim != 0:
        raise ValueError("expected a vertex (0-face), got dimension %d" % vertex_face.dim)
    (vid,) = vertex_face.vertex_ids
    dirs = _edge_directions_at_vertex(p, vid)
    if len(dirs) < 3:
        raise ValueError("vertex %d has %d incident edges; lattice is malformed" % (vid, len(dirs)))
    dirs = np.array(dirs)
    mean = dirs.mean(axis=0)
    norm = np.linalg.norm(mean)
    if norm <= p.tol:
        raise ValueError("edge directions at vertex %d have no interior mean direction" % vid)
    basis = complete_basis(mean / norm)
    planar = dirs @ basis
    order = np.lexsort((np.arange(len(dirs)), np.arctan2(planar[:, 1], planar[:, 0])))
    dirs = dirs[order]
    total = 0.0
    for i in range(1, len(dirs) - 1):
        total += spherical_triangle_area(dirs[0], dirs[i], dirs[i + 1])
    return _measure(total, 3, method=EXACT_3D_VERTEX)


def solid_angle_exact_3d_edge(p, edge_face):
    """Solid angle at an edge midpoint: a lune of the interior dihedral angle.

    A spherical lune of dihedral angle theta has area 2*theta; theta is
    pi minus the angle between the outward normals of the two facets
    meeting at the edge.
    """
    if p.dim != 3:
        raise ValueError("exact 3-d edge angles require dimension 3, got %d" % p.dim)
    _require_face(p, edge_face)
    if edge_face.dim != 1:
        raise ValueError("expected an edge (1-face), got dimension %d" % edge_face.dim)
    idx = p.active_halfspace_indices(edge_face.centroid)
    if len(idx) != 2:
        raise ValueError("edge is contained in %d facets, expected exactly 2" % len(idx))
    n1 = p.halfspaces[idx[0]].normal
    n2 = p.halfspaces[idx[1]].normal
    between = math.atan2(np.linalg.norm(np.cross(n1, n2)), float(n1 @ n2))
    dihedral = math.pi - between
    return _measure(2.0 * dihedral, 3, method=EXACT_3D_EDGE)


def solid_angle_facet(p, facet_face):
    """Solid angle at a facet centroid: exactly a closed half-space."""
    _require_face(p, facet_face)
    if facet_face.dim != p.dim - 1:
        raise ValueError("expected a facet, got dimension %d" % facet_face.dim)
    return _measure(sphere_area(p.dim) / 2.0, p.dim, method=EXACT_FACET)


def _hit_count(normals, directions, tol):
    return int(np.count_nonzero((directions @ normals.T <= tol).all(axis=1)))


def _mc_worker(normals, n, count, seed_seq, tol):
    rng = np.random.default_rng(seed_seq)
    hits = 0
    remaining = count
    while remaining > 0:
        block = min(_MC_CHUNK, remaining)
        u = sample_unit_sphere_batch(rng, n, block)
        hits += _hit_count(normals, u, tol)
        remaining -= block
    return hits


def solid_angle_mc(p, face, samples, seed, workers=1, tol=None):
    """Monte Carlo solid angle: sphere-uniform directions against the cone.

    raw = n*omega_n * hits/samples, with the binomial normal-approximation
    standard error.  Deterministic for fixed (seed, samples, workers): each
    worker owns an independent substream spawned from the seed, and worker
    hit counts merge by addition.
    """
    if samples < 1:
        raise ValueError("sample count must be >= 1, got %r" % (samples,))
    if workers < 1:
        raise ValueError("worker count must be >= 1, got %r" % (workers,))
    tol = p.tol if tol is None else tol
    normals = tangent_cone_normals(p, face)
    n = p.dim
    streams = np.random.SeedSequence(seed).spawn(workers)
    base, extra = divmod(samples, workers)
    counts = [base + (1 if w < extra else 0) for w in range(workers)]
    if workers == 1:
        hits = _mc_worker(normals, n, counts[0], streams[0], tol)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_mc_worker, normals, n, c, s, tol)
                for c, s in zip(counts, streams)
            ]
            hits = sum(f.result() for f in futures)
    area = sphere_area(n)
    p_hat = hits / samples
    stderr = area * math.sqrt(p_hat * (1.0 - p_hat) / samples)
    return _measure(area * p_hat, n, stderr=stderr, method=MONTE_CARLO)


def solid_angle(p, face, method="auto", samples=10 ** 6, seed=0, workers=1):
    """Solid angle at any proper face, dispatching on dimension and method.

    method "auto" resolves to the exact paths for facets (any dimension)
    and for vertices/edges in dimensions 2 and 3, and to Monte Carlo
    otherwise; "exact" forces a closed form (raising where none exists);
    "mc" forces sampling.
    """
    if method not in ("auto", "exact", "mc"):
        raise ValueError("unknown method %r" % (method,))
    if method == "mc":
        return solid_angle_mc(p, face, samples, seed, workers)
    exact = _exact_solid_angle(p, face)
    if exact is not None:
        return exact
    if method == "exact":
        raise ValueError(
            "no exact method for a %d-face in dimension %d" % (face.dim, p.dim)
        )
    return solid_angle_mc(p, face, samples, seed, workers)


def _exact_solid_angle(p, face):
    if face.dim == p.dim - 1:
        return solid_angle_facet(p, face)
    if p.dim == 2 and face.dim == 0:
        return solid_angle_exact_2d(p, face)
    if p.dim == 3 and face.dim == 0:
        return solid_angle_exact_3d_vertex(p, face)
    if p.dim == 3 and face.dim == 1:
        return solid_angle_exact_3d_edge(p, face)
    return None


def vertex_event_probability(p, vertex_face, method="auto", samples=10 ** 6, seed=0, workers=1):
    """Probability that a vertex's image falls inside the shadow polytope.

    Under a uniformly random projection direction u, the image of a vertex
    v lands in the relative interior of the projection exactly when u lies
    in the tangent cone at v or its antipode; hence the probability is
    twice the normalized solid angle.
    """
    if vertex_face.dim != 0:
        raise ValueError("expected a vertex (0-face), got dimension %d" % vertex_face.dim)
    m = solid_angle(p, vertex_face, method=method, samples=samples, seed=seed, workers=workers)
    return 2.0 * m.normalized
