"""Convex polytope representations: vertices, halfspaces, face lattice.

Polytopes are stored jointly in V-representation (vertex coordinates) and
H-representation (facet halfspaces), together with the full face lattice.
The lattice is always rebuilt from vertex/facet incidences, never trusted
from input files, so the structural invariants stay checkable.  All
geometry is plain float64 numpy; a single absolute tolerance (default
1e-9) governs activity and incidence tests.  Supported ambient dimensions
are 2 through 8.
"""

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

# Global defaults: geometric activity/incidence tolerance, and the much
# tighter tolerance used only to decide whether a direction is a unit vector.
DEFAULT_TOL = 1e-9
UNIT_NORM_TOL = 1e-12

MIN_DIM = 2
MAX_DIM = 8


class DegeneracyError(ValueError):
    """Input is geometrically degenerate (affinely dependent, hollow, ...)."""


class ConsistencyError(ValueError):
    """V- and H-representations do not describe the same polytope."""


def unit_ball_volume(n):
    """Volume of the unit ball in R^n: pi^(n/2) / Gamma(1 + n/2)."""
    if n < 1:
        raise ValueError("dimension must be a positive integer, got %r" % (n,))
    return math.pi ** (n / 2.0) / math.gamma(1.0 + n / 2.0)


def sphere_area(n):
    """Surface area of the unit sphere S^(n-1) in R^n, i.e. n * omega_n."""
    return n * unit_ball_volume(n)


def as_vector(x, dim=None):
    """Coerce to a 1-d float64 array, optionally checking its length."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError("expected a 1-d coordinate vector, got shape %s" % (v.shape,))
    if dim is not None and v.shape[0] != dim:
        raise ValueError("expected a vector of dimension %d, got %d" % (dim, v.shape[0]))
    return v


def require_unit(u, dim=None):
    """Validate that u is a unit vector (norm within 1e-12 of 1)."""
    u = as_vector(u, dim)
    if abs(np.linalg.norm(u) - 1.0) > UNIT_NORM_TOL:
        raise ValueError("direction must be a unit vector, |u| = %.17g" % np.linalg.norm(u))
    return u


def sample_unit_sphere(rng, n):
    """Draw one point uniformly from the unit sphere S^(n-1).

    Implemented by normalizing a vector of n independent standard normal
    deviates, which is rotation invariant and hence uniform on the sphere.
    """
    if n < 2:
        raise ValueError("sphere sampling needs dimension >= 2, got %r" % (n,))
    while True:
        x = rng.standard_normal(n)
        r = np.linalg.norm(x)
        if r > 1e-12:
            return x / r


def sample_unit_sphere_batch(rng, n, count):
    """Draw `count` uniform sphere points at once; returns a (count, n) array."""
    if n < 2:
        raise ValueError("sphere sampling needs dimension >= 2, got %r" % (n,))
    x = rng.standard_normal((count, n))
    r = np.linalg.norm(x, axis=1)
    bad = r <= 1e-12
    while bad.any():  # astronomically rare; keeps the batch well defined
        x[bad] = rng.standard_normal((int(bad.sum()), n))
        r[bad] = np.linalg.norm(x[bad], axis=1)
        bad = r <= 1e-12
    return x / r[:, None]


def complete_basis(u):
    """Orthonormal basis of the hyperplane orthogonal to the unit vector u.

    Deterministic completion: drop the standard basis vector where |u| is
    largest, then Gram-Schmidt the remaining ones against u in index order.
    Returns an (n, n-1) matrix with orthonormal columns spanning u-perp.
    """
    u = require_unit(u)
    n = u.shape[0]
    pivot = int(np.argmax(np.abs(u)))
    cols = [u]
    for j in range(n):
        if j == pivot:
            continue
        e = np.zeros(n)
        e[j] = 1.0
        for c in cols:
            e -= (e @ c) * c
        e /= np.linalg.norm(e)
        cols.append(e)
    return np.column_stack(cols[1:])


def random_rotation(rng, n):
    """Haar-random rotation matrix in SO(n), from the QR of a Gaussian matrix."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def affine_rank(points, tol=DEFAULT_TOL):
    """Dimension of the affine hull of a set of points (rows)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[0] <= 1:
        return 0
    edges = pts[1:] - pts[0]
    s = np.linalg.svd(edges, compute_uv=False)
    return int(np.sum(s > tol))


@dataclass(frozen=True, eq=False)
class HalfSpace:
    """Closed halfspace {x : normal . x <= offset} with unit outward normal."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        normal = as_vector(self.normal)
        norm = np.linalg.norm(normal)
        if norm <= DEFAULT_TOL:
            raise DegeneracyError("halfspace normal must have positive norm")
        normal = normal / norm
        normal.flags.writeable = False
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(self.offset) / norm)

    @property
    def dim(self):
        return self.normal.shape[0]

    def slack(self, x):
        """Signed distance to the boundary hyperplane; >= 0 inside."""
        return self.offset - float(self.normal @ x)

    def contains(self, x, tol=DEFAULT_TOL):
        return self.slack(x) >= -tol

    def is_active_at(self, x, tol=DEFAULT_TOL):
        return abs(self.slack(x)) <= tol


@dataclass(frozen=True, eq=False)
class Face:
    """A k-face, stored as its (sorted) vertex indices plus the centroid."""

    dim: int
    vertex_ids: tuple
    centroid: np.ndarray

    def __post_init__(self):
        ids = tuple(sorted(int(i) for i in self.vertex_ids))
        centroid = as_vector(self.centroid)
        centroid.flags.writeable = False
        object.__setattr__(self, "vertex_ids", ids)
        object.__setattr__(self, "centroid", centroid)

    def __repr__(self):
        return "Face(dim=%d, vertex_ids=%s)" % (self.dim, list(self.vertex_ids))


@dataclass(frozen=True, eq=False)
class ConvexPolytope:
    """Full-dimensional convex polytope with joint V/H data and face lattice.

    Instances are immutable after construction and safe to share across
    parallel workers.  Build through :func:`build_simplex` or
    :func:`build_polytope`, which validate the representations and derive
    the lattice; the constructor itself performs no checking.
    """

    dim: int
    vertices: np.ndarray
    halfspaces: tuple
    faces_by_dim: tuple
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        object.__setattr__(self, "faces_by_dim", tuple(tuple(fs) for fs in self.faces_by_dim))

    @property
    def n_vertices(self):
        return self.vertices.shape[0]

    @property
    def f_vector(self):
        """(f_0, ..., f_{n-1}): number of k-faces for each proper dimension."""
        return tuple(len(fs) for fs in self.faces_by_dim)

    def faces(self, k):
        """All k-dimensional proper faces, sorted by vertex indices."""
        if not 0 <= k < self.dim:
            raise ValueError("face dimension must satisfy 0 <= k <= %d, got %r" % (self.dim - 1, k))
        return self.faces_by_dim[k]

    def proper_faces(self):
        """Iterate over all proper faces, by increasing dimension."""
        for fs in self.faces_by_dim:
            yield from fs

    def vertex_face(self, i):
        """The 0-face corresponding to vertex index i."""
        for f in self.faces_by_dim[0]:
            if f.vertex_ids == (i,):
                return f
        raise ValueError("no vertex with index %r" % (i,))

    def has_face(self, face):
        """True iff `face` matches a lattice entry by ids and centroid."""
        if not 0 <= face.dim < self.dim:
            return False
        if face.centroid.shape[0] != self.dim:
            return False
        return any(
            f.vertex_ids == face.vertex_ids
            and np.linalg.norm(f.centroid - face.centroid) <= self.tol
            for f in self.faces_by_dim[face.dim]
        )

    def contains(self, x, tol=None):
        """Membership test against the H-representation."""
        tol = self.tol if tol is None else tol
        x = as_vector(x, self.dim)
        return all(h.contains(x, tol) for h in self.halfspaces)

    def active_halfspace_indices(self, x, tol=None):
        """Indices of halfspaces whose boundary hyperplane passes through x."""
        tol = self.tol if tol is None else tol
        x = as_vector(x, self.dim)
        return [j for j, h in enumerate(self.halfspaces) if h.is_active_at(x, tol)]

    def halfspace_matrix(self):
        """(normals, offsets) as arrays of shape (m, n) and (m,)."""
        normals = np.array([h.normal for h in self.halfspaces])
        offsets = np.array([h.offset for h in self.halfspaces])
        return normals, offsets


def _check_dim(n):
    if not MIN_DIM <= n <= MAX_DIM:
        raise ValueError("ambient dimension %r outside supported range [%d, %d]" % (n, MIN_DIM, MAX_DIM))


def _check_distinct_vertices(vertices, tol):
    m = vertices.shape[0]
    for i in range(m):
        for j in range(i + 1, m):
            if np.linalg.norm(vertices[i] - vertices[j]) <= tol:
                raise ConsistencyError("vertices %d and %d coincide within tolerance" % (i, j))


def _facet_hyperplane(points, inner_point, tol):
    """Unit outward normal and offset of the hyperplane through `points`.

    `points` must affinely span a hyperplane; `inner_point` fixes the
    outward orientation (it gets strictly positive slack).
    """
    pts = np.asarray(points, dtype=float)
    edges = pts[1:] - pts[0]
    _, s, vt = np.linalg.svd(edges)
    if s.size != pts.shape[1] - 1 or s[-1] <= tol * max(1.0, s[0]):
        raise DegeneracyError("facet points do not affinely span a hyperplane")
    normal = vt[-1]
    offset = float(np.mean(pts @ normal))
    if normal @ inner_point > offset:
        normal, offset = -normal, -offset
    if abs(normal @ inner_point - offset) <= tol:
        raise DegeneracyError("facet hyperplane passes through the interior point")
    return HalfSpace(normal, offset)


def build_simplex(vertices, tol=DEFAULT_TOL):
    """Build the n-simplex spanned by n+1 affinely independent points.

    The face lattice consists of all nonempty proper subsets of the
    vertices; the n+1 facet halfspaces are derived from the leave-one-out
    hyperplanes with outward orientation.

    Raises DegeneracyError when the points are affinely dependent.
    """
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2:
        raise ValueError("vertices must be a 2-d array of coordinates")
    m, n = v.shape
    _check_dim(n)
    if m != n + 1:
        raise ValueError("an n-simplex needs n+1 vertices; got %d points in dimension %d" % (m, n))
    edges = v[1:] - v[0]
    if abs(np.linalg.det(edges)) <= tol:
        raise DegeneracyError("simplex vertices are affinely dependent (volume below tolerance)")

    halfspaces = []
    for j in range(m):
        others = np.delete(v, j, axis=0)
        halfspaces.append(_facet_hyperplane(others, v[j], tol))

    faces_by_dim = []
    index = range(m)
    for k in range(n):
        faces_k = []
        for ids in itertools.combinations(index, k + 1):
            faces_k.append(Face(k, ids, v[list(ids)].mean(axis=0)))
        faces_by_dim.append(tuple(faces_k))
    return ConvexPolytope(n, v, tuple(halfspaces), tuple(faces_by_dim), tol)


def _face_lattice_from_incidence(active_sets):
    """Close the facet vertex-sets under intersection.

    Every proper face of a polytope is the intersection of the facets
    containing it, and the vertex set of an intersection of faces is the
    intersection of their vertex sets; so the closure enumerates exactly
    the nonempty proper faces.
    """
    generators = [frozenset(s) for s in active_sets]
    closure = set(generators)
    frontier = set(generators)
    while frontier:
        new = set()
        for a in frontier:
            for g in generators:
                c = a & g
                if c and c not in closure and c not in new:
                    new.add(c)
        closure |= new
        frontier = new
    return closure


def build_polytope(vertices, halfspaces, tol=DEFAULT_TOL):
    """Build a full-dimensional polytope from consistent V- and H-data.

    Consistency demands: every vertex satisfies every halfspace; every
    vertex is active on at least n halfspaces (pointedness); every
    halfspace is supported by active vertices spanning a hyperplane.  The
    face lattice is computed by closing vertex-facet incidences under
    intersection, with face dimensions from affine rank.

    Raises ConsistencyError for mismatched V/H input and DegeneracyError
    for hollow (lower-dimensional) input.
    """
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2:
        raise ValueError("vertices must be a 2-d array of coordinates")
    m, n = v.shape
    _check_dim(n)
    hs = [h if isinstance(h, HalfSpace) else HalfSpace(*h) for h in halfspaces]
    if any(h.dim != n for h in hs):
        raise ValueError("halfspace dimension does not match vertex dimension")
    if m < n + 1:
        raise DegeneracyError("a full-dimensional polytope in R^%d needs at least %d vertices" % (n, n + 1))
    if affine_rank(v, tol) < n:
        raise DegeneracyError("vertices span a lower-dimensional (hollow) polytope")
    _check_distinct_vertices(v, tol)
    for a, b in itertools.combinations(range(len(hs)), 2):
        if np.linalg.norm(hs[a].normal - hs[b].normal) <= tol and abs(hs[a].offset - hs[b].offset) <= tol:
            raise ConsistencyError("halfspaces %d and %d coincide" % (a, b))

    normals = np.array([h.normal for h in hs])
    offsets = np.array([h.offset for h in hs])
    slack = offsets[None, :] - v @ normals.T  # (m, n_halfspaces)
    if slack.min() < -tol:
        i, j = np.unravel_index(np.argmin(slack), slack.shape)
        raise ConsistencyError("vertex %d violates halfspace %d by %.3g" % (i, j, -slack[i, j]))
    active = np.abs(slack) <= tol

    counts = active.sum(axis=1)
    if counts.min() < n:
        i = int(np.argmin(counts))
        raise ConsistencyError(
            "vertex %d is active on only %d halfspaces (needs >= %d); H-representation incomplete?"
            % (i, counts[i], n)
        )
    active_sets = []
    for j in range(len(hs)):
        ids = np.flatnonzero(active[:, j])
        if ids.size == 0 or affine_rank(v[ids], tol) != n - 1:
            raise ConsistencyError("halfspace %d is not supported by a facet of the vertex set" % j)
        active_sets.append(ids)

    closure = _face_lattice_from_incidence(active_sets)
    for i in range(m):
        if frozenset((i,)) not in closure:
            raise ConsistencyError("point %d is not a vertex of the described polytope" % i)

    faces_by_dim = [[] for _ in range(n)]
    for ids in closure:
        ids_list = sorted(ids)
        k = affine_rank(v[ids_list], tol)
        if k >= n:
            raise ConsistencyError("face lattice contains a full-dimensional face; input is inconsistent")
        faces_by_dim[k].append(Face(k, ids_list, v[ids_list].mean(axis=0)))
    for k in range(n):
        faces_by_dim[k].sort(key=lambda f: f.vertex_ids)
    return ConvexPolytope(n, v, tuple(hs), tuple(tuple(fs) for fs in faces_by_dim), tol)


def transformed(p, rotation=None, translation=None, scale=1.0):
    """Image of a polytope under x -> scale * rotation @ x + translation.

    Rebuilds (and thus re-validates) the lattice from the mapped V- and
    H-representations.
    """
    n = p.dim
    r = np.eye(n) if rotation is None else np.asarray(rotation, dtype=float)
    t = np.zeros(n) if translation is None else as_vector(translation, n)
    if scale <= 0:
        raise ValueError("scale must be positive")
    v = scale * p.vertices @ r.T + t
    hs = []
    for h in p.halfspaces:
        normal = r @ h.normal
        hs.append(HalfSpace(normal, scale * h.offset + normal @ t))
    return build_polytope(v, hs, p.tol)


# ---------------------------------------------------------------------------
# Polytope file format: {"dim": n, "vertices": [[...], ...],
#                        "halfspaces": [{"normal": [...], "offset": r}, ...]}
# "halfspaces" may be omitted only for simplex input (dim+1 vertices).

def polytope_to_dict(p):
    return {
        "dim": p.dim,
        "vertices": [[float(x) for x in row] for row in p.vertices],
        "halfspaces": [
            {"normal": [float(x) for x in h.normal], "offset": float(h.offset)}
            for h in p.halfspaces
        ],
    }


def polytope_from_dict(data, tol=DEFAULT_TOL):
    if not isinstance(data, dict):
        raise ValueError("polytope file must contain a JSON object at top level")
    for key in ("dim", "vertices"):
        if key not in data:
            raise ValueError("polytope file is missing the %r field" % key)
    n = data["dim"]
    if not isinstance(n, int):
        raise ValueError("'dim' must be an integer")
    vertices = np.asarray(data["vertices"], dtype=float)
    if vertices.ndim != 2 or vertices.shape[1] != n:
        raise ValueError("'vertices' must be an array of length-%d coordinate arrays" % n)
    if "halfspaces" in data and data["halfspaces"] is not None:
        hs = [HalfSpace(as_vector(h["normal"], n), float(h["offset"])) for h in data["halfspaces"]]
        return build_polytope(vertices, hs, tol)
    if vertices.shape[0] == n + 1:
        return build_simplex(vertices, tol)
    raise ValueError(
        "no 'halfspaces' given and %d vertices != dim+1 = %d: general hull "
        "computation is unsupported" % (vertices.shape[0], n + 1)
    )


def parse_polytope(text, tol=DEFAULT_TOL):
    """Parse the JSON polytope format; JSONDecodeError carries line info."""
    return polytope_from_dict(json.loads(text), tol)


def serialize_polytope(p):
    """Round-trippable JSON text (floats via repr, exact under re-parsing)."""
    return json.dumps(polytope_to_dict(p), indent=1)


def load_polytope(path, tol=DEFAULT_TOL):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_polytope(fh.read(), tol)


def save_polytope(p, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_polytope(p))
        fh.write("\n")
