"""Random-direction projection experiments on convex polytopes.

Projecting a polytope along a direction u squashes it onto the hyperplane
u-perp.  This module classifies simplex shadows (does the projection of an
n-simplex stay an (n-1)-simplex?), tests whether individual faces survive
as faces of the shadow, and estimates projection statistics over sampled
directions so they can be compared with angle-based predictions.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import angles
from .geometry import (
    complete_basis,
    require_unit,
    sample_unit_sphere_batch,
    sphere_area,
)

LOWER_SIMPLEX = "lower-simplex"
NOT_SIMPLEX = "not-simplex"
DEGENERATE = "degenerate"

# integer codes for array-valued classification (classify_many)
LOWER_SIMPLEX_CODE = 0
NOT_SIMPLEX_CODE = 1
DEGENERATE_CODE = 2
CLASS_LABELS = (LOWER_SIMPLEX, NOT_SIMPLEX, DEGENERATE)

_CHUNK = 1 << 15


@dataclass(frozen=True, eq=False)
class ProjectionOutcome:
    """Classification of one projection direction.

    `simplex_class` is one of the three labels above; `interior_vertex`
    names the unique vertex whose image falls inside the shadow when the
    class is "lower-simplex" and is None otherwise.  `surviving_faces`
    optionally holds one bitmask per face dimension (bit i set iff the
    i-th k-face survives as a face of the shadow).
    """

    direction: np.ndarray
    simplex_class: str
    interior_vertex: object = None
    surviving_faces: object = None


@dataclass(frozen=True)
class ExperimentReport:
    """Outcome of a sampled projection experiment.

    `estimate` carries the Monte Carlo value with `stderr`; `prediction`
    (when filled) is the angle-based closed form with its own error bar,
    and `residual` their absolute gap.  `degenerate` counts the samples
    thrown out of both numerator and denominator.
    """

    seed: int
    samples: int
    estimate: float
    stderr: float
    prediction: object = None
    prediction_stderr: float = 0.0
    residual: object = None
    degenerate: int = 0
    runtime: float = 0.0


def require_simplex(p):
    # a full-dimensional simplex has exactly dim+1 vertices
    if p.n_vertices != p.dim + 1:
        raise ValueError(
            "expected an %d-simplex (%d vertices), got %d vertices"
            % (p.dim, p.dim + 1, p.n_vertices)
        )


def project(p, u):
    """Images of the polytope's vertices in an orthonormal basis of u-perp.

    The basis comes from `complete_basis`, which is deterministic in u, so
    repeated runs see identical coordinates.
    """
    u = require_unit(u, p.dim)
    return p.vertices @ complete_basis(u)


def classify_simplex_projection(p, u, tol=None, survival=False):
    """Classify the shadow of an n-simplex along direction u.

    Projects the n+1 vertices to u-perp, then solves, for each vertex, the
    unique affine combination of the other n images equal to it.  All
    coefficients positive beyond tolerance means that vertex landed inside
    the shadow, which is then an (n-1)-simplex on the remaining vertices.
    Any coefficient inside the tolerance band means the direction is too
    close to a measure-zero degeneracy to call.
    """
    require_simplex(p)
    tol = p.tol if tol is None else tol
    u = require_unit(u, p.dim)
    w = project(p, u)
    m = p.n_vertices
    mins = np.empty(m)
    for i in range(m):
        others = np.delete(w, i, axis=0)
        a = np.vstack([others.T, np.ones((1, m - 1))])
        rhs = np.append(w[i], 1.0)
        try:
            lam = np.linalg.solve(a, rhs)
        except np.linalg.LinAlgError:
            mins[i] = 0.0
            continue
        mins[i] = lam.min()
    masks = _survival_masks(p, u[None, :], tol) if survival else None
    label, interior = _label_from_mins(mins, tol)
    return ProjectionOutcome(
        direction=u,
        simplex_class=label,
        interior_vertex=interior,
        surviving_faces=tuple(int(b[0]) for b in masks) if survival else None,
    )


def _label_from_mins(mins, tol):
    if np.any(np.abs(mins) <= tol):
        return DEGENERATE, None
    interior = np.flatnonzero(mins > tol)
    # Radon: at most one vertex image can sit inside the hull of the rest
    assert len(interior) <= 1, "multiple interior vertices: %s" % (interior,)
    if len(interior) == 1:
        return LOWER_SIMPLEX, int(interior[0])
    return NOT_SIMPLEX, None


def classify_many(p, directions, tol=None):
    """Vectorized simplex-shadow classification over many directions.

    Returns (codes, interior): int arrays of length len(directions), with
    codes in {LOWER_SIMPLEX_CODE, NOT_SIMPLEX_CODE, DEGENERATE_CODE} and
    interior the index of the swallowed vertex or -1.

    Instead of projecting, this solves the equivalent augmented system
    sum_j lam_j v_j - t u = v_i, sum_j lam_j = 1 directly in R^n; the
    lam agree with the projected barycentric solve because applying the
    u-perp basis annihilates the t u term.
    """
    require_simplex(p)
    tol = p.tol if tol is None else tol
    directions = np.asarray(directions, dtype=float)
    if directions.ndim != 2 or directions.shape[1] != p.dim:
        raise ValueError("directions must have shape (count, %d)" % p.dim)
    b = directions.shape[0]
    m = p.n_vertices
    v = p.vertices
    minmat = np.empty((b, m))
    for i in range(m):
        base = np.zeros((m, m))
        base[: m - 1, : m - 1] = np.delete(v, i, axis=0).T
        base[m - 1, : m - 1] = 1.0
        mats = np.broadcast_to(base, (b, m, m)).copy()
        mats[:, : m - 1, m - 1] = -directions
        rhs = np.append(v[i], 1.0).reshape(1, m, 1)
        rhs = np.broadcast_to(rhs, (b, m, 1))
        try:
            sol = np.linalg.solve(mats, rhs)
            minmat[:, i] = sol[:, : m - 1, 0].min(axis=1)
        except np.linalg.LinAlgError:
            # some direction hit a singular system; redo this vertex sample
            # by sample so only the offending rows turn degenerate
            for s in range(b):
                try:
                    sol = np.linalg.solve(mats[s], rhs[s])
                    minmat[s, i] = sol[: m - 1, 0].min()
                except np.linalg.LinAlgError:
                    minmat[s, i] = 0.0
    band = (np.abs(minmat) <= tol).any(axis=1)
    interior_mask = minmat > tol
    n_interior = interior_mask.sum(axis=1)
    assert np.all(n_interior[~band] <= 1), "multiple interior vertices in a batch"
    codes = np.full(b, NOT_SIMPLEX_CODE, dtype=np.int8)
    codes[n_interior >= 1] = LOWER_SIMPLEX_CODE
    codes[band] = DEGENERATE_CODE
    interior = np.where(
        (codes == LOWER_SIMPLEX_CODE), interior_mask.argmax(axis=1), -1
    ).astype(np.int64)
    return codes, interior


def face_survives(p, face, u, tol=None):
    """Does the image of a face stay a proper face of the shadow?

    The face survives iff the line {centroid + t u} never meets the
    interior of P.  Interior membership is a strict inequality per
    halfspace, so the test intersects per-halfspace intervals on t and
    asks for positive width.
    """
    tol = p.tol if tol is None else tol
    if not p.has_face(face):
        raise ValueError("face %r is not a proper face of the polytope" % (face,))
    u = require_unit(u, p.dim)
    normals, offsets = p.halfspace_matrix()
    slack = offsets - normals @ face.centroid
    along = normals @ u
    return bool(_survives_from_intervals(along[None, :], slack, tol)[0])


def _survives_from_intervals(along, slack, tol):
    """Vectorized interval test: rows of `along` are directions' N @ u."""
    pos = along > tol
    neg = along < -tol
    para = ~pos & ~neg
    # a parallel halfspace with no slack blocks every t: the line grazes
    blocked = (para & (slack <= tol)).any(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = slack / along
    hi = np.where(pos, ratio, np.inf).min(axis=1)
    lo = np.where(neg, ratio, -np.inf).max(axis=1)
    pierces = ~blocked & (hi - lo > tol)
    return ~pierces


def _survival_masks(p, directions, tol):
    """Per-dimension survival bitmasks for a batch of directions.

    Returns a list indexed by face dimension k = 0..n-1; entry k is an
    integer array over directions whose bit i is set iff the i-th k-face
    survives.
    """
    normals, offsets = p.halfspace_matrix()
    along = directions @ normals.T
    masks = []
    for k in range(p.dim):
        acc = np.zeros(directions.shape[0], dtype=object)
        for i, face in enumerate(p.faces(k)):
            slack = offsets - normals @ face.centroid
            surv = _survives_from_intervals(along, slack, tol)
            acc = acc + surv.astype(object) * (1 << i)
        masks.append(acc)
    return masks


def estimate_simplex_probability(p, samples, seed, workers=1, tol=None):
    """Monte Carlo probability that the simplex shadow is a lower simplex.

    Directions are sampled uniformly on the sphere; degenerate outcomes
    are excluded from numerator and denominator alike and reported in the
    `degenerate` field.  The prediction slot is left empty here; the
    identities module fills it from angle sums.
    """
    require_simplex(p)
    if samples < 1:
        raise ValueError("sample count must be >= 1, got %r" % (samples,))
    tol = p.tol if tol is None else tol
    start = time.perf_counter()
    counts = _run_workers(_probability_worker, p, samples, seed, workers, tol)
    lower, other, degen = counts
    kept = lower + other
    estimate = lower / kept if kept else math.nan
    stderr = math.sqrt(estimate * (1.0 - estimate) / kept) if kept else math.nan
    return ExperimentReport(
        seed=seed,
        samples=samples,
        estimate=estimate,
        stderr=stderr,
        degenerate=degen,
        runtime=time.perf_counter() - start,
    )


def _probability_worker(p, count, seed_seq, tol, _extra):
    rng = np.random.default_rng(seed_seq)
    lower = other = degen = 0
    remaining = count
    while remaining > 0:
        block = min(_CHUNK, remaining)
        u = sample_unit_sphere_batch(rng, p.dim, block)
        codes, _ = classify_many(p, u, tol)
        lower += int(np.count_nonzero(codes == LOWER_SIMPLEX_CODE))
        other += int(np.count_nonzero(codes == NOT_SIMPLEX_CODE))
        degen += int(np.count_nonzero(codes == DEGENERATE_CODE))
        remaining -= block
    return np.array([lower, other, degen])


def _run_workers(worker, p, samples, seed, workers, tol, extra=None):
    """Split samples across RNG substreams and merge integer accumulators."""
    if workers < 1:
        raise ValueError("worker count must be >= 1, got %r" % (workers,))
    streams = np.random.SeedSequence(seed).spawn(workers)
    base, rem = divmod(samples, workers)
    counts = [base + (1 if w < rem else 0) for w in range(workers)]
    if workers == 1:
        return worker(p, counts[0], streams[0], tol, extra)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(worker, p, c, s, tol, extra)
            for c, s in zip(counts, streams)
            if c > 0
        ]
        return sum(f.result() for f in futures)


def estimate_expected_face_count(
    p, k, samples, seed, workers=1, tol=None, method="auto", angle_samples=None
):
    """Mean number of surviving k-faces over sampled directions, vs theory.

    The prediction is f_k minus twice the sum of normalized solid angles
    over the k-faces: each face survives except when the direction falls
    in its tangent cone or the antipode.  Facets are rejected (their
    shadows are full-dimensional, never proper faces).
    """
    if not 0 <= k <= p.dim - 2:
        raise ValueError("face dimension k must satisfy 0 <= k <= %d, got %r" % (p.dim - 2, k))
    if samples < 1:
        raise ValueError("sample count must be >= 1, got %r" % (samples,))
    tol = p.tol if tol is None else tol
    start = time.perf_counter()
    sums = _run_workers(_face_count_worker, p, samples, seed, workers, tol, extra=k)
    total, total_sq = int(sums[0]), int(sums[1])
    estimate = total / samples
    if samples > 1:
        var = (total_sq - samples * estimate * estimate) / (samples - 1)
        stderr = math.sqrt(max(var, 0.0) / samples)
    else:
        stderr = math.nan
    prediction = float(p.f_vector[k])
    pred_var = 0.0
    area = sphere_area(p.dim)
    for i, face in enumerate(p.faces(k)):
        m = angles.solid_angle(
            p,
            face,
            method=method,
            samples=angle_samples or samples,
            seed=[seed, k, i],
            workers=workers,
        )
        prediction -= 2.0 * m.normalized
        pred_var += (2.0 * m.stderr / area) ** 2
    return ExperimentReport(
        seed=seed,
        samples=samples,
        estimate=estimate,
        stderr=stderr,
        prediction=prediction,
        prediction_stderr=math.sqrt(pred_var),
        residual=abs(estimate - prediction),
        runtime=time.perf_counter() - start,
    )


def _face_count_worker(p, count, seed_seq, tol, k):
    rng = np.random.default_rng(seed_seq)
    normals, offsets = p.halfspace_matrix()
    faces = p.faces(k)
    slacks = np.array([offsets - normals @ f.centroid for f in faces])
    total = 0
    total_sq = 0
    remaining = count
    while remaining > 0:
        block = min(_CHUNK, remaining)
        u = sample_unit_sphere_batch(rng, p.dim, block)
        along = u @ normals.T
        counts = np.zeros(block, dtype=np.int64)
        for slack in slacks:
            counts += _survives_from_intervals(along, slack, tol)
        total += int(counts.sum())
        total_sq += int((counts * counts).sum())
        remaining -= block
    return np.array([total, total_sq])
