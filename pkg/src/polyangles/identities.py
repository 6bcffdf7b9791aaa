"""Closed-form angle-sum predictions and numerical identity checks.

Every identity the library knows about is expressed as an IdentityCheck:
a left-hand side measured one way, a right-hand side predicted another
way, and a tolerance that is 1e-9 for fully exact routes but inflates to
4x the combined standard error as soon as Monte Carlo angles enter.
Also home to the two degenerate tetrahedron families whose vertex-angle
sums sweep out the open range allowed for simplices.
"""

import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from . import angles, projection
from .families import flat_apex_tetrahedron, skew_segment_tetrahedron
from .geometry import sphere_area

BASE_TOL = 1e-9

FLAT_APEX = "flat-apex"
SKEW_SEGMENTS = "skew-segments"

AngleSum = namedtuple("AngleSum", ["value", "stderr", "methods"])


@dataclass(frozen=True)
class IdentityCheck:
    """One verified identity: lhs vs rhs with an error-aware tolerance.

    `method_trail` records how each side was obtained so a report reader
    can tell an exact pass from a statistical one.
    """

    name: str
    lhs: float
    rhs: float
    residual: float
    tolerance: float
    passed: bool
    lhs_stderr: float = 0.0
    rhs_stderr: float = 0.0
    method_trail: str = ""


def _check(name, lhs, rhs, lhs_stderr=0.0, rhs_stderr=0.0, base_tol=BASE_TOL, trail=""):
    residual = abs(lhs - rhs)
    combined = math.hypot(lhs_stderr, rhs_stderr)
    tolerance = max(base_tol, 4.0 * combined)
    return IdentityCheck(
        name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        residual=float(residual),
        tolerance=float(tolerance),
        passed=bool(residual <= tolerance),
        lhs_stderr=float(lhs_stderr),
        rhs_stderr=float(rhs_stderr),
        method_trail=trail,
    )


def angle_sum(p, k, method="auto", samples=10 ** 6, seed=0, workers=1):
    """Sum of solid angle measures over all k-faces, with combined stderr.

    Each face's Monte Carlo stream is derived from (seed, k, face index),
    so face estimates are independent and the whole sum is reproducible.
    """
    if not 0 <= k <= p.dim - 1:
        raise ValueError("face dimension k must satisfy 0 <= k <= %d, got %r" % (p.dim - 1, k))
    total = 0.0
    var = 0.0
    methods = set()
    for i, face in enumerate(p.faces(k)):
        m = angles.solid_angle(
            p, face, method=method, samples=samples, seed=[seed, k, i], workers=workers
        )
        total += m.raw
        var += m.stderr ** 2
        methods.add(m.method)
    return AngleSum(total, math.sqrt(var), tuple(sorted(methods)))


def predict_simplex_probability(p, method="auto", samples=10 ** 6, seed=0, workers=1):
    """Angle-side prediction of the lower-simplex shadow probability.

    The probability equals 2/(n*omega_n) times the vertex angle sum: each
    vertex is swallowed by the shadow exactly when the direction falls in
    its tangent cone or the antipode, and the events are disjoint.
    """
    projection.require_simplex(p)
    s = angle_sum(p, 0, method=method, samples=samples, seed=seed, workers=workers)
    return 2.0 * s.value / sphere_area(p.dim)


def check_simplex_shadow_probability(
    p, samples=10 ** 6, seed=0, method="auto", workers=1, base_tol=BASE_TOL
):
    """Sampled shadow classification vs the vertex-angle-sum prediction."""
    projection.require_simplex(p)
    report = projection.estimate_simplex_probability(p, samples, seed, workers=workers)
    s = angle_sum(p, 0, method=method, samples=samples, seed=seed, workers=workers)
    area = sphere_area(p.dim)
    return _check(
        "simplex-shadow-probability",
        report.estimate,
        2.0 * s.value / area,
        lhs_stderr=report.stderr,
        rhs_stderr=2.0 * s.stderr / area,
        base_tol=base_tol,
        trail="lhs: monte-carlo classification (%d samples, %d degenerate); rhs: %s"
        % (samples, report.degenerate, "+".join(s.methods)),
    )


def check_polygon_identity(p, base_tol=BASE_TOL):
    """Polygon vertex angles must sum to pi times (vertex count - 2)."""
    if p.dim != 2:
        raise ValueError("polygon identity requires dimension 2, got %d" % p.dim)
    s = angle_sum(p, 0, method="exact")
    rhs = math.pi * (p.f_vector[0] - 2)
    return _check(
        "polygon-angle-sum",
        s.value,
        rhs,
        base_tol=base_tol,
        trail="lhs: %s; rhs: closed form" % "+".join(s.methods),
    )


def check_polyhedron_identity(p, base_tol=BASE_TOL):
    """Normalized vertex minus edge angle sums against the Euler count.

    For a 3-polytope, (1/2pi)(sum_v alpha - sum_e alpha) = 2 - f_2: the
    alternating structure collapses because every facet angle is the
    half-sphere constant.
    """
    if p.dim != 3:
        raise ValueError("polyhedron identity requires dimension 3, got %d" % p.dim)
    sv = angle_sum(p, 0, method="exact")
    se = angle_sum(p, 1, method="exact")
    lhs = (sv.value - se.value) / (2.0 * math.pi)
    rhs = 2.0 - p.f_vector[2]
    return _check(
        "polyhedron-angle-alternation",
        lhs,
        rhs,
        base_tol=base_tol,
        trail="lhs: %s; rhs: Euler count" % "+".join(sorted(set(sv.methods + se.methods))),
    )


def check_gram_euler(
    p, method="auto", samples=10 ** 6, seed=0, workers=1, base_tol=BASE_TOL
):
    """Alternating solid-angle sum over all proper faces vs (-1)^(n-1) n omega_n."""
    lhs = 0.0
    var = 0.0
    methods = set()
    for k in range(p.dim):
        s = angle_sum(p, k, method=method, samples=samples, seed=seed, workers=workers)
        lhs += (-1) ** k * s.value
        var += s.stderr ** 2
        methods.update(s.methods)
    rhs = (-1) ** (p.dim - 1) * sphere_area(p.dim)
    return _check(
        "gram-euler",
        lhs,
        rhs,
        lhs_stderr=math.sqrt(var),
        base_tol=base_tol,
        trail="lhs: %s; rhs: closed form" % "+".join(sorted(methods)),
    )


def check_gaddum_membership(p, method="exact", samples=10 ** 6, seed=0, workers=1):
    """Vertex angle sum of a simplex strictly inside (0, n*omega_n / 2).

    Encoded as a distance-from-midpoint check on the shadow probability:
    p lies strictly in (0, 1) iff |p - 1/2| < 1/2.
    """
    projection.require_simplex(p)
    if p.dim < 3:
        raise ValueError("the open-range bound applies in dimension >= 3, got %d" % p.dim)
    s = angle_sum(p, 0, method=method, samples=samples, seed=seed, workers=workers)
    area = sphere_area(p.dim)
    prob = 2.0 * s.value / area
    stderr = 2.0 * s.stderr / area
    margin = 0.5 - max(4.0 * stderr, 1e-12)
    return IdentityCheck(
        name="gaddum-membership",
        lhs=float(prob),
        rhs=0.5,
        residual=float(abs(prob - 0.5)),
        tolerance=float(margin),
        passed=bool(abs(prob - 0.5) <= margin),
        lhs_stderr=float(stderr),
        rhs_stderr=0.0,
        method_trail="lhs: %s; range check |p - 1/2| < 1/2" % "+".join(s.methods),
    )


def gaddum_scan(family, parameters, method="exact", samples=10 ** 6, seed=0, workers=1):
    """Shadow probability along a degenerate tetrahedron family.

    "flat-apex" lifts an apex a height h over the centroid of a unit
    equilateral triangle (h -> 0 pushes the probability to 1);
    "skew-segments" joins two orthogonal horizontal segments a vertical
    distance d apart (d -> 0 pushes it to 0).  Returns a list of
    (parameter, probability) pairs in the given parameter order.
    """
    builders = {FLAT_APEX: flat_apex_tetrahedron, SKEW_SEGMENTS: skew_segment_tetrahedron}
    if family not in builders:
        raise ValueError("unknown family %r; expected one of %s" % (family, sorted(builders)))
    parameters = [float(x) for x in parameters]
    if not parameters:
        raise ValueError("parameter grid is empty")
    if min(parameters) <= 0.0:
        raise ValueError("family parameters must be positive, got %g" % min(parameters))
    build = builders[family]
    out = []
    for x in parameters:
        t = build(x)
        out.append(
            (x, predict_simplex_probability(t, method=method, samples=samples, seed=seed, workers=workers))
        )
    return out


def log_grid(lo, hi, steps):
    """Logarithmically spaced scan grid, endpoints included."""
    if steps < 1:
        raise ValueError("steps must be >= 1, got %r" % (steps,))
    if lo <= 0 or hi <= 0:
        raise ValueError("log grid endpoints must be positive")
    if steps == 1:
        return [float(lo)]
    return list(np.geomspace(lo, hi, steps))


def run_verification(p, samples=10 ** 6, seed=0, method="auto", workers=1, base_tol=BASE_TOL):
    """All identity checks applicable to a polytope, in a fixed order.

    Each check derives its seed from the root seed plus its position, so
    the suite is reproducible as a whole and check by check.
    """
    checks = []

    def next_seed():
        return seed + len(checks)

    if p.dim == 2:
        checks.append(check_polygon_identity(p, base_tol=base_tol))
    if p.dim == 3:
        checks.append(check_polyhedron_identity(p, base_tol=base_tol))
    if p.n_vertices == p.dim + 1:
        checks.append(
            check_simplex_shadow_probability(
                p, samples=samples, seed=next_seed(), method=method, workers=workers, base_tol=base_tol
            )
        )
        if p.dim >= 3:
            checks.append(
                check_gaddum_membership(
                    p, method="exact" if p.dim == 3 else method, samples=samples, seed=next_seed(), workers=workers
                )
            )
    checks.append(
        check_gram_euler(
            p, method=method, samples=samples, seed=next_seed(), workers=workers, base_tol=base_tol
        )
    )
    return checks
