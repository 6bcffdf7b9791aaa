"""Solid angles of convex polytopes and the shadows they predict.

The core objects are V+H polytopes with an explicit face lattice
(`geometry`), solid angle measures at face centroids (`angles`), random
orthogonal projection experiments (`projection`), and the closed-form
identities tying the two together (`identities`).  `families` builds the
standing test corpus and `cli` exposes everything as a command line tool.
"""

from .angles import (
    SolidAngleMeasure,
    solid_angle,
    solid_angle_mc,
    spherical_triangle_area,
    tangent_cone_contains,
    tangent_cone_normals,
    vertex_event_probability,
)
from .families import (
    cube,
    flat_apex_tetrahedron,
    polygon_from_ccw_vertices,
    random_polygon,
    random_simplex,
    regular_polygon,
    regular_simplex,
    skew_segment_tetrahedron,
)
from .geometry import (
    ConsistencyError,
    ConvexPolytope,
    DegeneracyError,
    Face,
    HalfSpace,
    build_polytope,
    build_simplex,
    load_polytope,
    parse_polytope,
    save_polytope,
    serialize_polytope,
    sphere_area,
    unit_ball_volume,
)
from .identities import (
    IdentityCheck,
    angle_sum,
    check_gaddum_membership,
    check_gram_euler,
    check_polygon_identity,
    check_polyhedron_identity,
    check_simplex_shadow_probability,
    gaddum_scan,
    log_grid,
    predict_simplex_probability,
    run_verification,
)
from .projection import (
    ExperimentReport,
    ProjectionOutcome,
    classify_many,
    classify_simplex_projection,
    estimate_expected_face_count,
    estimate_simplex_probability,
    face_survives,
    project,
)

__all__ = [
    "ConsistencyError",
    "ConvexPolytope",
    "DegeneracyError",
    "ExperimentReport",
    "Face",
    "HalfSpace",
    "IdentityCheck",
    "ProjectionOutcome",
    "SolidAngleMeasure",
    "angle_sum",
    "build_polytope",
    "build_simplex",
    "check_gaddum_membership",
    "check_gram_euler",
    "check_polygon_identity",
    "check_polyhedron_identity",
    "check_simplex_shadow_probability",
    "classify_many",
    "classify_simplex_projection",
    "cube",
    "estimate_expected_face_count",
    "estimate_simplex_probability",
    "face_survives",
    "flat_apex_tetrahedron",
    "gaddum_scan",
    "load_polytope",
    "log_grid",
    "parse_polytope",
    "polygon_from_ccw_vertices",
    "predict_simplex_probability",
    "project",
    "random_polygon",
    "random_simplex",
    "regular_polygon",
    "regular_simplex",
    "run_verification",
    "save_polytope",
    "serialize_polytope",
    "skew_segment_tetrahedron",
    "solid_angle",
    "solid_angle_mc",
    "sphere_area",
    "spherical_triangle_area",
    "tangent_cone_contains",
    "tangent_cone_normals",
    "unit_ball_volume",
    "vertex_event_probability",
]
