"""
Alternating angle sums across dimensions
========================================

Summing the raw solid angle over all proper faces with a sign that
alternates by face dimension always lands on a dimension-dependent
constant: (-1)^(n-1) times the area of the unit sphere in R^n.  No
matter how the polytope is shaped.

For polygons this is the high-school exterior angle fact in disguise,
for polyhedra it is a sharpened Euler relation, and in dimension four
and up it keeps holding even though the individual angles no longer
have closed forms and must be estimated by Monte Carlo.
"""

import numpy as np

from polyangles import (
    angle_sum,
    cube,
    random_polygon,
    random_simplex,
    regular_simplex,
    sphere_area,
)

SHAPES = [
    ("triangle", regular_simplex(2), "exact"),
    ("random heptagon", random_polygon(3, k=7), "exact"),
    ("cube", cube(3), "exact"),
    ("random tetrahedron", random_simplex(3, 9), "exact"),
    ("4-simplex", regular_simplex(4), "mc"),
    ("random 4-simplex", random_simplex(4, 9), "mc"),
]

print("%-20s %4s %14s %14s %10s" % ("shape", "dim", "signed sum", "target", "gap"))
for name, p, method in SHAPES:
    total = 0.0
    var = 0.0
    for k in range(p.dim):
        s = angle_sum(p, k, method=method, samples=2 * 10 ** 5, seed=3)
        total += (-1) ** k * s.value
        var += s.stderr ** 2
    target = (-1) ** (p.dim - 1) * sphere_area(p.dim)
    gap = abs(total - target)
    note = "" if var == 0 else " (mc, %.1f sigma)" % (gap / np.sqrt(var))
    print("%-20s %4d %14.8f %14.8f %10.2e%s" % (name, p.dim, total, target, gap, note))
