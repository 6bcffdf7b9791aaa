"""
Solid angle tables for some reference solids
============================================

Walks the face lattice of a few small polytopes and prints the solid
inner angle at every proper face centroid, both raw (surface measure on
the unit sphere) and normalized by the full sphere area.

Doubling a vertex's normalized angle gives the probability that a
uniformly random direction makes that vertex the extreme point of the
projected shadow, so the table doubles as an event-probability table.
"""

import numpy as np

from polyangles import (
    cube,
    regular_polygon,
    regular_simplex,
    solid_angle,
    vertex_event_probability,
)

SOLIDS = [
    ("triangle", regular_simplex(2)),
    ("pentagon", regular_polygon(5)),
    ("tetrahedron", regular_simplex(3)),
    ("cube", cube(3)),
]

for name, p in SOLIDS:
    print()
    print("%s (dimension %d, f-vector %s)" % (name, p.dim, p.f_vector))
    print("  %-6s %-14s %12s %12s %9s" % ("dim", "vertices", "raw", "normalized", "method"))
    for k in range(p.dim):
        for f in p.faces(k):
            m = solid_angle(p, f)
            ids = ",".join(str(i) for i in f.vertex_ids)
            print("  %-6d %-14s %12.8f %12.8f %9s" % (k, ids, m.raw, m.normalized, m.method))

    # summing the per-vertex event probabilities gives the expected number
    # of vertices swallowed by the shadow's interior; subtracting from the
    # vertex count recovers the expected vertex count of the shadow itself
    probs = [vertex_event_probability(p, v) for v in p.faces(0)]
    lost = float(np.sum(probs))
    print("  expected interior-vertex events: %.8f" % lost)
    print("  expected shadow vertex count:    %.8f" % (p.n_vertices - lost))
