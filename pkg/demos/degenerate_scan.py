"""
Pushing tetrahedra toward degeneracy
====================================

Two one-parameter families of tetrahedra probe the extremes of the
shadow probability:

* flat-apex: a unit equilateral base with the apex at height h above
  the centroid.  Squashing h toward zero flattens the solid into its
  base and the shadow is almost always a triangle (probability -> 1).

* skew-segments: the convex hull of two centered orthogonal segments,
  one at height d/2 and one at -d/2.  Shrinking d slides the segments
  into a coplanar crossing, so the fourth vertex almost never hides
  inside the shadow (probability -> 0).

Both endpoints stay strictly inside (0, 1) at every finite parameter,
which the scan below makes visible on a logarithmic grid.
"""

from polyangles import gaddum_scan, log_grid

for family, lo, hi in [("flat-apex", 1e-3, 10.0), ("skew-segments", 1e-3, 1.0)]:
    print("%s family" % family)
    print("  %12s %14s" % ("parameter", "probability"))
    for x, q in gaddum_scan(family, log_grid(lo, hi, 12)):
        bar = "#" * int(round(40 * q))
        print("  %12.5f %14.10f  %s" % (x, q, bar))
    print()
