"""
Shadow probability of a tetrahedron: simulation meets closed form
=================================================================

Project a regular tetrahedron along random directions and count how
often the shadow is a triangle with the fourth vertex strictly inside.
The angle route predicts this probability exactly:

    p = 2 * (sum of the four vertex solid angles) / (4 * pi)
      = 2 * arccos(23/27) / pi

The script runs the projection experiment at growing sample counts and
prints the gap to the prediction in units of the Monte Carlo standard
error, which should hover around 1 no matter how many samples we throw
at it.
"""

import math

from polyangles import (
    estimate_simplex_probability,
    predict_simplex_probability,
    regular_simplex,
)

p = regular_simplex(3)
predicted = predict_simplex_probability(p)
closed_form = 2.0 * math.acos(23.0 / 27.0) / math.pi
print("angle-route prediction : %.12f" % predicted)
print("closed form            : %.12f" % closed_form)
print("agreement              : %.3e" % abs(predicted - closed_form))
print()

print("%10s %14s %12s %8s" % ("samples", "estimate", "stderr", "gap/sig"))
for exponent in range(3, 7):
    n = 10 ** exponent
    r = estimate_simplex_probability(p, samples=n, seed=5)
    gap = abs(r.estimate - predicted)
    print("%10d %14.8f %12.2e %8.2f" % (n, r.estimate, r.stderr, gap / r.stderr))
