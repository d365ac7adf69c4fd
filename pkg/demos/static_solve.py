"""Solve a random instance, compare with the brute-force oracle and draw it."""
import sys

import numpy as np

from repseg import sweep_shortest_segment
from repseg.cli import render_svg
from repseg.generators import feasible_radius, generate
from repseg.oracle import brute_force_shortest, max_point_distance

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
P = generate("uniform", 40, seed)
r = feasible_radius(P, np.random.default_rng(seed))
res = sweep_shortest_segment(P, r)
ref = brute_force_shortest(P, r)
print("r = %.6g, status %s" % (r, res.status))
print("sweep  length %.12f  (%d events: %s)" % (res.length, res.trace.total,
                                                 dict(res.trace.counts)))
print("oracle length %.12f  (%d evaluations)" % (ref.length, ref.cost))
print("max point distance %.12f" % max_point_distance(P, res.segment))
with open("static_solve.svg", "w") as f:
    f.write(render_svg(P, r, res))
print("wrote static_solve.svg")
