"""Event counts of the sweep on points in convex position."""
import time

import numpy as np

from repseg import sweep_shortest_segment
from repseg.generators import convex_position, feasible_radius

print("%6s %8s %8s %8s %8s %8s %9s %6s %7s" % ("h", "kind1", "kind2", "kind3", "kind4",
                                            "kind5", "internal", "c", "sec"))
for h in (16, 64, 256, 1024):
    rng = np.random.default_rng(h)
    P = convex_position(h, rng)
    t = time.perf_counter()
    tr = sweep_shortest_segment(P, feasible_radius(P, rng)).trace
    c = tr.counts
    print("%6d %8d %8d %8d %8d %8d %9d %6.2f %7.2f"
          % (h, c[1], c[2], c[3], c[4], c[5], tr.internal, tr.fitted_constant(),
             time.perf_counter() - t))
