"""A slanted parallelogram whose extent across the diameter exceeds sqrt2
times its width.  With W just below 2r a valid segment exists, but the
extent is above the gate, so the chasing output stays empty."""
import math

import numpy as np

from repseg import sweep_shortest_segment
from repseg.kinetic import Trajectory, verify_stability, width_extent_diameter

P = np.array([[0, 0], [1, 0], [11, 1], [10, 1]], float)
W, E, D = width_extent_diameter(P)
print("W = %.6f  E = %.6f  E/W = %.4f  (sqrt2 = %.4f)" % (W, E, E / W, math.sqrt(2)))

r = 4.0
Q = P * ((2 * r - 1e-6) / W)
W, E, D = width_extent_diameter(Q)
print("scaled: W = %.6f <= 2r = %.1f, E = %.4f > gate %.4f"
      % (W, 2 * r, E, 2 * r * math.sqrt(2) + 2))
print("static solver:", sweep_shortest_segment(Q, r).status)
rep = verify_stability(Trajectory(np.repeat(Q[None], 4, axis=0)), r)
print("chasing output empty on %d of %d samples where W <= 2r"
      % (rep.gate_lower_violations, rep.lower_samples))
