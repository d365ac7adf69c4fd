"""Chasing output for random moving points, and a spinning pentagon whose
exact optimum jumps while the chased segment moves slowly."""
import json
import math

import numpy as np

from repseg import sweep_shortest_segment
from repseg.kinetic import random_trajectories, rotating_polygon, verify_stability

tr = random_trajectories(n=20, T=30, seed=1, spread=3.0)
rep = verify_stability(tr, 2.0, dt=1 / 32, exact_opt=True)
print(json.dumps({k: v for k, v in rep.to_json().items() if k != "notes"}, indent=1))

r = 2.8
poly = rotating_polygon(k=5, T=20, radius=3.0, turn=0.05)
rep = verify_stability(poly, r, dt=1 / 16, exact_opt=True)
segs = [sweep_shortest_segment(poly.at(t), r).segment for t in np.arange(1, 20, 1 / 16)]
move = max(min(max(math.dist(a.a, b.a), math.dist(a.b, b.b)),
               max(math.dist(a.a, b.b), math.dist(a.b, b.a))) for a, b in zip(segs, segs[1:]))
print("pentagon: exact optimum moves up to %.3f within 1/16 time unit" % move)
print("pentagon: chased endpoint speed %.3f (bound %.3f)" % (rep.max_speed, rep.speed_bound))
