"""Index-versus-oracle checks shared by the unit and acceptance tests."""
import math

import numpy as np

from repseg.geometry import CCW, CW, Circle, Line, Point2, frame
from repseg.hull import convex_hull
from repseg.index import build_index, common_intersection
from repseg.oracle import linear_scan_circular_query, linear_scan_line_query


def ellipse_hull(rng, n_lo=20, n_hi=200):
    n = int(rng.integers(n_lo, n_hi))
    ang = np.sort(rng.uniform(0, 2 * np.pi, n))
    P = np.c_[rng.uniform(3, 8) * np.cos(ang), rng.uniform(1, 3) * np.sin(ang)]
    return convex_hull(P).vertices, float(rng.uniform(0.8, 2.5))


def node_mismatches(idx, V, r):
    bad = 0
    for nd in idx.nodes():
        ids = range(nd.lo, nd.hi + 1)
        ref = common_intersection([Circle(Point2(*V[k]), r) for k in ids], ids=ids)
        if nd.boundary.empty or ref.owners != nd.boundary.owners:
            bad += 1
            continue
        for a, b in zip(ref.vertices, nd.boundary.vertices):
            if math.dist(a, b) > 1e-9:
                bad += 1
                break
    return bad


def query_mismatches(idx, V, r, rng, n_queries):
    """(circular mismatches, line mismatches, max runs touched, empty-chord
    line cases) over random queries whose ranges have a nonempty common
    intersection."""
    h = len(V)
    circ = line = touched = empties = 0
    done = 0
    while done < n_queries:
        i = int(rng.integers(h))
        L = int(rng.integers(0, min(h, 40)))
        j = (i + L) % h
        ids = [(i + k) % h for k in range(L + 1)]
        disks = [Circle(Point2(*V[k]), r) for k in ids]
        b = common_intersection(disks, ids=ids)
        if b.empty:
            continue
        done += 1
        if b.full:
            q = V[b.owners[0]]
        else:
            vs = np.array(b.vertices)
            q = rng.dirichlet(np.ones(len(vs))) @ vs
        th = rng.uniform(0, 2 * np.pi)
        c = Circle(Point2(q[0] - r * math.cos(th), q[1] - r * math.sin(th)), r)
        wd = CW if rng.random() < 0.5 else CCW
        got = idx.circular_ray_query(i, j, c, q, wd)
        touched = max(touched, idx.last_touched)
        ref = linear_scan_circular_query(disks, c, q, wd)
        if (got is None) != (ref is None) or (
                got is not None and (got[1] != ids[ref[1]] or math.dist(got[0], ref[0]) > 1e-7)):
            circ += 1
        al = rng.uniform(0, np.pi)
        _, n = frame(al)
        hs = [V[k] @ np.array(n) for k in ids]
        off = rng.uniform(min(hs) - r, max(hs) + r)
        ln = Line(n, off)
        got = idx.line_query(i, j, ln)
        ref = linear_scan_line_query(disks, ln)
        if (got is None) != (ref is None):
            line += 1
            continue
        if got is None:
            continue
        empties += got.empty
        if got.empty != ref[4] or got.left_owner != ids[ref[2]] or \
                math.dist(got.left, ref[0]) > 1e-7:
            line += 1
        elif not got.empty and (got.right_owner != ids[ref[3]] or
                                math.dist(got.right, ref[1]) > 1e-7):
            line += 1
    return circ, line, touched, empties


def check_instance(seed, n_queries=1000):
    rng = np.random.default_rng(seed)
    V, r = ellipse_hull(rng)
    idx = build_index(V, r)
    nodes = node_mismatches(idx, V, r)
    circ, line, touched, empties = query_mismatches(idx, V, r, rng, n_queries)
    return {"nodes": nodes, "circular": circ, "line": line, "touched": touched,
            "empties": empties, "h": len(V)}
