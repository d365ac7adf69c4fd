"""Convex hull and rotating calipers."""
import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .geometry import EPS, normalize_orientation

DEDUP_TOL = 1e-12


class ConvexHull(NamedTuple):
    """Hull vertices in clockwise order, with their indices into the input."""
    vertices: np.ndarray
    indices: tuple

    @property
    def h(self):
        return len(self.indices)


class CaliperResult(NamedTuple):
    width: float
    width_orientation: float
    diameter: float
    diametric_pair: tuple


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _exact_cross(o, a, b):
    o, a, b = [(Fraction(float(p[0])), Fraction(float(p[1]))) for p in (o, a, b)]
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points):
    """Monotone chain.  Clockwise, strictly convex, starting at the
    lexicographically smallest vertex."""
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(P) == 0:
        raise ValueError("convex_hull needs at least one point")
    if not np.all(np.isfinite(P)):
        raise ValueError("non-finite coordinates")
    order = sorted(range(len(P)), key=lambda i: (P[i, 0], P[i, 1], i))
    uniq = []
    for i in order:
        # compare with every kept point inside the x window, not just the last
        k = len(uniq) - 1
        dup = False
        while k >= 0 and P[i, 0] - P[uniq[k], 0] <= DEDUP_TOL:
            if abs(P[i, 1] - P[uniq[k], 1]) <= DEDUP_TOL:
                dup = True
                break
            k -= 1
        if not dup:
            uniq.append(i)
    if len(uniq) == 1:
        return ConvexHull(P[uniq].copy(), tuple(uniq))
    scale = max(1.0, float(np.abs(P).max()))
    tol = 1e-12 * scale * scale

    def drop_middle(a, m, b):
        c = _cross(a, m, b)
        if c > tol:
            return False
        # nearly collinear: merge m only when it lies between a and b;
        # otherwise (near-vertical runs in x order) trust the exact sign
        d = (b[0] - a[0], b[1] - a[1])
        t = (m[0] - a[0]) * d[0] + (m[1] - a[1]) * d[1]
        if 0.0 <= t <= d[0] * d[0] + d[1] * d[1]:
            return True
        return _exact_cross(a, m, b) <= 0

    def half(seq):
        out = []
        for i in seq:
            while len(out) >= 2 and drop_middle(P[out[-2]], P[out[-1]], P[i]):
                out.pop()
            out.append(i)
        return out

    lower = half(uniq)
    upper = half(uniq[::-1])
    ccw = lower[:-1] + upper[:-1]
    if len(ccw) < 2:
        ccw = [uniq[0], uniq[-1]]
    # ccw starts at the lexicographic minimum; reverse the tail for cw
    cw = [ccw[0]] + ccw[:0:-1]
    return ConvexHull(P[cw].copy(), tuple(cw))


def strip_width(points, alpha):
    """Width of the point set measured orthogonally to orientation alpha."""
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    y = P[:, 1] * math.cos(alpha) - P[:, 0] * math.sin(alpha)
    return float(y.max() - y.min())


def antipodal_pairs(hull):
    """All antipodal vertex pairs (i, j) of the hull (positions, not input ids)."""
    V = hull.vertices
    h = len(V)
    if h == 1:
        return [(0, 0)]
    if h == 2:
        return [(0, 1)]
    V = V[::-1]  # ccw for the textbook walk

    def area(i, j, k):
        return abs(_cross(V[i % h], V[j % h], V[k % h]))

    pairs = set()
    j = 1
    for i in range(h):
        ni = i + 1
        j = max(j, ni)
        # advance through non-decreasing areas; stop before wrapping to i
        while (j + 1) % h != i % h and area(i, ni, j + 1) >= area(i, ni, j):
            j += 1
        pairs.add((i % h, j % h))
        pairs.add((ni % h, j % h))
        # the other end of a parallel edge is antipodal too
        if area(i, ni, j - 1) >= area(i, ni, j) * (1 - 1e-12):
            pairs.add((i % h, (j - 1) % h))
            pairs.add((ni % h, (j - 1) % h))
    # map back to cw positions
    out = set()
    for a, b in pairs:
        a, b = h - 1 - a, h - 1 - b
        if a != b:
            out.add((min(a, b), max(a, b)))
    return sorted(out)


def calipers(hull):
    V = hull.vertices
    h = len(V)
    if h == 1:
        return CaliperResult(0.0, 0.0, 0.0, (hull.indices[0], hull.indices[0]))
    if h == 2:
        d = V[1] - V[0]
        D = float(math.hypot(*d))
        ia, ib = hull.indices
        return CaliperResult(0.0, normalize_orientation(math.atan2(d[1], d[0])), D,
                             (min(ia, ib), max(ia, ib)))
    # width: for every edge the farthest vertex; O(h) pointer walk
    best_w, best_a = math.inf, 0.0
    j = 1
    for i in range(h):
        a, b = V[i], V[(i + 1) % h]
        e = b - a
        L = math.hypot(*e)

        def dist(k):
            return abs(_cross(a, b, V[k % h])) / L
        if j <= i:
            j = i + 1
        while dist(j + 1) >= dist(j) and (j + 1) % h != i:
            j += 1
        w = dist(j)
        if w < best_w:
            best_w, best_a = w, normalize_orientation(math.atan2(e[1], e[0]))
    best_d, pair = -1.0, (0, 0)
    for a, b in antipodal_pairs(hull):
        d = float(math.hypot(*(V[a] - V[b])))
        ia, ib = sorted((hull.indices[a], hull.indices[b]))
        if d > best_d + 1e-12 * max(1.0, d) or (abs(d - best_d) <= 1e-12 * max(1.0, d)
                                                and (ia, ib) < pair):
            best_d, pair = max(d, best_d), (ia, ib)
    return CaliperResult(float(best_w), best_a, best_d, pair)


def feasible_orientation(hull, r):
    """An orientation whose orthogonal strip width is <= 2r, or None."""
    if r <= 0:
        raise ValueError("r must be positive")
    cal = calipers(hull)
    if cal.width <= 2 * r + EPS:
        return cal.width_orientation
    return None
