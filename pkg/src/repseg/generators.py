"""Seeded random instances: uniform in a disk, convex position, collinear
and clustered point sets, plus a radius picker that keeps a solution."""
import math

import numpy as np

from .geometry import smallest_enclosing_disk
from .hull import calipers, convex_hull

KINDS = ("uniform", "convex", "collinear", "clustered")


def uniform_in_disk(n, rng, radius=10.0):
    a = rng.uniform(0, 2 * math.pi, n)
    d = radius * np.sqrt(rng.uniform(0, 1, n))
    return np.c_[d * np.cos(a), d * np.sin(a)]


def convex_position(n, rng, radius=10.0, aspect=None):
    """n points on an ellipse, one per angular sector so that none crowd
    into a near-collinear run: all of them are hull vertices."""
    aspect = rng.uniform(0.2, 1.0) if aspect is None else aspect
    a = (np.arange(n) + rng.uniform(0.1, 0.9, n)) * (2 * math.pi / n)
    rot = rng.uniform(0, math.pi)
    X = np.c_[radius * np.cos(a), aspect * radius * np.sin(a)]
    c, s = math.cos(rot), math.sin(rot)
    return X @ np.array([[c, s], [-s, c]])


def collinear(n, rng, length=None):
    """n points on a random line; the two extremes are always present."""
    length = rng.uniform(1, 100) if length is None else length
    t = np.r_[0.0, length, rng.uniform(0, length, max(n - 2, 0))][:n]
    th = rng.uniform(0, 2 * math.pi)
    o = rng.uniform(-10, 10, 2)
    return o + t[:, None] * np.array([math.cos(th), math.sin(th)])


def clustered(n, rng, k=None, spread=10.0, sigma=0.5):
    k = int(rng.integers(2, 5)) if k is None else k
    centers = rng.uniform(-spread, spread, (k, 2))
    which = rng.integers(0, k, n)
    return centers[which] + rng.normal(0, sigma, (n, 2))


def generate(kind, n, seed=0):
    rng = np.random.default_rng(seed)
    if kind == "uniform":
        return uniform_in_disk(n, rng)
    if kind == "convex":
        return convex_position(n, rng)
    if kind == "collinear":
        return collinear(n, rng)
    if kind == "clustered":
        return clustered(n, rng)
    raise ValueError("unknown generator %r (choose from %s)" % (kind, ", ".join(KINDS)))


def feasible_radius(points, rng, low=1.0, high=1.5):
    """A radius between low and high times the half width, kept below the
    enclosing radius so the answer is a proper segment when possible."""
    P = np.asarray(points, dtype=float)
    w = calipers(convex_hull(P)).width / 2
    R = smallest_enclosing_disk(P).radius
    r = w * rng.uniform(low, high)
    if w > 0 and r >= R:
        r = 0.5 * (w + R)
    return float(r) if r > 0 else float(max(R * 0.5, 1e-3))
