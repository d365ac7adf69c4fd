"""Planar primitives shared by every other module.

Plain double precision with one predicate tolerance, ``EPS``.  Angles of
points on circles live in [0, 2pi); orientations of lines live in [0, pi).
"""
import math
import random
from typing import NamedTuple

import numpy as np

EPS = 1e-9
TWO_PI = 2.0 * math.pi

CW = "cw"
CCW = "ccw"


class Point2(NamedTuple):
    x: float
    y: float


class Circle(NamedTuple):
    center: Point2
    radius: float


class CircularArc(NamedTuple):
    """Arc of ``circle`` from ``start_angle`` to ``end_angle`` in ``winding``
    direction.  ``full`` marks a whole circle."""
    circle: Circle
    start_angle: float
    end_angle: float
    winding: str = CCW
    full: bool = False

    def point(self, angle):
        return on_circle(self.circle, angle)

    @property
    def start(self):
        return on_circle(self.circle, self.start_angle)

    @property
    def end(self):
        return on_circle(self.circle, self.end_angle)

    @property
    def sweep(self):
        if self.full:
            return TWO_PI
        if self.winding == CCW:
            return (self.end_angle - self.start_angle) % TWO_PI
        return (self.start_angle - self.end_angle) % TWO_PI


class Segment(NamedTuple):
    a: Point2
    b: Point2

    @property
    def length(self):
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)


class Line(NamedTuple):
    """Points p with normal . p == offset."""
    normal: tuple
    offset: float

    @property
    def direction(self):
        # normal is direction rotated by +pi/2
        return (self.normal[1], -self.normal[0])

    def signed_distance(self, p):
        return self.normal[0] * p[0] + self.normal[1] * p[1] - self.offset


class CoincidentCirclesError(ValueError):
    pass


def normalize_orientation(alpha):
    a = math.fmod(alpha, math.pi)
    if a < 0:
        a += math.pi
    return 0.0 if a >= math.pi else a


def normalize_angle(theta):
    a = math.fmod(theta, TWO_PI)
    if a < 0:
        a += TWO_PI
    return 0.0 if a >= TWO_PI else a


def frame(alpha):
    """Unit direction u and its left normal n for orientation alpha."""
    c, s = math.cos(alpha), math.sin(alpha)
    return (c, s), (-s, c)


def line_at(alpha, offset):
    _, n = frame(alpha)
    return Line(n, offset)


def on_circle(c, angle):
    return Point2(c.center[0] + c.radius * math.cos(angle),
                  c.center[1] + c.radius * math.sin(angle))


def angle_on(c, p):
    return normalize_angle(math.atan2(p[1] - c.center[1], p[0] - c.center[0]))


def circle_circle_intersections(c1, c2, tol=EPS):
    """Intersection points of two circles, sorted by their angle on c1."""
    (x1, y1), r1 = c1
    (x2, y2), r2 = c2
    dx, dy = x2 - x1, y2 - y1
    d = math.hypot(dx, dy)
    scale = max(1.0, r1, r2)
    if d <= tol * scale and abs(r1 - r2) <= tol * scale:
        raise CoincidentCirclesError("coincident")
    if d > r1 + r2 + tol * scale or d < abs(r1 - r2) - tol * scale or d == 0.0:
        return []
    a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d)
    h2 = r1 * r1 - a * a
    mx, my = x1 + a * dx / d, y1 + a * dy / d
    if h2 <= (tol * scale) ** 2:
        return [Point2(mx, my)]
    h = math.sqrt(h2)
    pts = [Point2(mx - h * dy / d, my + h * dx / d),
           Point2(mx + h * dy / d, my - h * dx / d)]
    pts.sort(key=lambda p: angle_on(c1, p))
    return pts


def point_segment_distance(p, s):
    ax, ay = s[0]
    bx, by = s[1]
    dx, dy = bx - ax, by - ay
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return math.hypot(p[0] - ax, p[1] - ay)
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / L2
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - ax - t * dx, p[1] - ay - t * dy)


def point_segment_distances(points, s):
    """Vectorized distances from an (n, 2) array to segment s."""
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    a = np.asarray(s[0], dtype=float)
    d = np.asarray(s[1], dtype=float) - a
    L2 = float(d @ d)
    if L2 == 0.0:
        return np.hypot(P[:, 0] - a[0], P[:, 1] - a[1])
    t = np.clip((P - a) @ d / L2, 0.0, 1.0)
    q = a + t[:, None] * d
    return np.hypot(P[:, 0] - q[:, 0], P[:, 1] - q[:, 1])


def tangent_lines_at_orientation(c, alpha):
    """(upper, lower) tangents of orientation alpha; upper is on the +n side."""
    _, n = frame(alpha)
    h = n[0] * c.center[0] + n[1] * c.center[1]
    return Line(n, h + c.radius), Line(n, h - c.radius)


def inner_bitangents(c1, c2, tol=EPS):
    """Lines tangent to both (equal) circles with the circles on opposite sides."""
    if abs(c1.radius - c2.radius) > tol * max(1.0, c1.radius):
        raise ValueError("inner_bitangents supports equal radii only")
    r = c1.radius
    dx, dy = c2.center[0] - c1.center[0], c2.center[1] - c1.center[1]
    d = math.hypot(dx, dy)
    if d < 2 * r - tol * max(1.0, r):
        return []
    m = ((c1.center[0] + c2.center[0]) / 2, (c1.center[1] + c2.center[1]) / 2)
    phi = math.atan2(dy, dx)
    if d <= 2 * r + tol * max(1.0, r):
        thetas = [phi + math.pi / 2]
    else:
        t = math.asin(2 * r / d)
        thetas = [phi - t, phi + t]
    lines = []
    for th in sorted(normalize_orientation(t) for t in thetas):
        _, n = frame(th)
        lines.append(Line(n, n[0] * m[0] + n[1] * m[1]))
    return lines


def _circle2(a, b):
    c = Point2((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    return c, math.hypot(a[0] - c[0], a[1] - c[1])


def _circle3(a, b, c):
    ax, ay = a
    bx, by = b[0] - ax, b[1] - ay
    cx, cy = c[0] - ax, c[1] - ay
    d = 2.0 * (bx * cy - by * cx)
    if d == 0.0:
        return None
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return Point2(ax + ux, ay + uy), math.hypot(ux, uy)


def smallest_enclosing_disk(points, seed=0):
    """Welzl's randomized incremental algorithm in its iterative form."""
    pts = [Point2(float(p[0]), float(p[1])) for p in points]
    if not pts:
        raise ValueError("smallest_enclosing_disk needs at least one point")
    random.Random(seed).shuffle(pts)

    def inside(c, rad, p):
        return math.hypot(p[0] - c[0], p[1] - c[1]) <= rad * (1 + 1e-12) + 1e-12

    c, rad = pts[0], 0.0
    for i in range(1, len(pts)):
        if inside(c, rad, pts[i]):
            continue
        c, rad = pts[i], 0.0
        for j in range(i):
            if inside(c, rad, pts[j]):
                continue
            c, rad = _circle2(pts[i], pts[j])
            for k in range(j):
                if inside(c, rad, pts[k]):
                    continue
                cc = _circle3(pts[i], pts[j], pts[k])
                if cc is not None:
                    c, rad = cc
    return Circle(c, rad)


# root finding for the sinusoids that every certificate reduces to

def lift_after(theta, after, strict_tol=0.0):
    """theta + 2 pi k, the smallest such value > after + strict_tol."""
    k = math.floor((after + strict_tol - theta) / TWO_PI) + 1
    val = theta + k * TWO_PI
    if val - TWO_PI > after + strict_tol:
        val -= TWO_PI
    return val


def sinusoid_roots(a, c):
    """Angles (mod 2pi) where a . n(alpha) == c, with n(alpha) = (-sin, cos).

    Uses a . n(alpha) = |a| sin(phi - alpha), phi = atan2(a).  Returns an
    empty list when |c| > |a|.
    """
    m = math.hypot(a[0], a[1])
    if m == 0.0:
        return []
    x = c / m
    if x > 1.0 or x < -1.0:
        if abs(x) - 1.0 > 1e-12:
            return []
        x = max(-1.0, min(1.0, x))
    phi = math.atan2(a[1], a[0])
    s = math.asin(x)
    if abs(x) == 1.0:
        return [phi - s]
    return [phi - s, phi - math.pi + s]


def next_sinusoid_root(a, c, after, sign=0, tol=1e-12):
    """First alpha >= after - tol with a . n(alpha) == c.

    sign = +1 / -1 keeps only roots where a . n(alpha) - c is increasing /
    decreasing; 0 keeps both.
    """
    best = math.inf
    for th in sinusoid_roots(a, c):
        al = lift_after(th, after - tol)
        for cand in (al, al + TWO_PI):
            if sign:
                # d/dalpha (a . n) = -a . u
                u = (math.cos(cand), math.sin(cand))
                der = -(a[0] * u[0] + a[1] * u[1])
                if der * sign <= 0:
                    continue
            best = min(best, cand)
            break
    return best
