"""Fixed orientation: the two strip tangents, the two convex arc chains and
the shortest segment between them.

Conventions.  For orientation alpha let u = (cos a, sin a) and
n = (-sin a, cos a); "height" is p . n.  The tangent tau1 is the lowest
top tangent of the disks (owner argmin p . n), tau2 the highest bottom
tangent (owner argmax p . n).  Chain S1 is the right-most envelope of the
left half-circles between the tangents, so q1 is the right endpoint of the
segment.  S2 is the same construction in the frame rotated by pi; every
chain is stored in its own frame, top to bottom, which is counter-clockwise
hull order.  Chain vertices are fixed world points (circle-circle
intersections); only the two chain ends move with alpha.
"""
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .geometry import (CCW, Circle, CircularArc, Line, Point2, Segment, angle_on,
                       circle_circle_intersections, frame)


class Disks:
    """Hull vertices as disk centers, kept as plain floats for speed."""

    def __init__(self, vertices, r):
        self.P = np.asarray(vertices, dtype=float).reshape(-1, 2)
        self.pts = [(float(x), float(y)) for x, y in self.P]
        self.r = float(r)
        self.h = len(self.pts)
        self.scale = max(1.0, float(np.abs(self.P).max()) if self.h else 1.0, self.r)

    def circle(self, i):
        return Circle(Point2(*self.pts[i]), self.r)


class TangentPair(NamedTuple):
    tau1: Line
    tau2: Line
    owner1: int
    owner2: int


def side_frame(alpha, side):
    return alpha if side == 1 else alpha + math.pi


def extreme_owners(disks, alpha):
    """(argmin, argmax) of p . n over the hull, smallest position on ties."""
    _, (nx, ny) = frame(alpha)
    hs = disks.P[:, 0] * nx + disks.P[:, 1] * ny
    return int(np.argmin(hs)), int(np.argmax(hs))


def fixed_orientation_tangents(hull_or_disks, r, alpha):
    """tau1 / tau2 with owners, or None when tau1 lies strictly below tau2."""
    disks = hull_or_disks if isinstance(hull_or_disks, Disks) \
        else Disks(hull_or_disks.vertices, r)
    o1, o2 = extreme_owners(disks, alpha)
    _, n = frame(alpha)
    y1 = disks.pts[o1][0] * n[0] + disks.pts[o1][1] * n[1] + r
    y2 = disks.pts[o2][0] * n[0] + disks.pts[o2][1] * n[1] - r
    if y1 < y2:
        return None
    return TangentPair(Line(n, y1), Line(n, y2), o1, o2)


@dataclass
class ConvexChain:
    """Arcs of one envelope, top to bottom in the chain's own frame.

    ``circles[t]`` supports arc t; ``verts[t]`` is the world point where
    arc t ends and arc t+1 starts.
    """
    side: int
    circles: list
    verts: list = field(default_factory=list)

    def __len__(self):
        return len(self.circles)

    def copy(self):
        return ConvexChain(self.side, list(self.circles), list(self.verts))

    def arcs(self, disks, alpha, top_owner, bottom_owner):
        """The chain as CircularArc values, clipped to the strip."""
        beta = side_frame(alpha, self.side)
        ytop, ybot = strip_heights(disks, beta, top_owner, bottom_owner)
        pts = [end_point(disks, self.circles[0], beta, ytop)] + list(self.verts) + \
            [end_point(disks, self.circles[-1], beta, ybot)]
        out = []
        for t, c in enumerate(self.circles):
            circ = disks.circle(c)
            out.append(CircularArc(circ, angle_on(circ, pts[t]), angle_on(circ, pts[t + 1]),
                                   CCW))
        return out


def strip_heights(disks, beta, top_owner, bottom_owner):
    """Own-frame heights of the top and bottom strip lines."""
    _, (nx, ny) = frame(beta)
    pt, pb = disks.pts[top_owner], disks.pts[bottom_owner]
    return pt[0] * nx + pt[1] * ny + disks.r, pb[0] * nx + pb[1] * ny - disks.r


def left_x(disks, i, beta, y):
    """Own-frame abscissa of the left half-circle of disk i at height y."""
    (ux, uy), (nx, ny) = frame(beta)
    px, py = disks.pts[i]
    d = y - (px * nx + py * ny)
    return px * ux + py * uy - math.sqrt(max(disks.r * disks.r - d * d, 0.0))


def end_point(disks, i, beta, y):
    (ux, uy), (nx, ny) = frame(beta)
    x = left_x(disks, i, beta, y)
    return (x * ux + y * nx, x * uy + y * ny)


class ChainOrderError(RuntimeError):
    pass


def _crossing(disks, i, k, beta, lo, hi):
    """World point where the left halves of disks i and k cross, with
    own-frame height in [lo, hi]."""
    (ux, uy), (nx, ny) = frame(beta)
    tol = 1e-9 * disks.scale
    cands = []
    for p in circle_circle_intersections(disks.circle(i), disks.circle(k)):
        y = p[0] * nx + p[1] * ny
        x = p[0] * ux + p[1] * uy
        xi = disks.pts[i][0] * ux + disks.pts[i][1] * uy
        xk = disks.pts[k][0] * ux + disks.pts[k][1] * uy
        if lo - tol <= y <= hi + tol and x <= xi + tol and x <= xk + tol:
            cands.append((p, y))
    if len(cands) == 1:
        return cands[0][0]
    # fall back to bisection of the difference on [lo, hi]
    a, b = lo, hi
    fa = left_x(disks, i, beta, a) - left_x(disks, k, beta, a)
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = left_x(disks, i, beta, m) - left_x(disks, k, beta, m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    y = 0.5 * (a + b)
    if cands:
        return min(cands, key=lambda c: abs(c[1] - y))[0]
    return end_point(disks, k, beta, y)


def build_chain(disks, beta, top_owner, bottom_owner):
    """Right-most envelope of left half-circles in frame beta, clipped to the
    strip, by one counter-clockwise pass over the hull with a stack."""
    (ux, uy), (nx, ny) = frame(beta)
    ytop, ybot = strip_heights(disks, beta, top_owner, bottom_owner)
    h, r = disks.h, disks.r
    X = disks.P[:, 0] * ux + disks.P[:, 1] * uy
    Y = disks.P[:, 0] * nx + disks.P[:, 1] * ny
    tol = 1e-12 * disks.scale

    def f(i, y):
        d = y - Y[i]
        return X[i] - math.sqrt(max(r * r - d * d, 0.0))

    ftop = X - np.sqrt(np.maximum(r * r - (ytop - Y) ** 2, 0.0))
    best = ftop.max()
    near = np.flatnonzero(ftop >= best - tol)
    if len(near) > 1:
        probe = ytop - 1e-7 * max(ytop - ybot, disks.scale * 1e-3)
        start = int(max(near, key=lambda i: (f(i, probe), -i)))
    else:
        start = int(near[0])
    stack = [(start, ytop, None)]   # (circle, top height of its arc, start vertex)
    for k in range(1, h):
        i = (start - k) % h
        while True:
            c, yc, _ = stack[-1]
            dt = f(i, yc) - f(c, yc)
            db = f(i, ybot) - f(c, ybot)
            if dt <= tol and db <= tol:
                break
            if dt >= -tol and db >= -tol:
                stack.pop()
                if not stack:
                    stack.append((i, ytop, None))
                    break
                continue
            if dt < 0 < db:
                p = _crossing(disks, i, c, beta, ybot, yc)
                stack.append((i, p[0] * nx + p[1] * ny, (float(p[0]), float(p[1]))))
                break
            raise ChainOrderError("arc order violates hull order")
    return [s[0] for s in stack], [s[2] for s in stack[1:]]


def build_convex_chains(hull_or_disks, r, tangents, alpha):
    """(S1, S2) from scratch at orientation alpha."""
    disks = hull_or_disks if isinstance(hull_or_disks, Disks) \
        else Disks(hull_or_disks.vertices, r)
    o1, o2 = tangents.owner1, tangents.owner2
    c1, v1 = build_chain(disks, alpha, o1, o2)
    c2, v2 = build_chain(disks, alpha + math.pi, o2, o1)
    return ConvexChain(1, c1, v1), ConvexChain(2, c2, v2)


# fixed-orientation optimum ---------------------------------------------

AA, VA, AV, VV, END_TOP, END_BOTTOM = "AA", "VA", "AV", "VV", "END_TOP", "END_BOTTOM"


class FixedOptimum(NamedTuple):
    """Where the optimum sits.  ``a``/``b`` are arc positions on S1/S2, or
    vertex positions for the pinned endpoint (VA: a is an S1 vertex,
    AV: b is an S2 vertex, VV: both)."""
    mode: str
    a: int
    b: int
    y: float
    q1: tuple
    q2: tuple
    length: float

    @property
    def segment(self):
        return Segment(Point2(*self.q1), Point2(*self.q2))


def _dot(p, n):
    return p[0] * n[0] + p[1] * n[1]


def fixed_optimum(disks, S1, S2, alpha, o1, o2):
    """Minimize q1 - q2 over the strip using only O(log) chain probes.

    f(y) = L1(y) - U2(y) is convex; for a fixed arc pair (a, b) its
    derivative has the sign of y - y_ab with y_ab the mean height of the
    two centers, which gives an exact sign test at every breakpoint.
    """
    (ux, uy), n = frame(alpha)
    pts = disks.pts
    Y1 = _dot(pts[o1], n) + disks.r
    Y2 = _dot(pts[o2], n) - disks.r
    V1, V2 = S1.verts, S2.verts
    m1, m2 = len(V1), len(V2)

    # S1 heights descend along the chain, S2 heights ascend (alpha frame)
    def a_above(y):
        return bisect_left(V1, -y, key=lambda v: -_dot(v, n))

    def a_below(y):
        return bisect_right(V1, -y, key=lambda v: -_dot(v, n))

    def b_above(y):
        return bisect_right(V2, y, key=lambda v: _dot(v, n))

    def b_below(y):
        return bisect_left(V2, y, key=lambda v: _dot(v, n))

    def yab(a, b):
        return 0.5 * (_dot(pts[S1.circles[a]], n) + _dot(pts[S2.circles[b]], n))

    def side(y, a_up, b_up, a_dn, b_dn):
        # +1: optimum above y, -1: below, 0: at y
        if y < yab(a_up, b_up):
            return 1
        if y > yab(a_dn, b_dn):
            return -1
        return 0

    def side_at(y):
        return side(y, a_above(y), b_above(y), a_below(y), b_below(y))

    mode = None
    if yab(0, m2) >= Y1:
        mode, a, b, y = END_TOP, 0, m2, Y1
    elif yab(m1, 0) <= Y2:
        mode, a, b, y = END_BOTTOM, m1, 0, Y2
    if mode is None:
        # locate among S1 breakpoints: first t with optimum below V1[t]
        lo, hi = 0, m1
        while lo < hi:
            t = (lo + hi) // 2
            s = side_at(_dot(V1[t], n))
            if s == 0:
                lo = hi = t
                mode = "S1V"
                break
            if s > 0:
                hi = t
            else:
                lo = t + 1
        if mode == "S1V":
            t = lo
            y = _dot(V1[t], n)
            bu, bd = b_above(y), b_below(y)
            if bu != bd:
                mode, a, b = VV, t, bd
            else:
                mode, a, b = VA, t, bu
        else:
            a = lo
            top = Y1 if a == 0 else _dot(V1[a - 1], n)
            bot = Y2 if a == m1 else _dot(V1[a], n)
            # S2 breakpoints strictly inside (bot, top)
            i0, i1 = b_above(bot), b_below(top)
            lo, hi = i0, i1
            mode = None
            while lo < hi:
                t = (lo + hi) // 2
                y = _dot(V2[t], n)
                s = side(y, a, t + 1, a, t)
                if s == 0:
                    mode, b = AV, t
                    break
                if s > 0:
                    lo = t + 1
                else:
                    hi = t
            if mode is None:
                b = lo
                y = min(max(yab(a, b), bot), top)
                mode = AA
    return _realize(disks, S1, S2, alpha, mode, a, b, y)


def _realize(disks, S1, S2, alpha, mode, a, b, y):
    (ux, uy), (nx, ny) = frame(alpha)
    r2 = disks.r * disks.r
    if mode in (VA, VV):
        q1 = S1.verts[a]
        y = q1[0] * nx + q1[1] * ny
        ca = S1.circles[a]
    else:
        ca = S1.circles[a]
        px, py = disks.pts[ca]
        d = y - (px * nx + py * ny)
        x = px * ux + py * uy - math.sqrt(max(r2 - d * d, 0.0))
        q1 = (x * ux + y * nx, x * uy + y * ny)
    if mode in (AV, VV):
        q2 = S2.verts[b]
    else:
        cb = S2.circles[b]
        px, py = disks.pts[cb]
        d = y - (px * nx + py * ny)
        x = px * ux + py * uy + math.sqrt(max(r2 - d * d, 0.0))
        q2 = (x * ux + y * nx, x * uy + y * ny)
    length = (q1[0] - q2[0]) * ux + (q1[1] - q2[1]) * uy
    return FixedOptimum(mode, a, b, y, q1, q2, length)


def shortest_segment_fixed_orientation(S1, S2, alpha, disks=None, owners=None):
    """Shortest alpha-oriented segment with q1 on S1 and q2 on S2."""
    if disks is None or not len(S1) or not len(S2):
        raise ValueError("no solution at alpha")
    if owners is None:
        owners = extreme_owners(disks, alpha)
    return fixed_optimum(disks, S1, S2, alpha, *owners).segment
