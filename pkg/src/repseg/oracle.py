"""Brute-force references.

Nothing here touches the chain machinery, certificates or the index
trees: every answer comes from scanning points, disks or a grid.
"""
import math
from typing import Any, NamedTuple, Optional

import numpy as np

from .geometry import CW, Point2, Segment, frame, point_segment_distances


class OracleResult(NamedTuple):
    value: Any              # Segment, hit, or None when infeasible
    length: float           # math.inf when infeasible
    cost: int               # function evaluations / samples used
    tolerance: float        # resolution actually achieved
    alpha: Optional[float] = None
    feasible: bool = True


def validate_segment(points, r, s, tol=1e-9):
    if s is None:
        return False
    return bool(point_segment_distances(points, s).max() <= r + tol)


def max_point_distance(points, s):
    return float(point_segment_distances(points, s).max())


# fixed orientation ------------------------------------------------------

def _frame_coords(P, alpha):
    (ux, uy), (nx, ny) = frame(alpha)
    return P[:, 0] * ux + P[:, 1] * uy, P[:, 0] * nx + P[:, 1] * ny


def _extent(X, Y, y, r):
    """Required segment extent at offset y: (L, U) with the segment [U, L].

    L = max_l X_l - s_l and U = min_l X_l + s_l, s_l the half chord of
    disk l on the horizontal line at y.  Works on broadcast arrays whose
    last axis runs over points.
    """
    s = np.sqrt(np.maximum(r * r - (y - Y) ** 2, 0.0))
    return (X - s).max(axis=-1), (X + s).min(axis=-1)


def _segment_from(alpha, y, L, U):
    (ux, uy), (nx, ny) = frame(alpha)
    L, U, y = float(L), float(U), float(y)
    if L < U:
        L = U = 0.5 * (L + U)
    return Segment(Point2(L * ux + y * nx, L * uy + y * ny),
                   Point2(U * ux + y * nx, U * uy + y * ny))


def brute_force_fixed_orientation(points, r, alpha, grid_n=4096, refine=True,
                                  iters=200):
    """Shortest alpha-oriented valid segment by an offset grid (+ ternary)."""
    if grid_n < 2:
        raise ValueError("grid_n must be >= 2")
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    X, Y = _frame_coords(P, alpha)
    lo, hi = Y.max() - r, Y.min() + r
    if lo > hi:
        return OracleResult(None, math.inf, 0, 0.0, alpha, feasible=False)
    ys = np.linspace(lo, hi, grid_n)
    L, U = _extent(X, Y, ys[:, None], r)
    f = np.maximum(L - U, 0.0)
    k = int(np.argmin(f))
    cost = grid_n
    step = (hi - lo) / (grid_n - 1)
    if not refine:
        y = ys[k]
        return OracleResult(_segment_from(alpha, y, L[k], U[k]), float(f[k]), cost,
                            float(step), alpha)
    a, b = ys[max(k - 1, 0)], ys[min(k + 1, grid_n - 1)]
    g = (math.sqrt(5) - 1) / 2
    c, d = b - g * (b - a), a + g * (b - a)

    def fy(y):
        L, U = _extent(X, Y, y, r)
        return max(L - U, 0.0)
    fc, fd = fy(c), fy(d)
    for _ in range(iters):
        if b - a <= 1e-15 * max(1.0, abs(a)):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = fy(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = fy(d)
        cost += 1
    cands = [ys[k], 0.5 * (a + b)]
    y = min(cands, key=fy)
    L, U = _extent(X, Y, y, r)
    return OracleResult(_segment_from(alpha, y, L, U), float(max(L - U, 0.0)), cost,
                        float(b - a), float(alpha))


# all orientations -------------------------------------------------------

def _batch_lengths(X, Y, r, coarse=33, iters=80):
    """Fixed-orientation minima for a batch of orientations (rows)."""
    lo = Y.max(axis=1) - r
    hi = Y.min(axis=1) + r
    ok = lo <= hi
    out = np.full(len(X), np.inf)
    yb = np.full(len(X), np.nan)
    if not ok.any():
        return out, yb
    X, Y, lo, hi = X[ok], Y[ok], lo[ok], hi[ok]
    t = np.linspace(0.0, 1.0, coarse)
    ys = lo[:, None] + (hi - lo)[:, None] * t[None, :]          # (K, g)
    L, U = _extent(X[:, None, :], Y[:, None, :], ys[:, :, None], r)
    f = np.maximum(L - U, 0.0)
    k = f.argmin(axis=1)
    rows = np.arange(len(X))
    a = ys[rows, np.maximum(k - 1, 0)]
    b = ys[rows, np.minimum(k + 1, coarse - 1)]
    g = (math.sqrt(5) - 1) / 2

    def fy(y):
        L, U = _extent(X, Y, y[:, None], r)
        return np.maximum(L - U, 0.0)
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = fy(c), fy(d)
    for _ in range(iters):
        left = fc <= fd
        na = np.where(left, a, c)
        nb = np.where(left, d, b)
        nc = np.where(left, nb - g * (nb - na), d)
        nd = np.where(left, c, na + g * (nb - na))
        fnew = fy(np.where(left, nc, nd))
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
        a, b, c, d = na, nb, nc, nd
    y = 0.5 * (a + b)
    fm = fy(y)
    fk = f[rows, k]
    best = np.minimum(fm, fk)
    out[ok] = best
    yb[ok] = np.where(fm <= fk, y, ys[rows, k])
    return out, yb


def brute_force_shortest(points, r, k_orientations=4096, refine=True, n_basins=8,
                         chunk=512):
    """Global minimum over orientations: grid over [0, pi), then golden
    refinement in a window of +-2 grid steps around the best grid minima."""
    if k_orientations < 16:
        raise ValueError("k_orientations must be >= 16")
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(P) == 1:
        return OracleResult(Segment(Point2(*P[0]), Point2(*P[0])), 0.0, 1, 0.0, 0.0)
    alphas = np.arange(k_orientations) * (math.pi / k_orientations)
    vals = np.empty(k_orientations)
    for s in range(0, k_orientations, chunk):
        al = alphas[s:s + chunk]
        c, si = np.cos(al)[:, None], np.sin(al)[:, None]
        X = P[:, 0][None, :] * c + P[:, 1][None, :] * si
        Y = -P[:, 0][None, :] * si + P[:, 1][None, :] * c
        vals[s:s + chunk], _ = _batch_lengths(X, Y, r)
    cost = k_orientations
    if not np.isfinite(vals).any():
        return OracleResult(None, math.inf, cost, 0.0, None, feasible=False)
    step = math.pi / k_orientations
    kbest = int(np.argmin(vals))
    best = brute_force_fixed_orientation(P, r, alphas[kbest], refine=True)
    if not refine or best.length == 0.0:
        return best._replace(cost=cost, tolerance=step)
    # local minima of the grid sequence (cyclic), best first
    prev, nxt = np.roll(vals, 1), np.roll(vals, -1)
    minima = np.flatnonzero((vals <= prev) & (vals <= nxt) & np.isfinite(vals))
    minima = minima[np.argsort(vals[minima])][:n_basins]
    g = (math.sqrt(5) - 1) / 2

    def length(al):
        res = brute_force_fixed_orientation(P, r, al, grid_n=65, refine=True)
        return res.length, res
    windows = [(alphas[k] - 2 * step, alphas[k] + 2 * step) for k in minima]
    windows += _edge_windows(P, r, step)
    for a, b in windows:
        for t in (a, b):
            f, res = length(t)
            if res.feasible and f < best.length:
                best = res
        c, d = b - g * (b - a), a + g * (b - a)
        (fc, rc), (fd, rd) = length(c), length(d)
        while b - a > 1e-11:
            if fc <= fd:
                b, d, fd, rd = d, c, fc, rc
                c = b - g * (b - a)
                fc, rc = length(c)
            else:
                a, c, fc, rc = c, d, fd, rd
                d = a + g * (b - a)
                fd, rd = length(d)
            cost += 1
        for f, res in ((fc, rc), (fd, rd)):
            if res.feasible and f < best.length:
                best = res
    return best._replace(cost=cost, tolerance=1e-11)


def _edge_windows(P, r, step):
    """Feasible windows around hull-edge orientations, where the strip
    width is locally minimal; narrow windows slip between grid samples.
    The hull comes from scipy, independent of the package's own."""
    from scipy.spatial import ConvexHull, QhullError
    try:
        V = P[ConvexHull(P).vertices]
    except (QhullError, ValueError):
        return []

    def width(al):
        y = V[:, 1] * math.cos(al) - V[:, 0] * math.sin(al)
        return y.max() - y.min()
    E = np.roll(V, -1, axis=0) - V
    out = []
    for th in np.mod(np.arctan2(E[:, 1], E[:, 0]), math.pi):
        if width(th) > 2 * r:
            continue
        lo_hi = []
        for sgn in (-1.0, 1.0):
            inside, far = 0.0, 2 * step
            if width(th + sgn * far) <= 2 * r:
                lo_hi.append(th + sgn * far)
                continue
            for _ in range(60):
                mid = 0.5 * (inside + far)
                if width(th + sgn * mid) <= 2 * r:
                    inside = mid
                else:
                    far = mid
            lo_hi.append(th + sgn * inside)
        out.append((lo_hi[0], lo_hi[1]))
    return out


# chain envelope ---------------------------------------------------------

def sampled_envelope(points, r, alpha, ys):
    """Per offset y, the index of the disk whose left half-circle is right-most
    and the envelope value; the envelope of the right half-circles mirrored."""
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    X, Y = _frame_coords(P, alpha)
    ys = np.asarray(ys, dtype=float)
    s = np.sqrt(np.maximum(r * r - (ys[:, None] - Y[None, :]) ** 2, 0.0))
    left = X[None, :] - s
    right = X[None, :] + s
    return (left.argmax(axis=1), left.max(axis=1),
            right.argmin(axis=1), right.min(axis=1))


# index queries ----------------------------------------------------------

def _centers(disks):
    return [(float(d[0][0]), float(d[0][1])) for d in disks]


def linear_scan_circular_query(disks, c, q, winding, skip=1e-12):
    """First point where q, moving along circle c in ``winding``, leaves one
    of the disks.  Returns (hit, position in ``disks``) or None."""
    (cx, cy), rc = c
    t0 = math.atan2(q[1] - cy, q[0] - cx)
    sgn = -1.0 if winding == CW else 1.0
    best = (math.inf, None, None)
    for k, ((px, py), rk) in enumerate(disks):
        dx, dy = px - cx, py - cy
        d = math.hypot(dx, dy)
        if d == 0.0 or d > rc + rk or d < abs(rc - rk):
            continue
        a = (rc * rc - rk * rk + d * d) / (2 * d)
        hh = rc * rc - a * a
        if hh <= 0.0:
            continue
        h = math.sqrt(hh)
        for sg in (1.0, -1.0):
            x = cx + a * dx / d - sg * h * dy / d
            y = cy + a * dy / d + sg * h * dx / d
            th = math.atan2(y - cy, x - cx)
            t = ((th - t0) * sgn) % (2 * math.pi)
            # tangent of the motion at x
            tx, ty = -sgn * (y - cy), sgn * (x - cx)
            if tx * (x - px) + ty * (y - py) <= 0:
                continue
            if t <= skip:
                t += 2 * math.pi
            if t < best[0]:
                best = (t, Point2(x, y), k)
    if best[1] is None:
        return None
    return best[1], best[2]


def linear_scan_line_query(disks, line):
    """Intersections of ``line`` with the common intersection of the disks.

    Returns (left, right, left_owner, right_owner, empty).  Left is the
    smaller coordinate along the line direction.  When the common
    intersection misses the line, ``left`` is the largest left endpoint of
    the per-disk chords and ``right`` is None.  None when no disk meets it.
    """
    n = line.normal
    u = (n[1], -n[0])
    best_l, best_r = (-math.inf, None), (math.inf, None)
    meets = False
    for k, ((px, py), rk) in enumerate(disks):
        hgt = px * n[0] + py * n[1] - line.offset
        if abs(hgt) > rk:
            continue
        meets = True
        w = math.sqrt(max(rk * rk - hgt * hgt, 0.0))
        s = px * u[0] + py * u[1]
        if s - w > best_l[0]:
            best_l = (s - w, k)
        if s + w < best_r[0]:
            best_r = (s + w, k)
    if not meets:
        return None

    def at(s):
        return Point2(s * u[0] + line.offset * n[0], s * u[1] + line.offset * n[1])
    if len(disks) and all(abs(px * n[0] + py * n[1] - line.offset) <= rk
                          for (px, py), rk in disks) and best_l[0] <= best_r[0]:
        return at(best_l[0]), at(best_r[0]), best_l[1], best_r[1], False
    return at(best_l[0]), None, best_l[1], None, True
