"""Common intersections of equal disks and the query structure over the hull.

The hull is cut greedily into runs whose turning is at most pi/2 and whose
end points are at most r apart; the disks of such a run have a nonempty
common intersection.  Each run gets a balanced tree whose nodes store the
boundary of the common intersection of their leaves.  Two queries are
answered by decomposing a cyclic index range into O(log h) nodes:

* circular ray: a point moving along a circle, where does it first leave
  the common intersection of the range;
* line: the chord of a line through that common intersection (with a
  descent rule when the chord is empty).
"""
import math
from typing import NamedTuple, Optional

from .geometry import (CCW, CW, Circle, CircularArc, Point2, angle_on,
                       circle_circle_intersections, frame)


class CommonIntersectionBoundary(NamedTuple):
    """Arcs of the boundary in counter-clockwise order.

    ``owners[k]`` supports arc k, which runs from ``vertices[k]`` to
    ``vertices[k + 1]`` (cyclically).  A full circle has one owner and no
    vertices.
    """
    owners: tuple
    vertices: tuple
    empty: bool = False

    @property
    def full(self):
        return len(self.owners) == 1 and not self.vertices

    def arcs(self, centers, r):
        if self.empty:
            return []
        out = []
        if self.full:
            c = Circle(Point2(*centers[self.owners[0]]), r)
            return [CircularArc(c, 0.0, 0.0, CCW, full=True)]
        m = len(self.owners)
        for k, o in enumerate(self.owners):
            c = Circle(Point2(*centers[o]), r)
            out.append(CircularArc(c, angle_on(c, self.vertices[k]),
                                   angle_on(c, self.vertices[(k + 1) % m]), CCW))
        return out


EMPTY = CommonIntersectionBoundary((), (), True)


def _inside(p, c, r, tol):
    return math.hypot(p[0] - c[0], p[1] - c[1]) <= r + tol


def _normalized(owners, verts):
    k = min(range(len(owners)), key=lambda i: owners[i])
    return CommonIntersectionBoundary(tuple(owners[k:] + owners[:k]),
                                      tuple(verts[k:] + verts[:k]))


def clip(boundary, centers, r, new, tol=1e-12):
    """Boundary of (region) intersected with the disk of ``centers[new]``."""
    if boundary.empty:
        return boundary
    cn = centers[new]
    cnew = Circle(Point2(*cn), r)
    scale = max(1.0, r)
    if boundary.full:
        o = boundary.owners[0]
        c0 = centers[o]
        if math.hypot(c0[0] - cn[0], c0[1] - cn[1]) <= tol * scale:
            return boundary
        pts = circle_circle_intersections(Circle(Point2(*c0), r), cnew, tol=0.0)
        if len(pts) < 2:
            return EMPTY
        a, b = pts
        # the arc of the old circle inside the new disk runs a -> b ccw iff its
        # midpoint is on the new center's side
        mid_ang = angle_on(Circle(Point2(*c0), r), a)
        sw = (angle_on(Circle(Point2(*c0), r), b) - mid_ang) % (2 * math.pi)
        mid = (c0[0] + r * math.cos(mid_ang + sw / 2), c0[1] + r * math.sin(mid_ang + sw / 2))
        if not _inside(mid, cn, r, 0.0):
            a, b = b, a
        return _normalized([o, new], [a, b])
    m = len(boundary.owners)
    verts = boundary.vertices
    pieces = []   # (owner, start, end, inside)
    for k, o in enumerate(boundary.owners):
        c = centers[o]
        circ = Circle(Point2(*c), r)
        s, e = verts[k], verts[(k + 1) % m]
        ts = angle_on(circ, s)
        sw = (angle_on(circ, e) - ts) % (2 * math.pi)
        cuts = []
        if math.hypot(c[0] - cn[0], c[1] - cn[1]) > tol * scale:
            for p in circle_circle_intersections(circ, cnew, tol=0.0):
                t = (angle_on(circ, p) - ts) % (2 * math.pi)
                if 1e-13 < t < sw - 1e-13:
                    cuts.append((t, p))
        cuts.sort()
        bounds = [(0.0, s)] + cuts + [(sw, e)]
        for (t0, p0), (t1, p1) in zip(bounds, bounds[1:]):
            tm = ts + 0.5 * (t0 + t1)
            mid = (c[0] + r * math.cos(tm), c[1] + r * math.sin(tm))
            pieces.append((o, p0, p1, _inside(mid, cn, r, 0.0)))
    flags = [p[3] for p in pieces]
    if all(flags):
        return boundary
    if not any(flags):
        return EMPTY
    n = len(pieces)
    start = next(i for i in range(n) if flags[i] and not flags[i - 1])
    pieces = pieces[start:] + pieces[:start]
    owners, out_verts = [], []
    prev_inside = True
    for o, p0, p1, ins in pieces:
        if ins:
            if not prev_inside:
                # gap closed by an arc of the new disk
                owners.append(new)
                out_verts.append(last_end)
            if owners and owners[-1] == o and prev_inside:
                last_end = p1
                continue
            owners.append(o)
            out_verts.append(p0)
            last_end = p1
        prev_inside = ins
    if not prev_inside:
        owners.append(new)
        out_verts.append(last_end)
    return _normalized(owners, out_verts)


def common_intersection(disks, ids=None):
    """Incremental clipping.  ``disks`` are Circles of equal radius; owners
    in the result are positions in ``disks`` (or the matching ``ids``)."""
    disks = list(disks)
    if not disks:
        return EMPTY
    ids = list(range(len(disks))) if ids is None else list(ids)
    centers = {i: (float(d[0][0]), float(d[0][1])) for i, d in zip(ids, disks)}
    r = float(disks[0][1])
    b = CommonIntersectionBoundary((ids[0],), ())
    for i in ids[1:]:
        b = clip(b, centers, r, i)
        if b.empty:
            break
    return b


# per-disk primitives shared by node queries ------------------------------

def disk_exit(center, r, c, q, winding, skip=1e-12):
    """(parameter, point) of the first exit from the disk at ``center`` of a
    point leaving q along circle c; the parameter is the turned angle."""
    (cx, cy), rc = c
    px, py = center
    dx, dy = px - cx, py - cy
    d = math.hypot(dx, dy)
    if d == 0.0 or d > rc + r or d < abs(rc - r):
        return None
    a = (rc * rc - r * r + d * d) / (2 * d)
    hh = rc * rc - a * a
    if hh <= 0.0:
        return None
    h = math.sqrt(hh)
    sgn = -1.0 if winding == CW else 1.0
    t0 = math.atan2(q[1] - cy, q[0] - cx)
    best = None
    for sg in (1.0, -1.0):
        x = cx + a * dx / d - sg * h * dy / d
        y = cy + a * dy / d + sg * h * dx / d
        tx, ty = -sgn * (y - cy), sgn * (x - cx)
        if tx * (x - px) + ty * (y - py) <= 0:
            continue
        t = ((math.atan2(y - cy, x - cx) - t0) * sgn) % (2 * math.pi)
        if t <= skip:
            t += 2 * math.pi
        if best is None or t < best[0]:
            best = (t, Point2(x, y))
    return best


def chord(center, r, line):
    """Chord of a disk on ``line`` as (s_left, s_right) along the line
    direction, or None."""
    n = line.normal
    hgt = center[0] * n[0] + center[1] * n[1] - line.offset
    if abs(hgt) > r:
        return None
    w = math.sqrt(max(r * r - hgt * hgt, 0.0))
    s = center[0] * n[1] - center[1] * n[0]
    return s - w, s + w


# partition and trees -----------------------------------------------------

def _turn(a, b, c):
    v1 = (b[0] - a[0], b[1] - a[1])
    v2 = (c[0] - b[0], c[1] - b[1])
    return abs(math.atan2(v1[0] * v2[1] - v1[1] * v2[0], v1[0] * v2[0] + v1[1] * v2[1]))


def partition(pts, r, tol=1e-12):
    """Greedy maximal runs [(s, t)] over hull positions 0..h-1."""
    h = len(pts)
    runs = []
    s = 0
    while s < h:
        t, turning = s, 0.0
        while t + 1 < h:
            extra = _turn(pts[t - 1], pts[t], pts[t + 1]) if t > s else 0.0
            if turning + extra > math.pi / 2 + tol:
                break
            if math.hypot(pts[t + 1][0] - pts[s][0], pts[t + 1][1] - pts[s][1]) > r + tol:
                break
            turning += extra
            t += 1
        runs.append((s, t))
        s = t + 1
    return runs


class Node:
    __slots__ = ("lo", "hi", "boundary", "left", "right")

    def __init__(self, lo, hi, boundary, left=None, right=None):
        self.lo, self.hi, self.boundary = lo, hi, boundary
        self.left, self.right = left, right

    @property
    def owners(self):
        return self.boundary.owners


class LineHit(NamedTuple):
    left: Point2
    right: Optional[Point2]
    left_owner: int
    right_owner: Optional[int]
    empty: bool


class DiskIndex:
    """Partition of the hull plus one tree per run."""

    def __init__(self, pts, r):
        self.pts = [(float(x), float(y)) for x, y in pts]
        self.r = float(r)
        self.h = len(self.pts)
        self.centers = dict(enumerate(self.pts))
        self.runs = partition(self.pts, self.r)
        self.run_of = [0] * self.h
        self.roots = []
        for k, (s, t) in enumerate(self.runs):
            for i in range(s, t + 1):
                self.run_of[i] = k
            self.roots.append(self._build(s, t))
        self.last_touched = 0

    def _build(self, lo, hi):
        if lo == hi:
            return Node(lo, hi, CommonIntersectionBoundary((lo,), ()))
        mid = (lo + hi) // 2
        left, right = self._build(lo, mid), self._build(mid + 1, hi)
        b = left.boundary
        for o in right.owners:
            b = clip(b, self.centers, self.r, o)
        return Node(lo, hi, b, left, right)

    def nodes(self):
        stack = list(self.roots)
        while stack:
            nd = stack.pop()
            yield nd
            if nd.left is not None:
                stack += [nd.left, nd.right]

    # range handling ------------------------------------------------------

    def linear_ranges(self, i, j):
        """Cyclic range i..j (inclusive) as at most two increasing ranges."""
        h = self.h
        if not (0 <= i < h and 0 <= j < h):
            raise ValueError("range index out of bounds")
        if i <= j:
            return [(i, j)]
        return [(i, h - 1), (0, j)]

    def canonical(self, lo, hi):
        """Canonical nodes covering lo..hi in increasing index order, and the
        number of runs touched."""
        out, runs = [], 0
        k = self.run_of[lo]
        while lo <= hi:
            s, t = self.runs[k]
            a, b = max(lo, s), min(hi, t)
            runs += 1
            self._collect(self.roots[k], a, b, out)
            lo = t + 1
            k += 1
        return out, runs

    def _collect(self, nd, a, b, out):
        if b < nd.lo or nd.hi < a:
            return
        if a <= nd.lo and nd.hi <= b:
            out.append(nd)
            return
        self._collect(nd.left, a, b, out)
        self._collect(nd.right, a, b, out)

    def _range_nodes(self, i, j):
        nodes, touched = [], 0
        for lo, hi in self.linear_ranges(i, j):
            nd, t = self.canonical(lo, hi)
            nodes += nd
            touched += t
        self.last_touched = touched
        return nodes

    # circular ray query --------------------------------------------------

    def _node_exit(self, nd, c, q, winding, tol):
        if all(_inside(q, self.centers[o], self.r, tol) for o in nd.owners):
            best = None
            for o in nd.owners:
                e = disk_exit(self.centers[o], self.r, c, q, winding)
                if e is not None and (best is None or e[0] < best[0]):
                    best = (e[0], e[1], o)
            return best
        if nd.left is None:
            e = disk_exit(self.centers[nd.lo], self.r, c, q, winding)
            return None if e is None else (e[0], e[1], nd.lo)
        # q outside this common intersection: answer per child
        a = self._node_exit(nd.left, c, q, winding, tol)
        b = self._node_exit(nd.right, c, q, winding, tol)
        if a is None or (b is not None and b[0] < a[0]):
            return b
        return a

    def circular_ray_query(self, i, j, c, q, winding, prefilter=True):
        """First exit of q moving along c (in ``winding``) from the common
        intersection of disks i..j (cyclic).  Returns (hit, owner) or None."""
        h = self.h
        if prefilter:
            # disks whose centers are farther than 2r from c's center cannot
            # contain any point of c; trim them off both ends
            lim = 2 * self.r + 1e-12 * max(1.0, self.r)
            cc = c[0]
            n = (j - i) % h + 1

            def far(k):
                p = self.pts[k % h]
                return math.hypot(p[0] - cc[0], p[1] - cc[1]) > lim
            a, b = 0, n - 1
            while a <= b and far(i + a):
                a += 1
            while b >= a and far(i + b):
                b -= 1
            if a > b:
                self.last_touched = 0
                return None
            i, j = (i + a) % h, (i + b) % h
        tol = 1e-9 * max(1.0, self.r)
        best = None
        for nd in self._range_nodes(i, j):
            e = self._node_exit(nd, c, q, winding, tol)
            if e is not None and (best is None or e[0] < best[0]):
                best = e
        if best is None:
            return None
        return best[1], best[2]

    # line query ----------------------------------------------------------

    def _node_chord(self, nd, line):
        lo, hi, lo_o, hi_o = -math.inf, math.inf, None, None
        for o in nd.owners:
            ch = chord(self.centers[o], self.r, line)
            if ch is None:
                return None
            if ch[0] > lo:
                lo, lo_o = ch[0], o
            if ch[1] < hi:
                hi, hi_o = ch[1], o
        if lo > hi:
            return None
        return lo, hi, lo_o, hi_o

    def _descend(self, nd, line, cands):
        """Largest left chord end per maximal non-empty subtree under nd."""
        if nd.left is None:
            ch = chord(self.centers[nd.lo], self.r, line)
            if ch is not None:
                cands.append((ch[0], nd.lo))
            return
        for child in (nd.right, nd.left):
            ch = self._node_chord(child, line)
            if ch is None:
                self._descend(child, line, cands)
            else:
                cands.append((ch[0], ch[2]))

    def line_query(self, i, j, line):
        """Chord of ``line`` through the common intersection of disks i..j.

        When that intersection misses the line, ``right`` is None, ``empty``
        is set and ``left`` is the largest left chord end over the disks of
        the range that meet the line: empty nodes are split until their
        parts have non-empty chords.
        """
        nodes = self._range_nodes(i, j)
        lefts, rights = [], []
        empty = False
        for nd in reversed(nodes):
            ch = self._node_chord(nd, line)
            if ch is None:
                self._descend(nd, line, lefts)
                empty = True
                continue
            lefts.append((ch[0], ch[2]))
            rights.append((ch[1], ch[3]))
        if not lefts:
            return None
        sl, ol = max(lefts, key=lambda c: (c[0], -c[1]))
        n = line.normal
        u = (n[1], -n[0])

        def at(s):
            return Point2(s * u[0] + line.offset * n[0], s * u[1] + line.offset * n[1])
        if not empty:
            sr, orr = min(rights, key=lambda c: (c[0], c[1]))
            if sl <= sr:
                return LineHit(at(sl), at(sr), ol, orr, False)
        return LineHit(at(sl), None, ol, None, True)


def build_index(hull_or_pts, r):
    pts = getattr(hull_or_pts, "vertices", hull_or_pts)
    if len(pts) < 3:
        raise ValueError("the index needs a hull with at least 3 vertices")
    return DiskIndex(pts, r)


def circular_ray_query(index, i, j, c, q, direction):
    return index.circular_ray_query(i, j, c, q, direction)


def line_query(index, i, j, line):
    return index.line_query(i, j, line)


# restart after a type-3 event ------------------------------------------

def _cap(index, beta, y):
    """Hull position whose disk has the right-most left chord end on the
    horizontal line at own-frame height y (frame beta), and that point."""
    pts, r, h = index.pts, index.r, index.h
    (ux, uy), (nx, ny) = frame(beta)
    X = [p[0] * ux + p[1] * uy for p in pts]
    top = max(range(h), key=lambda k: (X[k], -k))
    xhat = X[top]
    center = (xhat * ux + y * nx, xhat * uy + y * ny)

    def grow(step, pred):
        k, n = 0, 0
        while n < h - 1 and pred((top + step * (k + 1)) % h):
            k += 1
            n += 1
        return k
    right_of = lambda k: X[k] > xhat - r - 1e-12 * max(1.0, r)
    in_c = lambda k: _inside(pts[k], center, r, 1e-12 * max(1.0, r))
    # contiguous candidate range around the extreme point, then its part
    # inside the circle C centred at (xhat, y)
    cw = grow(1, right_of)
    ccw = grow(-1, right_of)
    if cw + ccw + 1 > h:
        cw, ccw = h - 1, 0
    cw_in = grow(1, lambda k: in_c(k) and right_of(k))
    ccw_in = grow(-1, lambda k: in_c(k) and right_of(k))
    cw_in, ccw_in = min(cw_in, cw), min(ccw_in, ccw)
    # line in world coordinates: n . p = y, direction u
    from .geometry import Line
    line = Line((nx, ny), y)
    ranges = [((top - ccw_in) % h, (top + cw_in) % h)]
    if cw > cw_in:
        ranges.append(((top + cw_in + 1) % h, (top + cw) % h))
    if ccw > ccw_in:
        ranges.append(((top - ccw) % h, (top - ccw_in - 1) % h))
    best = None
    for a, b in ranges:
        hit = index.line_query(a, b, line)
        if hit is None:
            continue
        s = hit.left[0] * ux + hit.left[1] * uy
        if best is None or s > best[0]:
            best = (s, hit.left_owner, hit.left)
    if best is None:
        return None, None
    return best[1], best[2]


def restart_solution_after_type3(index, r, alpha, tangents):
    """Seeds of S1 and S2 when a solution appears at orientation alpha.

    The strip has collapsed to the line midway between tau1 and tau2; the
    seeds are the disks realizing the two caps of the hippodrome on it.
    The two line owners, and a hull neighbour lying flush on the same
    tangent, only touch that line, so rounding can drop them from the line
    query; they are compared explicitly.
    Returns ((S1 position, cap point), (S2 position, cap point)).
    """
    y = 0.5 * (tangents.tau1.offset + tangents.tau2.offset)
    out = []
    for beta, yy in ((alpha, y), (alpha + math.pi, -y)):
        k, pt = _cap(index, beta, yy)
        (ux, uy), (nx, ny) = frame(beta)
        best = (-math.inf, None, None) if k is None else (pt[0] * ux + pt[1] * uy, k, pt)
        h = len(index.pts)
        near = {(o + d) % h for o in (tangents.owner1, tangents.owner2) for d in (-1, 0, 1)}
        for o in sorted(near):
            p = index.pts[o]
            dy = p[0] * nx + p[1] * ny - yy
            x = p[0] * ux + p[1] * uy + math.sqrt(max(r * r - dy * dy, 0.0))
            if r - abs(dy) > 1e-9 * max(1.0, r):
                continue
            if x > best[0] or (x == best[0] and best[1] is not None and o < best[1]):
                best = (x, o, Point2(x * ux + yy * nx, x * uy + yy * ny))
        out.append((best[1], best[2]))
    return out[0], out[1]
