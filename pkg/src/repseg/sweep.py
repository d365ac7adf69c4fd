"""Rotational sweep for the globally shortest representative segment.

The orientation alpha runs over an interval of length pi.  Between events
the two chains keep their structure and the optimal segment keeps its
mode (which arcs or chain vertices carry q1 and q2), so its length is a
closed-form function of alpha.  Five certificate kinds predict the next
structural change:

1. q1 or q2 moves onto or off a chain vertex (or onto / off a strip line);
2. the owner of tau1 or tau2 advances to the next hull vertex;
3. the strip between tau1 and tau2 opens or closes;
4. a tangent line meets the chain end on its own circle (arc removed,
   added, or the end reverses);
5. a chain end passes a chain vertex (arc removed) or hits another circle
   (arc added, or an internal event that only narrows the next query).

Chain ends: each chain has a top and a bottom end in its own frame.  The
top end of S1 and the bottom end of S2 lie on tau1; the others on tau2.
"""
import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .chains import (AA, AV, END_BOTTOM, END_TOP, VA, VV, ConvexChain, Disks,
                     TangentPair, build_chain, build_convex_chains, end_point,
                     extreme_owners, fixed_optimum, fixed_orientation_tangents,
                     side_frame)
from .geometry import (CCW, CW, EPS, Circle, circle_circle_intersections, Line, Point2, Segment, frame,
                       lift_after, next_sinusoid_root, normalize_orientation,
                       point_segment_distances,
                       smallest_enclosing_disk)
from .hull import calipers, convex_hull, strip_width
from .index import DiskIndex, restart_solution_after_type3

ETA = 1e-12        # root lifting slack (rad)
DELTA = 1e-9       # look-ahead used to classify what holds just after an event
MODE_LOOKAHEAD = 1e-7
STALL_SLACK = 1e-9  # kind-1 roots this far behind alpha still fire
MAX_STALL = 5
KIND_ORDER = {3: 0, 2: 1, 4: 2, 5: 3, 1: 4}
TOP, BOTTOM = 0, 1


class SweepError(RuntimeError):
    pass


class Certificate(NamedTuple):
    kind: int
    alpha: float          # unwrapped violation orientation
    slot: tuple
    payload: Any = None

    @property
    def violation_orientation(self):
        return normalize_orientation(self.alpha)


class EventQueue:
    """One certificate per role slot: ("1", side), ("2", line), ("3",),
    ("45", side, end)."""

    def __init__(self):
        self.slots = {}

    def set(self, slot, cert):
        if cert is None or not math.isfinite(cert.alpha):
            self.slots.pop(slot, None)
        else:
            self.slots[slot] = cert

    def purge(self, kinds):
        for s in [s for s, c in self.slots.items() if c.kind in kinds]:
            del self.slots[s]

    def peek(self):
        if not self.slots:
            return None
        return min(self.slots.values(), key=lambda c: (c.alpha, KIND_ORDER[c.kind]))

    def __len__(self):
        return len(self.slots)

    def kinds(self):
        return sorted(c.kind for c in self.slots.values())


@dataclass
class SweepTrace:
    records: list = field(default_factory=list)
    counts: dict = field(default_factory=lambda: {k: 0 for k in range(1, 6)})
    internal: int = 0
    h: int = 0

    def add(self, kind, alpha, internal=False):
        self.records.append((kind, alpha, internal))
        self.counts[kind] += 1
        self.internal += internal

    @property
    def total(self):
        return len(self.records)

    def fitted_constant(self):
        """Smallest c with kinds 1-4 <= c h and kind 5 <= c h log2 h."""
        h = max(self.h, 2)
        c = max(self.counts[k] / h for k in range(1, 5))
        return max(c, self.counts[5] / (h * math.log2(h)))

    def to_json(self):
        return {"h": self.h, "counts": {str(k): v for k, v in self.counts.items()},
                "internal": self.internal, "total": self.total,
                "events": [{"kind": k, "alpha": a, "internal": i}
                           for k, a, i in self.records]}


class Mode(NamedTuple):
    """Closed-form description of the optimum between two events."""
    kind: str
    p: tuple      # centre of q1's circle, or q1's vertex
    q: tuple      # centre of q2's circle, or q2's vertex
    line_owner: Optional[tuple] = None


@dataclass
class SweepState:
    disks: Disks
    index: Optional[DiskIndex]
    alpha: float
    alpha_end: float
    o1: int
    o2: int
    exists: bool = False
    S1: Optional[ConvexChain] = None
    S2: Optional[ConvexChain] = None
    mode: Optional[Mode] = None
    opt: Any = None
    queue: EventQueue = field(default_factory=EventQueue)
    best: tuple = (math.inf, None, None)       # (length, alpha, mode)
    trace: SweepTrace = field(default_factory=SweepTrace)
    ranges: dict = field(default_factory=dict)  # narrowed type-5 ranges per end
    stall: int = 0      # consecutive kind-1 events at one orientation
    last_alpha: float = -math.inf

    @property
    def tangents(self):
        _, n = frame(self.alpha)
        p1, p2 = self.disks.pts[self.o1], self.disks.pts[self.o2]
        r = self.disks.r
        return TangentPair(Line(n, p1[0] * n[0] + p1[1] * n[1] + r),
                           Line(n, p2[0] * n[0] + p2[1] * n[1] - r), self.o1, self.o2)

    def chain(self, side):
        return self.S1 if side == 1 else self.S2

    def segment(self):
        if self.mode is None:
            return None
        _, q1, q2 = mode_eval(self.mode, self.alpha, self.disks.r)
        return Segment(Point2(*q1), Point2(*q2))


# small vector helpers -----------------------------------------------------

def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def _atan2(v):
    return math.atan2(v[1], v[0])


def _sqrt0(x):
    return math.sqrt(x) if x > 0.0 else 0.0


# modes ---------------------------------------------------------------------

def mode_eval(mode, alpha, r):
    """(length, q1, q2) of the mode at alpha."""
    (ux, uy), (nx, ny) = frame(alpha)
    u, n = (ux, uy), (nx, ny)
    k, p, q = mode.kind, mode.p, mode.q
    if k == AA:
        c = max(-1.0, min(1.0, _dot(_sub(q, p), n) / (2 * r)))
        s = _sqrt0(1 - c * c)
        w = (c * nx - s * ux, c * ny - s * uy)
        q1 = (p[0] + r * w[0], p[1] + r * w[1])
        q2 = (q[0] - r * w[0], q[1] - r * w[1])
    elif k == VV:
        q1, q2 = p, q
    else:
        if k == VA:
            y = _dot(p, n)
        elif k == AV:
            y = _dot(q, n)
        else:
            o = mode.line_owner
            y = _dot(o, n) + (r if k == END_TOP else -r)
        if k == VA:
            q1 = p
        else:
            d = y - _dot(p, n)
            x = _dot(p, u) - _sqrt0(r * r - d * d)
            q1 = (x * ux + y * nx, x * uy + y * ny)
        if k == AV:
            q2 = q
        else:
            d = y - _dot(q, n)
            x = _dot(q, u) + _sqrt0(r * r - d * d)
            q2 = (x * ux + y * nx, x * uy + y * ny)
    return (q1[0] - q2[0]) * ux + (q1[1] - q2[1]) * uy, q1, q2


def mode_critical(mode):
    """Orientation (mod 2pi) of the unique interior critical point, if the
    mode has a closed form for it."""
    k, p, q = mode.kind, mode.p, mode.q
    if k in (AA, VA, AV, VV):
        return _atan2(_sub(p, q))
    return None


def interval_minimum(mode, a, b, r):
    """(length, alpha) minimizing the mode's length over [a, b]."""
    cands = [a, b]
    crit = mode_critical(mode)
    if crit is not None:
        c = lift_after(crit, a, 0.0)
        if c - 2 * math.pi >= a:
            c -= 2 * math.pi
        if a <= c <= b:
            cands.append(c)
    elif b > a:
        res = minimize_scalar(lambda t: mode_eval(mode, t, r)[0], bounds=(a, b),
                              method="bounded", options={"xatol": 1e-10})
        cands.append(float(res.x))
        for t in np.linspace(a, b, 7)[1:-1]:
            cands.append(float(t))
    best = min(cands, key=lambda t: mode_eval(mode, t, r)[0])
    return mode_eval(mode, best, r)[0], best


def mode_from_opt(state, opt):
    S1, S2, pts = state.S1, state.S2, state.disks.pts
    k = opt.mode
    if k == AA:
        return Mode(AA, pts[S1.circles[opt.a]], pts[S2.circles[opt.b]])
    if k == VA:
        return Mode(VA, S1.verts[opt.a], pts[S2.circles[opt.b]])
    if k == AV:
        return Mode(AV, pts[S1.circles[opt.a]], S2.verts[opt.b])
    if k == VV:
        return Mode(VV, S1.verts[opt.a], S2.verts[opt.b])
    if k == END_TOP:
        return Mode(END_TOP, pts[S1.circles[opt.a]], pts[S2.circles[opt.b]], pts[state.o1])
    return Mode(END_BOTTOM, pts[S1.circles[opt.a]], pts[S2.circles[opt.b]], pts[state.o2])


def refresh_mode(state, lookahead=None):
    """Classify the optimum just after the current orientation.

    Tangential events separate heights only quadratically (about
    r t^2 / 2 after t radians), so the look-ahead must be far larger than
    roundoff; it stays below half the gap to the next structural event.
    """
    if not state.exists:
        state.mode = state.opt = None
        return
    if lookahead is None:
        nxt = min((c.alpha for c in state.queue.slots.values() if c.kind != 1),
                  default=math.inf)
        lookahead = min(MODE_LOOKAHEAD, 0.5 * (nxt - state.alpha))
        if not lookahead > 0:
            lookahead = DELTA
    opt = fixed_optimum(state.disks, state.S1, state.S2, state.alpha + lookahead,
                        state.o1, state.o2)
    state.opt = opt
    state.mode = mode_from_opt(state, opt)


# chain ends ---------------------------------------------------------------

def end_owner(state, side, end):
    return state.o1 if (side == 1) == (end == TOP) else state.o2


def end_sign(side, end):
    """nu_e(alpha) = sign * n(alpha): the outward normal of the end's line."""
    return (1 if side == 1 else -1) * (1 if end == TOP else -1)


def end_circle(chain, end):
    return chain.circles[0] if end == TOP else chain.circles[-1]


def end_position(state, side, end, alpha=None):
    alpha = state.alpha if alpha is None else alpha
    beta = side_frame(alpha, side)
    o = end_owner(state, side, end)
    _, n = frame(beta)
    po = state.disks.pts[o]
    y = _dot(po, n) + (state.disks.r if end == TOP else -state.disks.r)
    return end_point(state.disks, end_circle(state.chain(side), end), beta, y)


def end_growing(state, side, end):
    """Does the arc at this chain end lengthen as alpha increases?

    The end never lies left of the owner's tangent point T, and the line
    turns about T, so a top end off the owner's circle always rises and a
    bottom end off it always rises too (shrinking).  On the owner's circle
    the end is T itself, which runs counter-clockwise: away from the chain
    at the bottom, into it at the top.
    """
    j, o = end_circle(state.chain(side), end), end_owner(state, side, end)
    return (j != o) if end == TOP else (j == o)


def _on_left_half(state, x, c, side, alpha, tol=1e-9):
    u, _ = frame(side_frame(alpha, side))
    return _dot(_sub(x, state.disks.pts[c]), u) <= tol * state.disks.scale


def _tangent_point_alpha(state, x, o, side, end, after):
    """First alpha > after at which the tangent point of circle o on the
    end's line is x."""
    d = _sub(x, state.disks.pts[o])
    sg = end_sign(side, end)
    # sg * n(alpha) = d / r  ->  n(alpha) direction atan2(sg d) = alpha + pi/2
    th = _atan2((sg * d[0], sg * d[1])) - math.pi / 2
    return lift_after(th, after, ETA)


def _line_reach_alpha(state, x, o, side, end, after, sign):
    """First alpha >= after - ETA at which world point x lies on the end's
    line, with the given crossing direction of (x - p_o) . nu - r."""
    sg = end_sign(side, end)
    d = _sub(x, state.disks.pts[o])
    return next_sinusoid_root((sg * d[0], sg * d[1]), state.disks.r, after, sign, ETA)


def default_range(state, side, end):
    """Hull positions strictly between the end circle and the line owner,
    on the side where new arcs of this end come from (cyclic, inclusive
    bounds), or None when empty."""
    chain = state.chain(side)
    j, o = end_circle(chain, end), end_owner(state, side, end)
    h = state.disks.h
    if end == TOP:
        lo, hi = (j + 1) % h, (o - 1) % h
        n = (o - j) % h - 1
    else:
        lo, hi = (o + 1) % h, (j - 1) % h
        n = (j - o - 1) % h if j == o else (j - o) % h - 1
    if n <= 0:
        return None
    return lo, hi


def make_certificate_type5(state, range_low, range_high, side, end):
    """Next hit of the growing chain end, as it moves along its circle,
    against the disks of the hull range [range_low, range_high]."""
    slot = ("45", side, end)
    if range_low is None:
        return None
    chain = state.chain(side)
    j, o = end_circle(chain, end), end_owner(state, side, end)
    q = end_position(state, side, end)
    winding = CW if end == TOP else CCW
    hit = state.index.circular_ray_query(range_low, range_high, state.disks.circle(j),
                                         q, winding)
    if hit is None:
        return None
    x, k = hit
    x = (float(x[0]), float(x[1]))
    a = state.alpha
    for _ in range(2):
        a = _line_reach_alpha(state, x, o, side, end, a, -1)
        if not math.isfinite(a) or a > state.alpha_end + 1.0:
            return None
        if _on_left_half(state, x, j, side, a):
            return Certificate(5, a, slot, ("hit", x, k, (range_low, range_high)))
        a += 1e-9
    return None


def make_end_certificate(state, side, end):
    """Certificate of kind 4 or 5 for one chain end."""
    slot = ("45", side, end)
    chain = state.chain(side)
    j, o = end_circle(chain, end), end_owner(state, side, end)
    best = None

    def keep(c):
        nonlocal best
        if c is not None and math.isfinite(c.alpha) and (best is None or c.alpha < best.alpha):
            best = c
    if not end_growing(state, side, end) and len(chain) > 1:
        v = chain.verts[0] if end == TOP else chain.verts[-1]
        if j == o:
            keep(Certificate(4, _tangent_point_alpha(state, v, o, side, end, state.alpha),
                             slot, ("remove", v)))
        else:
            keep(Certificate(5, _line_reach_alpha(state, v, o, side, end, state.alpha, +1),
                             slot, ("remove", v)))
    if end == BOTTOM and j != o:
        # the owner's tangent point catches up with the rising end
        for x in circle_circle_intersections(state.disks.circle(o), state.disks.circle(j)):
            x = (float(x[0]), float(x[1]))
            a = _tangent_point_alpha(state, x, o, side, end, state.alpha)
            if _on_left_half(state, x, j, side, a):
                keep(Certificate(4, a, slot, ("meet", x)))
    if end_growing(state, side, end) and state.index is not None:
        key = (side, end)
        rng = state.ranges[key] if key in state.ranges else default_range(state, side, end)
        if rng is not None:
            keep(make_certificate_type5(state, rng[0], rng[1], side, end))
    return best


# kinds 1-3 -----------------------------------------------------------------

def _type1_conditions(state):
    """Validity conditions of the current mode as (w, c, slot side, tag):
    the mode holds while w . n(alpha) - c >= 0.

    With m the mean of the two centres, the free optimum sits at height
    m . n; a pinned endpoint stays put while the one-sided slopes on both
    arcs around it keep opposite signs.  In the alpha frame S1 vertices
    descend with their index and S2 vertices ascend.
    """
    S1, S2, pts = state.S1, state.S2, state.disks.pts
    opt, r = state.opt, state.disks.r
    V1, V2 = S1.verts, S2.verts
    m1, m2 = len(V1), len(V2)
    out = []

    def mid(a, b):
        return (0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]))

    def above(hi, lo, side, tag):
        # hi . n >= lo . n
        out.append((_sub(hi, lo), 0.0, side, tag))
    k = opt.mode
    if k == AA:
        m = mid(pts[S1.circles[opt.a]], pts[S2.circles[opt.b]])
        if opt.a > 0:
            above(V1[opt.a - 1], m, 1, "q1-vertex")
        if opt.a < m1:
            above(m, V1[opt.a], 1, "q1-vertex")
        if opt.a == 0:
            out.append((_sub(pts[state.o1], m), -r, 1, "q-top"))
        if opt.a == m1:
            out.append((_sub(m, pts[state.o2]), -r, 1, "q-bottom"))
        if opt.b > 0:
            above(m, V2[opt.b - 1], 2, "q2-vertex")
        if opt.b < m2:
            above(V2[opt.b], m, 2, "q2-vertex")
    elif k == VA:
        v, pb = V1[opt.a], pts[S2.circles[opt.b]]
        above(v, mid(pts[S1.circles[opt.a]], pb), 1, "q1-leave")
        above(mid(pts[S1.circles[opt.a + 1]], pb), v, 1, "q1-leave")
        if opt.b > 0:
            above(v, V2[opt.b - 1], 2, "q2-vertex")
        if opt.b < m2:
            above(V2[opt.b], v, 2, "q2-vertex")
    elif k == AV:
        w, pa = V2[opt.b], pts[S1.circles[opt.a]]
        above(w, mid(pa, pts[S2.circles[opt.b + 1]]), 2, "q2-leave")
        above(mid(pa, pts[S2.circles[opt.b]]), w, 2, "q2-leave")
        if opt.a > 0:
            above(V1[opt.a - 1], w, 1, "q1-vertex")
        if opt.a < m1:
            above(w, V1[opt.a], 1, "q1-vertex")
    elif k == END_TOP:
        m = mid(pts[S1.circles[opt.a]], pts[S2.circles[opt.b]])
        out.append((_sub(m, pts[state.o1]), r, 1, "leave-top"))
    elif k == END_BOTTOM:
        m = mid(pts[S1.circles[opt.a]], pts[S2.circles[opt.b]])
        out.append((_sub(pts[state.o2], m), r, 1, "leave-bottom"))
    return out


def _type1_candidates(state):
    """Earliest violated condition per side: (alpha, tag) pairs."""
    best = {1: (math.inf, None), 2: (math.inf, None)}
    if state.opt.mode == VV:
        # only ever instantaneous: reclassify further ahead
        return (state.alpha, "vv"), best[2]
    # a condition that failed a hair before alpha means the mode was
    # classified on the wrong side of a near-coincident switch: fire now
    slack = STALL_SLACK if state.stall < MAX_STALL else -ETA
    for w, c, side, tag in _type1_conditions(state):
        a = next_sinusoid_root(w, c, state.alpha - slack, -1, 0.0)
        a = max(a, state.alpha)
        if a < best[side][0]:
            best[side] = (a, tag)
    return best[1], best[2]


def make_certificate(kind, state, slot=None):
    """Certificate of kind 1, 2 or 3 (or 4 for a chain end) for the state."""
    pts, r, h = state.disks.pts, state.disks.r, state.disks.h
    if kind == 1:
        (a1, t1), (a2, t2) = _type1_candidates(state)
        if slot == ("1", 2):
            return Certificate(1, a2, ("1", 2), t2)
        if slot == ("1", 1):
            return Certificate(1, a1, ("1", 1), t1)
        return min(Certificate(1, a1, ("1", 1), t1), Certificate(1, a2, ("1", 2), t2),
                   key=lambda c: c.alpha)
    if kind == 2:
        line = 1 if slot is None else slot[1]
        o = state.o1 if line == 1 else state.o2
        nxt = (o - 1) % h
        d = _sub(pts[nxt], pts[o])
        a = next_sinusoid_root(d, 0.0, state.alpha, -1 if line == 1 else +1, ETA)
        return Certificate(2, a, ("2", line), nxt)
    if kind == 3:
        d = _sub(pts[state.o2], pts[state.o1])
        sign = +1 if state.exists else -1
        a = next_sinusoid_root(d, 2 * r, state.alpha, sign, ETA)
        return Certificate(3, a, ("3",), "disappear" if state.exists else "appear")
    if kind in (4, 5):
        side, end = slot[1], slot[2]
        return make_end_certificate(state, side, end)
    raise ValueError("unknown certificate kind %r" % (kind,))


def _queue_type1(state):
    if not state.exists:
        return
    state.queue.set(("1", 1), make_certificate(1, state, ("1", 1)))
    state.queue.set(("1", 2), make_certificate(1, state, ("1", 2)))


def _queue_end(state, side, end):
    state.queue.set(("45", side, end), make_end_certificate(state, side, end))


def _ends_on_line(line):
    return [(1, TOP), (2, BOTTOM)] if line == 1 else [(1, BOTTOM), (2, TOP)]


# state construction --------------------------------------------------------

def initial_state(disks, alpha, alpha_end=None, index=None):
    o1, o2 = extreme_owners(disks, alpha)
    st = SweepState(disks, index, alpha, alpha + math.pi if alpha_end is None else alpha_end,
                    o1, o2)
    st.trace.h = disks.h
    p1, p2 = disks.pts[o1], disks.pts[o2]
    _, n = frame(alpha)
    st.exists = _dot(_sub(p2, p1), n) <= 2 * disks.r
    if st.exists and index is not None:
        c1, v1 = build_chain(disks, alpha, o1, o2)
        c2, v2 = build_chain(disks, alpha + math.pi, o2, o1)
        st.S1, st.S2 = ConvexChain(1, c1, v1), ConvexChain(2, c2, v2)
        refresh_mode(st, 0.0)
    for line in (1, 2):
        st.queue.set(("2", line), make_certificate(2, st, ("2", line)))
    st.queue.set(("3",), make_certificate(3, st))
    if st.exists and index is not None:
        for side in (1, 2):
            for end in (TOP, BOTTOM):
                _queue_end(st, side, end)
        _queue_type1(st)
        _update_best(st, st.alpha, st.alpha)
    return st


def _update_best(state, a, b):
    if state.mode is None:
        return
    L, t = interval_minimum(state.mode, a, b, state.disks.r)
    if L < state.best[0]:
        state.best = (L, t, state.mode)


# the two driver operations --------------------------------------------------

def advance_to_event(state, cert=None):
    """Move to the earliest violation, folding the elapsed interval into the
    best-so-far."""
    cert = state.queue.peek() if cert is None else cert
    target = min(cert.alpha, state.alpha_end) if cert is not None else state.alpha_end
    target = max(target, state.alpha)
    if state.exists:
        _update_best(state, state.alpha, target)
    state.alpha = target
    return state


def handle_event(state, cert):
    kind = cert.kind
    internal = False
    if kind == 1:
        state.stall = state.stall + 1 if cert.alpha <= state.last_alpha else 0
        refresh_mode(state, None if state.stall == 0 else DELTA * 10 ** min(state.stall + 2, 5))
        _queue_type1(state)
    elif kind == 2:
        line = cert.slot[1]
        if line == 1:
            state.o1 = cert.payload
        else:
            state.o2 = cert.payload
        state.queue.set(cert.slot, make_certificate(2, state, cert.slot))
        state.queue.set(("3",), make_certificate(3, state))
        if state.exists:
            for side, end in _ends_on_line(line):
                state.ranges.pop((side, end), None)
                _queue_end(state, side, end)
            refresh_mode(state)
            _queue_type1(state)
    elif kind == 3:
        if cert.payload == "disappear":
            state.exists = False
            state.S1 = state.S2 = None
            state.mode = state.opt = None
            state.ranges.clear()
            state.queue.purge({1, 4, 5})
        else:
            state.exists = True
            (j1, _), (j2, _) = restart_solution_after_type3(state.index, state.disks.r,
                                                            state.alpha, state.tangents)
            state.S1, state.S2 = ConvexChain(1, [j1], []), ConvexChain(2, [j2], [])
            state.ranges.clear()
            for side in (1, 2):
                for end in (TOP, BOTTOM):
                    _queue_end(state, side, end)
            refresh_mode(state)
            _queue_type1(state)
        state.queue.set(("3",), make_certificate(3, state))
    else:
        side, end = cert.slot[1], cert.slot[2]
        chain = state.chain(side)
        what = cert.payload[0]
        key = (side, end)
        if what == "remove":
            if end == TOP:
                chain.circles.pop(0)
                chain.verts.pop(0)
            else:
                chain.circles.pop()
                chain.verts.pop()
            state.ranges.pop(key, None)
        elif what == "meet":
            _add_arc(chain, end, end_owner(state, side, end), cert.payload[1])
            state.ranges.pop(key, None)
        elif what == "hit":
            _, x, k, (lo, hi) = cert.payload
            if _on_left_half(state, x, k, side, state.alpha, tol=0.0):
                _add_arc(chain, end, k, x)
                state.ranges.pop(key, None)
            else:
                internal = True
                h = state.disks.h
                j = end_circle(chain, end)
                if end == TOP:
                    n = (k - j) % h - 1
                    state.ranges[key] = ((j + 1) % h, (k - 1) % h) if n > 0 else None
                else:
                    n = (j - k) % h - 1
                    state.ranges[key] = ((k + 1) % h, (j - 1) % h) if n > 0 else None
        else:
            raise SweepError("malformed certificate %r" % (cert,))
        if internal:
            _queue_end(state, side, end)
        else:
            # a short chain shares its vertices between both ends
            for e in (TOP, BOTTOM):
                if e == end or len(chain) <= 2:
                    _queue_end(state, side, e)
            refresh_mode(state)
            _queue_type1(state)
    if kind != 1:
        state.stall = 0
    state.last_alpha = state.alpha
    state.trace.add(kind, state.alpha, internal)
    return state


def _add_arc(chain, end, c, x):
    if end == TOP:
        chain.circles.insert(0, c)
        chain.verts.insert(0, x)
    else:
        chain.circles.append(c)
        chain.verts.append(x)


def run_sweep(disks, alpha_start, on_event=None, max_events=None):
    index = DiskIndex(disks.pts, disks.r)
    st = initial_state(disks, alpha_start, index=index)
    if max_events is None:
        h = disks.h
        max_events = 200 * h * max(1, int(math.log2(h) + 1)) + 1000
    while True:
        cert = st.queue.peek()
        if cert is None or cert.alpha > st.alpha_end:
            advance_to_event(st, None if cert is None else cert)
            break
        advance_to_event(st, cert)
        del st.queue.slots[cert.slot]
        handle_event(st, cert)
        if on_event is not None:
            on_event(st, cert)
        if st.trace.total > max_events:
            raise SweepError("event budget exceeded")
    return st


# top level -------------------------------------------------------------------

class SolveResult(NamedTuple):
    status: str                     # "segment", "point" or "none"
    segment: Optional[Segment]
    length: float
    trace: SweepTrace
    alpha: Optional[float] = None


def _start_orientation(disks, w_alpha, r):
    """Orientation near the width orientation but clear of every hull-edge
    direction, preferring one where the strip still exists."""
    P = disks.P
    E = np.roll(P, -1, axis=0) - P
    angs = np.sort(np.mod(np.arctan2(E[:, 1], E[:, 0]), math.pi))
    diffs = np.mod(angs - w_alpha, math.pi)
    diffs = diffs[diffs > 1e-12]
    gap = float(diffs.min()) if len(diffs) else math.pi
    for t in (0.5, 0.25, 0.1, 1e-2, 1e-3, 1e-4):
        a = w_alpha + t * gap
        if strip_width(P, a) <= 2 * r:
            return a
    return w_alpha + 0.5 * gap


def sweep_shortest_segment(points, r, on_event=None, seed=0):
    """Globally shortest valid segment and the sweep trace.

    A point answer when the smallest enclosing disk has radius <= r; None
    when no orientation admits a solution.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(P) == 0:
        raise ValueError("need at least one point")
    hull = convex_hull(P)
    trace = SweepTrace(h=len(hull.indices))
    sed = smallest_enclosing_disk(hull.vertices)
    scale = max(1.0, float(np.abs(hull.vertices).max()))
    if sed.radius <= r + EPS * scale:
        c = Point2(float(sed.center[0]), float(sed.center[1]))
        return SolveResult("point", Segment(c, c), 0.0, trace)
    V = hull.vertices
    if len(V) == 2:
        a, b = V
        d = b - a
        D = float(math.hypot(*d))
        e = d / D
        q1 = Point2(*(b - r * e))
        q2 = Point2(*(a + r * e))
        return SolveResult("segment", Segment(q1, q2), D - 2 * r, trace,
                           normalize_orientation(math.atan2(d[1], d[0])))
    cal = calipers(hull)
    disks = Disks(V, r)
    if cal.width > 2 * r + EPS * disks.scale:
        return SolveResult("none", None, math.inf, trace)
    if cal.width >= 2 * r - EPS * disks.scale:
        # a single feasible orientation: solve it directly
        a = cal.width_orientation
        tp = fixed_orientation_tangents(disks, r, a)
        if tp is None:
            return SolveResult("none", None, math.inf, trace)
        S1, S2 = build_convex_chains(disks, r, tp, a)
        opt = fixed_optimum(disks, S1, S2, a, tp.owner1, tp.owner2)
        return SolveResult("segment", opt.segment, opt.length, trace, a)
    last = None
    for attempt in range(4):
        try:
            if attempt == 0:
                Q, rot = V, 0.0
            else:
                # tiny seeded rotation to break ties, undone on output
                rot = (np.random.default_rng(seed + attempt).uniform(-1, 1)) * 1e-7
                c, s = math.cos(rot), math.sin(rot)
                Q = V @ np.array([[c, s], [-s, c]])
            dk = Disks(Q, r)
            st = run_sweep(dk, _start_orientation(dk, normalize_orientation(
                cal.width_orientation + rot), r), on_event=on_event)
            L, al, mode = st.best
            if mode is None:
                return SolveResult("none", None, math.inf, st.trace)
            _, q1, q2 = mode_eval(mode, al, r)
            if rot:
                c, s = math.cos(-rot), math.sin(-rot)
                q1 = (q1[0] * c - q1[1] * s, q1[0] * s + q1[1] * c)
                q2 = (q2[0] * c - q2[1] * s, q2[0] * s + q2[1] * c)
            seg = Segment(Point2(*q1), Point2(*q2))
            if point_segment_distances(V, seg).max() > r + 1e-7 * disks.scale:
                raise SweepError("sweep produced an invalid segment")
            return SolveResult("segment", seg, float(L), st.trace,
                               normalize_orientation(al - rot))
        except SweepError as exc:
            last = exc
    raise last


# replay checking -----------------------------------------------------------

class ConsistencyChecker:
    """Event hook comparing the maintained state with a from-scratch rebuild
    midway to the next event.  Gaps shorter than ``min_gap`` are skipped:
    there the rebuild cannot tell the two sides of the events apart."""

    def __init__(self, tol=1e-7, min_gap=1e-9, check_mode=False):
        self.tol, self.min_gap, self.check_mode = tol, min_gap, check_mode
        self.checked = 0
        self.mismatches = []

    def __call__(self, state, cert):
        nxt = state.queue.peek()
        a_next = min(nxt.alpha if nxt is not None else state.alpha_end, state.alpha_end)
        if a_next - state.alpha < self.min_gap:
            return
        am = 0.5 * (state.alpha + a_next)
        disks = state.disks
        self.checked += 1
        o1, o2 = extreme_owners(disks, am)
        _, n = frame(am)
        exists = _dot(_sub(disks.pts[o2], disks.pts[o1]), n) <= 2 * disks.r
        problem = None
        if exists != state.exists:
            problem = "existence"
        elif exists:
            c1, v1 = build_chain(disks, am, o1, o2)
            c2, v2 = build_chain(disks, am + math.pi, o2, o1)
            if (o1, o2) != (state.o1, state.o2):
                problem = "owners"
            elif c1 != state.S1.circles or c2 != state.S2.circles:
                problem = "chain arcs"
            elif not (_close(v1, state.S1.verts, self.tol) and
                      _close(v2, state.S2.verts, self.tol)):
                problem = "chain vertices"
            elif self.check_mode:
                opt = fixed_optimum(disks, state.S1, state.S2, am, o1, o2)
                if mode_from_opt(state, opt) != state.mode:
                    problem = "mode"
        if problem:
            self.mismatches.append((cert.kind, state.alpha, problem))


def _close(a, b, tol):
    return len(a) == len(b) and all(abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol
                                    for p, q in zip(a, b))
