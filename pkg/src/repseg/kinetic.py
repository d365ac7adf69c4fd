"""Chasing algorithm for moving points.

At every integer timestamp a canonical segment is placed on the midline
of the narrowest strip in the diametric orientation, spanning the two
diametric points.  Between timestamps the output slides linearly from the
previous canonical segment to the current one, and it is switched off
whenever the extent at the last timestamp exceeds 2r sqrt2 + 2.
"""
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .geometry import Point2, Segment, point_segment_distances
from .hull import calipers, convex_hull
from .sweep import sweep_shortest_segment

SQRT2 = math.sqrt(2.0)
PROSE, FORMULA = "prose", "formula"


class Trajectory(NamedTuple):
    """positions[i, k] is point k at integer timestamp i (i = 0..T)."""
    positions: np.ndarray

    @property
    def T(self):
        return len(self.positions) - 1

    @property
    def n(self):
        return self.positions.shape[1]

    def at(self, t):
        """Positions at real time t, linear between samples."""
        if t <= 0:
            return self.positions[0]
        if t >= self.T:
            return self.positions[-1]
        i = int(math.floor(t))
        b = t - i
        return (1 - b) * self.positions[i] + b * self.positions[i + 1]

    def max_step(self):
        d = np.diff(self.positions, axis=0)
        return float(np.hypot(d[..., 0], d[..., 1]).max()) if len(d) else 0.0


def as_trajectory(data, max_speed=1.0, tol=1e-9):
    """Validate (T+1, n, 2) positions: finite and at most unit speed."""
    X = np.asarray(data.positions if isinstance(data, Trajectory) else data, dtype=float)
    if X.ndim != 3 or X.shape[2] != 2 or X.shape[0] < 2 or X.shape[1] < 1:
        raise ValueError("trajectories need shape (timestamps >= 2, points >= 1, 2)")
    if not np.all(np.isfinite(X)):
        raise ValueError("non-finite trajectory coordinates")
    d = np.diff(X, axis=0)
    step = np.hypot(d[..., 0], d[..., 1])
    if step.max() > max_speed + tol:
        i, k = np.unravel_index(int(step.argmax()), step.shape)
        raise ValueError("point %d moves %.6g between timestamps %d and %d (limit %g)"
                         % (k, step[i, k], i, i + 1, max_speed))
    return Trajectory(X)


class CanonicalSolution(NamedTuple):
    timestamp: int
    q1_prime: Point2
    q2_prime: Point2
    pair: tuple
    extent: float
    width: float
    diameter: float

    @property
    def segment(self):
        return Segment(self.q1_prime, self.q2_prime)


class KineticOutput(NamedTuple):
    t: float
    value: Optional[Segment]


def width_extent_diameter(points):
    """(W, E, D): strip width, extent orthogonal to the diametric pair and
    diameter.  W <= E <= W sqrt2 always holds."""
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    hull = convex_hull(P)
    cal = calipers(hull)
    if cal.diameter == 0.0:
        return 0.0, 0.0, 0.0
    a, b = P[cal.diametric_pair[0]], P[cal.diametric_pair[1]]
    u = (b - a) / cal.diameter
    y = P @ np.array([-u[1], u[0]])
    return cal.width, float(y.max() - y.min()), cal.diameter


def canonical_solution(points, r=None, timestamp=0):
    """Canonical segment: through the feet of the diametric points on the
    midline of the narrowest strip in the diametric orientation.  ``r`` is
    accepted for symmetry with the other solvers and not used."""
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(P) == 0:
        raise ValueError("canonical_solution needs at least one point")
    hull = convex_hull(P)
    cal = calipers(hull)
    i, j = cal.diametric_pair
    if cal.diameter == 0.0:
        p = Point2(float(P[i, 0]), float(P[i, 1]))
        return CanonicalSolution(timestamp, p, p, (i, j), 0.0, 0.0, 0.0)
    a, b = P[i], P[j]
    u = (b - a) / cal.diameter
    n = np.array([-u[1], u[0]])
    y = P @ n
    c = 0.5 * (y.max() + y.min())
    q1 = (a @ u) * u + c * n
    q2 = (b @ u) * u + c * n
    return CanonicalSolution(timestamp, Point2(float(q1[0]), float(q1[1])),
                             Point2(float(q2[0]), float(q2[1])), (i, j),
                             float(y.max() - y.min()), cal.width, cal.diameter)


def _dist(p, q):
    return math.hypot(p[0] - q[0], p[1] - q[1])


def _matched(prev, cur):
    """cur with its endpoints swapped if that keeps them nearer to prev's."""
    if prev is None:
        return cur
    keep = max(_dist(prev.q1_prime, cur.q1_prime), _dist(prev.q2_prime, cur.q2_prime))
    swap = max(_dist(prev.q1_prime, cur.q2_prime), _dist(prev.q2_prime, cur.q1_prime))
    if swap < keep:
        return cur._replace(q1_prime=cur.q2_prime, q2_prime=cur.q1_prime)
    return cur


class Chaser:
    """Canonical solutions for every timestamp plus the interpolated output."""

    def __init__(self, trajectories, r, interpolation=PROSE, relabel=True):
        if r < 1:
            raise ValueError("r must be >= 1 for the kinetic bounds (got %g)" % r)
        if interpolation not in (PROSE, FORMULA):
            raise ValueError("interpolation must be %r or %r" % (PROSE, FORMULA))
        self.traj = as_trajectory(trajectories)
        self.r = float(r)
        self.interpolation = interpolation
        self.gate = 2 * self.r * SQRT2 + 2
        self.canon = []
        prev = None
        for i in range(self.traj.T + 1):
            cur = canonical_solution(self.traj.positions[i], r, i)
            if relabel:
                cur = _matched(prev, cur)
            self.canon.append(cur)
            prev = cur

    def active(self, t):
        return self.canon[int(math.floor(t))].extent <= self.gate

    def evaluate(self, t):
        T = self.traj.T
        if not 1 <= t <= T:
            raise ValueError("t must lie in [1, %d] (got %g)" % (T, t))
        i = int(math.floor(t))
        if not self.active(t):
            return KineticOutput(t, None)
        b = t - i
        if self.interpolation == FORMULA:
            b = 1 - b
        a, c = self.canon[i - 1], self.canon[i]
        q1 = ((1 - b) * a.q1_prime[0] + b * c.q1_prime[0], (1 - b) * a.q1_prime[1] + b * c.q1_prime[1])
        q2 = ((1 - b) * a.q2_prime[0] + b * c.q2_prime[0], (1 - b) * a.q2_prime[1] + b * c.q2_prime[1])
        return KineticOutput(t, Segment(Point2(*q1), Point2(*q2)))


def evaluate(trajectories, r, t, interpolation=PROSE):
    return Chaser(trajectories, r, interpolation).evaluate(t)


# verification -----------------------------------------------------------------

@dataclass
class StabilityReport:
    r: float
    samples: int = 0
    max_speed: float = 0.0
    max_length_excess: float = -math.inf   # max |A| - OPT (certified upper bound)
    max_distance: float = 0.0
    gate_lower_violations: int = 0          # W <= 2r but output empty
    gate_upper_violations: int = 0          # W > 2r sqrt2 + 4 but output shown
    flicker_violations: int = 0
    lower_samples: int = 0                  # samples with W <= 2r
    upper_samples: int = 0                  # samples with W > 2r sqrt2 + 4
    opt_evaluations: int = 0
    speed_turn_on: float = 0.0              # speed in windows right after an off step
    tol: float = 1e-6
    notes: list = field(default_factory=list)

    @property
    def speed_bound(self):
        return (2 * self.r + 1) * SQRT2 + 2

    @property
    def length_bound(self):
        return 2 * self.r + 4

    @property
    def distance_bound(self):
        return 2 * self.r * SQRT2 + 4

    @property
    def checks(self):
        return {
            "gate_lower": self.gate_lower_violations == 0,
            "gate_upper": self.gate_upper_violations == 0,
            "speed": self.max_speed <= self.speed_bound + self.tol,
            "length": self.max_length_excess <= self.length_bound + self.tol,
            "distance": self.max_distance <= self.distance_bound + self.tol,
            "flicker": self.flicker_violations == 0,
        }

    @property
    def passed(self):
        return all(self.checks.values())

    def merge(self, other):
        self.samples += other.samples
        self.max_speed = max(self.max_speed, other.max_speed)
        self.max_length_excess = max(self.max_length_excess, other.max_length_excess)
        self.max_distance = max(self.max_distance, other.max_distance)
        self.gate_lower_violations += other.gate_lower_violations
        self.gate_upper_violations += other.gate_upper_violations
        self.flicker_violations += other.flicker_violations
        self.lower_samples += other.lower_samples
        self.upper_samples += other.upper_samples
        self.opt_evaluations += other.opt_evaluations
        self.speed_turn_on = max(self.speed_turn_on, other.speed_turn_on)
        self.notes += other.notes
        return self

    def to_json(self):
        return {"r": self.r, "samples": self.samples, "max_speed": self.max_speed,
                "speed_bound": self.speed_bound,
                "max_length_excess": self.max_length_excess,
                "length_bound": self.length_bound, "max_distance": self.max_distance,
                "distance_bound": self.distance_bound,
                "gate_lower_violations": self.gate_lower_violations,
                "gate_upper_violations": self.gate_upper_violations,
                "flicker_violations": self.flicker_violations,
                "lower_samples": self.lower_samples, "upper_samples": self.upper_samples,
                "opt_evaluations": self.opt_evaluations,
                "speed_turn_on": self.speed_turn_on,
                "checks": self.checks, "passed": self.passed, "notes": self.notes}


def optimum_length(points, r):
    """Length of the shortest valid segment, or None when none exists."""
    res = sweep_shortest_segment(points, r)
    return None if res.status == "none" else res.length


def verify_stability(trajectories, r, dt=1.0 / 64, exact_opt=False, interpolation=PROSE,
                     t_range=None):
    """Sample [1, T] on a dt grid and check every stability bound.

    OPT(t) >= D(t) - 2r, so the length bound is certified without solving
    whenever |A(t)| <= D(t) + 4; the exact optimum is computed only when
    that test is inconclusive, or everywhere with ``exact_opt``.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    ch = trajectories if isinstance(trajectories, Chaser) else \
        Chaser(trajectories, r, interpolation)
    traj, r = ch.traj, ch.r
    rep = StabilityReport(r)
    lo, hi = t_range if t_range is not None else (1.0, float(traj.T))
    steps = int(round((hi - lo) / dt))
    ts = lo + dt * np.arange(steps + 1)
    ts = ts[ts <= hi + 1e-12]
    prev = None
    status = {}
    for t in ts:
        t = float(min(t, hi))
        out = ch.evaluate(t)
        P = traj.at(t)
        W, _, D = width_extent_diameter(P)
        rep.samples += 1
        on = out.value is not None
        # the gate reads floor(t); status must be constant on [i, i+1)
        i = int(math.floor(t))
        if t < traj.T:
            if status.setdefault(i, on) != on:
                rep.flicker_violations += 1
        if W <= 2 * r + 1e-9:
            rep.lower_samples += 1
            rep.gate_lower_violations += not on
        if W > 2 * r * SQRT2 + 4 + 1e-9:
            rep.upper_samples += 1
            rep.gate_upper_violations += on
        if on:
            s = out.value
            rep.max_distance = max(rep.max_distance,
                                   float(point_segment_distances(P, s).max()))
            if W <= 2 * r:
                L = s.length
                excess = L - max(D - 2 * r, 0.0)
                if exact_opt or excess > rep.length_bound:
                    opt = optimum_length(P, r)
                    rep.opt_evaluations += 1
                    if opt is not None:
                        excess = L - opt
                rep.max_length_excess = max(rep.max_length_excess, excess)
        if prev is not None and on and prev[1] is not None and t - prev[0] > 0:
            a, b = prev[1], out.value
            v = max(_dist(a.a, b.a), _dist(a.b, b.b)) / (t - prev[0])
            rep.max_speed = max(rep.max_speed, v)
            j = int(math.floor(prev[0]))
            if j >= 2 and not ch.active(j - 1):
                rep.speed_turn_on = max(rep.speed_turn_on, v)
        prev = (t, out.value)
    if rep.max_length_excess == -math.inf:
        rep.max_length_excess = 0.0
    return rep


# generators -------------------------------------------------------------------

def random_trajectories(n=20, T=50, seed=0, spread=6.0, speed=1.0):
    """Points with smoothly turning headings and speeds up to ``speed``,
    starting in a disk of radius ``spread`` and pulled gently back toward
    the origin so the set keeps crossing the gate threshold."""
    rng = np.random.default_rng(seed)
    ang = rng.uniform(0, 2 * math.pi, n)
    rad = spread * np.sqrt(rng.uniform(0, 1, n))
    X = np.empty((T + 1, n, 2))
    X[0] = np.c_[rad * np.cos(ang), rad * np.sin(ang)]
    head = rng.uniform(0, 2 * math.pi, n)
    for i in range(T):
        head += rng.normal(0, 0.6, n)
        v = np.c_[np.cos(head), np.sin(head)] * rng.uniform(0, speed, n)[:, None]
        home = -X[i] / max(spread, 1e-9) * 0.35
        step = v + home
        L = np.hypot(step[:, 0], step[:, 1])
        step *= np.minimum(1.0, speed / np.maximum(L, 1e-300))[:, None] * (1 - 1e-12)
        X[i + 1] = X[i] + step
    return Trajectory(X)


def rotating_polygon(k=7, T=40, radius=3.0, turn=0.05, center=(0.0, 0.0)):
    """Regular k-gon spinning by ``turn`` radians per timestamp."""
    if radius * 2 * math.sin(turn / 2) > 1:
        raise ValueError("rotation too fast for unit speed")
    i = np.arange(T + 1)[:, None]
    th = 2 * math.pi * np.arange(k)[None, :] / k + turn * i
    X = np.stack([center[0] + radius * np.cos(th), center[1] + radius * np.sin(th)], axis=-1)
    return Trajectory(X)
