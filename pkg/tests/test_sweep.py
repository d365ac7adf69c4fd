import copy
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from repseg.chains import Disks, build_convex_chains, fixed_optimum, fixed_orientation_tangents
from repseg.generators import feasible_radius, generate
from repseg.geometry import frame, inner_bitangents, Circle
from repseg.hull import calipers, convex_hull, strip_width
from repseg.oracle import brute_force_shortest, validate_segment
from repseg.sweep import (AA, ConsistencyChecker, Mode, advance_to_event, handle_event,
                          initial_state, interval_minimum, make_certificate, mode_eval,
                          mode_from_opt, sweep_shortest_segment, SweepError)
from repseg.index import DiskIndex


def instance(kind, n, seed):
    P = generate(kind, n, seed)
    return P, feasible_radius(P, np.random.default_rng(seed))


def replay(P, r, hook):
    """The sweep loop with a hook seeing the state before and after each
    event."""
    V = convex_hull(P).vertices
    disks = Disks(V, r)
    st_ = initial_state(disks, calipers(convex_hull(V)).width_orientation + 1e-3,
                        index=DiskIndex(disks.pts, r))
    while True:
        cert = st_.queue.peek()
        if cert is None or cert.alpha > st_.alpha_end:
            break
        advance_to_event(st_, cert)
        del st_.queue.slots[cert.slot]
        before = copy.deepcopy((st_.S1, st_.S2, st_.exists))
        handle_event(st_, cert)
        hook(before, st_, cert)
    return st_


# examples -------------------------------------------------------------------

def test_collinear_span_ten():
    P = np.c_[np.linspace(0, 10, 7), np.zeros(7)]
    res = sweep_shortest_segment(P, 1.0)
    assert res.status == "segment" and res.length == pytest.approx(8, abs=1e-12)
    assert validate_segment(P, 1.0, res.segment)


def test_point_answer():
    rng = np.random.default_rng(0)
    a = rng.uniform(0, 2 * math.pi, 20)
    P = 0.5 * np.c_[np.cos(a), np.sin(a)] * rng.uniform(0, 1, (20, 1)) + [3, -2]
    res = sweep_shortest_segment(P, 1.0)
    assert res.status == "point" and res.length == 0
    assert validate_segment(P, 1.0, res.segment)


def test_triangle_none():
    P = np.array([[0, 0], [2, 0], [1, math.sqrt(3)]])
    res = sweep_shortest_segment(P, 0.5)
    assert res.status == "none" and res.segment is None and res.length == math.inf


def test_three_points():
    P = np.array([[0, 0], [10, 0], [5, 1]], float)
    res = sweep_shortest_segment(P, 1.0)
    ref = brute_force_shortest(P, 1.0)
    assert res.length == pytest.approx(ref.length, rel=1e-9)
    # D - 2r is a lower bound, met on the x axis
    assert res.length == pytest.approx(8, abs=1e-9)


def test_bad_radius():
    with pytest.raises(ValueError):
        sweep_shortest_segment([[0, 0]], 0)


# frozen from brute_force_shortest (k = 4096 with refinement)
FROZEN = [
    ("uniform", 1, 4.695643453763211),
    ("uniform", 2, 6.20806917562313),
    ("convex", 3, 14.363511927890798),
    ("clustered", 4, 6.170216982042519),
    ("convex", 5, 1.7165592166694754),
]


@pytest.mark.parametrize("kind,seed,length", FROZEN)
def test_frozen_oracle_values(kind, seed, length):
    P, r = instance(kind, 12, seed)
    res = sweep_shortest_segment(P, r)
    assert res.length == pytest.approx(length, rel=1e-9)
    assert validate_segment(P, r, res.segment, 1e-9)


# properties -----------------------------------------------------------------

@settings(max_examples=15)
@given(st.sampled_from(["uniform", "convex", "clustered"]), st.integers(3, 40),
       st.integers(0, 10**6))
def test_matches_oracle_and_valid(kind, n, seed):
    P, r = instance(kind, n, seed)
    res = sweep_shortest_segment(P, r)
    ref = brute_force_shortest(P, r)
    assert res.status != "none" and ref.feasible
    assert validate_segment(P, r, res.segment, 1e-7)
    assert res.length <= ref.length + 1e-5 * (1 + ref.length)
    assert res.length >= ref.length - 1e-5 * (1 + ref.length)


@given(st.integers(0, 10**6), st.floats(0, 2 * math.pi))
def test_rotation_symmetry(seed, theta):
    P, r = instance("uniform", 15, seed)
    c, s = math.cos(theta), math.sin(theta)
    a = sweep_shortest_segment(P, r)
    b = sweep_shortest_segment(P @ np.array([[c, s], [-s, c]]), r)
    assert a.status == b.status
    assert b.length == pytest.approx(a.length, abs=1e-9)


@given(st.integers(0, 10**6))
def test_event_orientations(seed):
    P, r = instance("uniform", 25, seed)
    V = convex_hull(P).vertices
    res = sweep_shortest_segment(P, r)
    if res.status != "segment" or not res.trace.records:
        return
    E = np.roll(V, -1, axis=0) - V
    edge = np.mod(np.arctan2(E[:, 1], E[:, 0]), math.pi)
    for kind, alpha, internal in res.trace.records:
        if kind == 3:
            # the strip opens or closes: width exactly 2r
            assert strip_width(V, alpha) == pytest.approx(2 * r, rel=1e-9)
        elif kind == 2:
            # an owner advances: the tangent is flush with a hull edge
            d = np.abs(np.mod(alpha - edge + math.pi / 2, math.pi) - math.pi / 2)
            assert d.min() < 1e-9
        assert not internal or kind == 5


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_trace_counts(seed):
    P, r = instance("convex", 30, seed)
    t = sweep_shortest_segment(P, r).trace
    assert sum(t.counts.values()) == t.total == len(t.records)
    assert t.internal <= t.counts[5]
    assert [a for _, a, _ in t.records] == sorted(a for _, a, _ in t.records)
    assert t.h == len(convex_hull(P).indices)
    js = t.to_json()
    assert js["total"] == t.total and len(js["events"]) == t.total


@settings(max_examples=25)
@given(st.sampled_from(["uniform", "convex", "clustered"]), st.integers(0, 10**6))
def test_chain_consistency(kind, seed):
    P, r = instance(kind, 30, seed)
    chk = ConsistencyChecker(check_mode=True)
    sweep_shortest_segment(P, r, on_event=chk)
    assert chk.mismatches == []


def test_consistency_checker_flags_corruption():
    P, r = instance("convex", 30, 11)
    chk = ConsistencyChecker()
    done = []

    def corrupt(state, cert):
        if state.exists and len(state.S1.circles) > 1 and not done:
            state.S1.circles.reverse()
            done.append(cert)
        chk(state, cert)
    try:
        sweep_shortest_segment(P, r, on_event=corrupt)
    except SweepError:
        pass
    assert done and chk.mismatches and chk.mismatches[0][2] == "chain arcs"


def test_disappearance_purges_and_internal_keeps_chains():
    seen = {"gone": 0, "internal": 0}

    def hook(before, state, cert):
        if cert.kind == 3 and cert.payload == "disappear":
            seen["gone"] += 1
            assert not state.exists and set(state.queue.kinds()) <= {2, 3}
        if cert.kind == 5 and state.trace.records[-1][2]:
            seen["internal"] += 1
            S1, S2, _ = before
            assert (S1.circles, S1.verts) == (state.S1.circles, state.S1.verts)
            assert (S2.circles, S2.verts) == (state.S2.circles, state.S2.verts)
            # a fresh type-5 certificate, unless the narrowed range is empty
            key = tuple(cert.slot[1:])
            assert ("45",) + key in state.queue.slots or state.ranges.get(key) is None
    for seed in range(40):
        P, r = instance("uniform", 30, seed)
        replay(P, r * 0.9, hook)
    assert seen["gone"] > 0 and seen["internal"] > 0


# certificates -----------------------------------------------------------------

def test_kind3_inner_bitangent():
    D = Disks(np.array([[0, 0], [4, 0]], float), 1.0)
    st_ = initial_state(D, math.pi / 2)
    cert = make_certificate(3, st_)
    assert cert.payload == "appear"
    assert cert.alpha == pytest.approx(math.pi - math.asin(0.5), abs=1e-12)
    dirs = [math.atan2(l.normal[0], -l.normal[1]) % math.pi
            for l in inner_bitangents(Circle((0, 0), 1), Circle((4, 0), 1))]
    assert min(abs(d - cert.alpha % math.pi) for d in dirs) < 1e-9


def test_kind2_edge_orientation():
    P = np.array([[0, 0], [4, 0], [4, 1], [0, 1]], float)
    D = Disks(convex_hull(P).vertices, 1.0)
    st_ = initial_state(D, 0.3)
    for line in (1, 2):
        cert = make_certificate(2, st_, ("2", line))
        e = np.array(D.pts[cert.payload]) - np.array(D.pts[st_.o1 if line == 1 else st_.o2])
        assert math.sin(cert.alpha - math.atan2(e[1], e[0])) == pytest.approx(0, abs=1e-12)
        assert cert.alpha > 0.3


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_kind1_first_mode_change(seed):
    """Right after start, the mode of the optimum stays put until the
    kind-1 certificate fires, by dense simulation of fixed optima."""
    P, r = instance("uniform", 20, seed)
    V = convex_hull(P).vertices
    disks = Disks(V, r)
    a0 = calipers(convex_hull(V)).width_orientation + 1e-3
    s = initial_state(disks, a0, index=DiskIndex(disks.pts, r))
    if not s.exists:
        return
    c1 = min((c for c in s.queue.slots.values() if c.kind == 1), key=lambda c: c.alpha)
    first = s.queue.peek()
    if first.kind != 1 or c1.alpha - a0 < 1e-6:
        return
    for t in np.linspace(a0, c1.alpha, 40)[1:-1]:
        S1, S2 = build_convex_chains(disks, r, fixed_orientation_tangents(disks, r, t), t)
        opt = fixed_optimum(disks, S1, S2, t, s.o1, s.o2)
        L, _, _ = mode_eval(s.mode, t, r)
        assert L == pytest.approx(opt.length, abs=1e-7)


# between events -----------------------------------------------------------------

@given(st.floats(2.5, 6), st.floats(0, 2 * math.pi), st.floats(0, 1), st.floats(0.05, 1))
def test_interval_minimum_dense(dist, direction, start, frac):
    r = 1.0
    p = (dist * math.cos(direction), dist * math.sin(direction))
    q = (0.0, 0.0)
    mode = Mode(AA, p, q)
    # stay where both arcs can carry the endpoints: |(p - q) . n| <= 2r
    dev = math.asin(1.9 / dist)
    a = direction - dev + start * 2 * dev * (1 - frac)
    b = a + 2 * dev * frac
    L, t = interval_minimum(mode, a, b, r)
    dense = min(mode_eval(mode, x, r)[0] for x in np.linspace(a, b, 4001))
    assert a <= t <= b
    assert L == pytest.approx(mode_eval(mode, t, r)[0], abs=1e-12)
    assert dense - 1e-6 <= L <= dense + 1e-12


def test_advance_wraps_past_pi():
    P, r = instance("convex", 20, 7)
    V = convex_hull(P).vertices
    disks = Disks(V, r)
    s = initial_state(disks, 3.0, index=DiskIndex(disks.pts, r))
    while s.queue.peek().alpha <= math.pi:
        cert = s.queue.peek()
        advance_to_event(s, cert)
        del s.queue.slots[cert.slot]
        handle_event(s, cert)
    nxt = s.queue.peek()
    advance_to_event(s, nxt)
    # orientations stay unwrapped; the violation orientation wraps
    assert s.alpha == nxt.alpha > math.pi
    assert nxt.violation_orientation == pytest.approx(nxt.alpha - math.pi)


def test_mode_from_opt_roundtrip():
    P, r = instance("uniform", 20, 3)
    V = convex_hull(P).vertices
    disks = Disks(V, r)
    a = calipers(convex_hull(V)).width_orientation + 1e-3
    s = initial_state(disks, a, index=DiskIndex(disks.pts, r))
    opt = fixed_optimum(disks, s.S1, s.S2, a, s.o1, s.o2)
    L, q1, q2 = mode_eval(mode_from_opt(s, opt), a, r)
    assert L == pytest.approx(opt.length, abs=1e-9)
    u, _ = frame(a)
    assert validate_segment(V, r, s.segment(), 1e-7)
