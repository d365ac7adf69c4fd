import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from repseg.chains import (Disks, build_convex_chains, fixed_optimum,
                           fixed_orientation_tangents, left_x,
                           shortest_segment_fixed_orientation)
from repseg.geometry import frame
from repseg.hull import calipers, convex_hull
from repseg.oracle import brute_force_fixed_orientation, sampled_envelope


def chains_at(P, r, alpha):
    H = convex_hull(P)
    D = Disks(H.vertices, r)
    tp = fixed_orientation_tangents(D, r, alpha)
    return D, tp, (None if tp is None else build_convex_chains(D, r, tp, alpha))


def test_tangents_example():
    D = Disks(np.array([[0, 0], [10, 0], [5, 1]], float), 1.0)
    tp = fixed_orientation_tangents(D, 1.0, 0.0)
    assert tp.tau1.offset == pytest.approx(1.0) and tp.tau2.offset == pytest.approx(0.0)
    assert D.pts[tp.owner1][1] == 0.0 and D.pts[tp.owner2] == (5.0, 1.0)


def test_tangents_none():
    D = Disks(np.array([[0, 0], [0, 3]], float), 1.0)
    assert fixed_orientation_tangents(D, 1.0, 0.0) is None


@given(st.integers(0, 10**6), st.floats(0, 2 * math.pi))
def test_tangent_owners_are_extreme(seed, alpha):
    rng = np.random.default_rng(seed)
    P = rng.normal(size=(int(rng.integers(3, 30)), 2))
    D = Disks(convex_hull(P).vertices, 3.0)
    tp = fixed_orientation_tangents(D, 3.0, alpha)
    _, n = frame(alpha)
    y = D.P @ np.array(n)
    if tp is None:
        assert y.max() - y.min() > 6.0
        return
    assert y[tp.owner1] == y.min() and y[tp.owner2] == y.max()
    assert tp.tau1.offset == pytest.approx(y.min() + 3) and \
        tp.tau2.offset == pytest.approx(y.max() - 3)


def test_two_circle_chains():
    D, tp, (S1, S2) = chains_at(np.array([[0, 0], [10, 0]], float), 1.0, 0.0)
    # S1 is the left half-circle of the right disk, S2 the right half of the left one
    assert [D.pts[c] for c in S1.circles] == [(10.0, 0.0)]
    assert [D.pts[c] for c in S2.circles] == [(0.0, 0.0)]
    seg = shortest_segment_fixed_orientation(S1, S2, 0.0, D, (tp.owner1, tp.owner2))
    assert seg.a == pytest.approx((9, 0)) and seg.b == pytest.approx((1, 0))
    assert seg.length == pytest.approx(8)


def test_three_point_fixed_optimum():
    P = np.array([[0, 0], [10, 0], [5, 1]], float)
    D, tp, (S1, S2) = chains_at(P, 1.0, 0.0)
    opt = fixed_optimum(D, S1, S2, 0.0, tp.owner1, tp.owner2)
    assert opt.length == pytest.approx(8.0)
    assert opt.y == pytest.approx(0.0)
    ref = brute_force_fixed_orientation(P, 1.0, 0.0)
    assert ref.length == pytest.approx(opt.length, abs=1e-9)


def test_no_solution_at_alpha():
    with pytest.raises(ValueError):
        shortest_segment_fixed_orientation([], [], 0.0)


def _random(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 30))
    P = rng.normal(size=(n, 2)) * rng.uniform(0.3, 4, size=2)
    r = calipers(convex_hull(P)).width / 2 * rng.uniform(1.01, 2.0)
    return P, r, float(rng.uniform(0, 2 * math.pi))


@given(st.integers(0, 10**6))
def test_chains_match_sampled_envelope(seed):
    P, r, alpha = _random(seed)
    D, tp, chains = chains_at(P, r, alpha)
    if tp is None:
        return
    S1, S2 = chains
    _, n = frame(alpha)
    ys = np.linspace(tp.tau2.offset, tp.tau1.offset, 1001)[1:-1]
    _, env1, _, env2 = sampled_envelope(D.P, r, alpha, ys)
    h1 = [v[0] * n[0] + v[1] * n[1] for v in S1.verts]
    h2 = [v[0] * n[0] + v[1] * n[1] for v in S2.verts]
    # chains run top to bottom in their own frames; breakpoints are monotone
    assert all(a >= b for a, b in zip(h1, h1[1:]))
    assert all(a <= b for a, b in zip(h2, h2[1:]))
    for y, e1, e2 in zip(ys, env1, env2):
        c1 = S1.circles[sum(hh > y for hh in h1)]
        c2 = S2.circles[sum(hh < y for hh in h2)]
        assert left_x(D, c1, alpha, y) == pytest.approx(e1, abs=1e-7 * D.scale)
        assert -left_x(D, c2, alpha + math.pi, -y) == pytest.approx(e2, abs=1e-7 * D.scale)


@given(st.integers(0, 10**6))
def test_chain_supports_follow_hull_order(seed):
    P, r, alpha = _random(seed)
    D, tp, chains = chains_at(P, r, alpha)
    if tp is None:
        return
    for S in chains:
        # supports step backwards around the clockwise hull, less than a turn
        dec = [(a - b) % D.h for a, b in zip(S.circles, S.circles[1:])]
        assert all(d > 0 for d in dec)
        assert sum(dec) < D.h


@given(st.integers(0, 10**6))
def test_fixed_optimum_matches_offset_search(seed):
    P, r, alpha = _random(seed)
    D, tp, chains = chains_at(P, r, alpha)
    if tp is None:
        return
    opt = fixed_optimum(D, *chains, alpha, tp.owner1, tp.owner2)
    ref = brute_force_fixed_orientation(D.P, r, alpha)
    assert max(opt.length, 0.0) == pytest.approx(ref.length, abs=1e-6)
    if opt.length > 0:
        seg = opt.segment
        d = np.hypot(*(np.asarray(seg.b) - np.asarray(seg.a)))
        assert d == pytest.approx(opt.length, abs=1e-9)
