import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from repseg.geometry import (Circle, CoincidentCirclesError, Point2, Segment, angle_on,
                             circle_circle_intersections, inner_bitangents, next_sinusoid_root,
                             normalize_orientation, point_segment_distance,
                             point_segment_distances, smallest_enclosing_disk,
                             tangent_lines_at_orientation)

coord = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
pt = st.tuples(coord, coord)


def C(x, y, r=1.0):
    return Circle(Point2(x, y), r)


def test_intersections_unit_circles():
    a, b = circle_circle_intersections(C(0, 0), C(1, 0))
    assert a.x == pytest.approx(0.5) and b.x == pytest.approx(0.5)
    assert sorted([a.y, b.y]) == pytest.approx([-math.sqrt(3) / 2, math.sqrt(3) / 2])
    # sorted by angle on the first circle
    assert angle_on(C(0, 0), a) < angle_on(C(0, 0), b)


def test_intersections_disjoint_and_tangent():
    assert circle_circle_intersections(C(0, 0), C(3, 0)) == []
    (p,) = circle_circle_intersections(C(0, 0), C(2, 0))
    assert p == pytest.approx((1.0, 0.0))


def test_intersections_coincident():
    with pytest.raises(CoincidentCirclesError):
        circle_circle_intersections(C(1, 1, 2), C(1, 1, 2))


@given(pt, pt, st.floats(0.1, 30), st.floats(0.1, 30))
def test_intersections_lie_on_both(c1, c2, r1, r2):
    a, b = Circle(Point2(*c1), r1), Circle(Point2(*c2), r2)
    if math.dist(c1, c2) < 1e-6:
        return
    for p in circle_circle_intersections(a, b):
        assert abs(math.dist(p, c1) - r1) <= 1e-6 * max(1, r1)
        assert abs(math.dist(p, c2) - r2) <= 1e-6 * max(1, r2)


def test_point_segment_distance_examples():
    s = Segment(Point2(-1, 0), Point2(1, 0))
    assert point_segment_distance((0, 1), s) == 1
    assert point_segment_distance((2, 0), s) == 1
    assert point_segment_distance((3, 4), Segment(Point2(0, 0), Point2(0, 0))) == 5


@given(pt, pt, pt)
def test_point_segment_distance_matches_sampling(p, a, b):
    s = Segment(Point2(*a), Point2(*b))
    t = np.linspace(0, 1, 10001)[:, None]
    samples = np.asarray(a) + t * (np.asarray(b) - np.asarray(a))
    ref = np.hypot(*(samples - np.asarray(p)).T).min()
    d = point_segment_distance(p, s)
    assert d <= ref + 1e-9
    assert ref - d <= 1e-6 + math.dist(a, b) * 1e-4
    assert point_segment_distances([p], s)[0] == pytest.approx(d, abs=1e-9)


@pytest.mark.parametrize("c, alpha, upper, lower", [
    (C(0, 0), 0.0, ((0, 1), 1), ((0, 1), -1)),
    (C(5, 3), 0.0, ((0, 1), 4), ((0, 1), 2)),
])
def test_tangent_lines_examples(c, alpha, upper, lower):
    up, lo = tangent_lines_at_orientation(c, alpha)
    assert up.normal == pytest.approx(upper[0]) and up.offset == pytest.approx(upper[1])
    assert lo.normal == pytest.approx(lower[0]) and lo.offset == pytest.approx(lower[1])


def test_tangent_lines_vertical():
    up, lo = tangent_lines_at_orientation(C(0, 0), math.pi / 2)
    # normal (-1, 0): the lines -x = 1 and -x = -1, i.e. x = -1 and x = 1
    assert sorted([-up.offset * up.normal[0], -lo.offset * lo.normal[0]]) == \
        pytest.approx([-1, 1])


@given(pt, st.floats(0.1, 20), st.floats(0, math.pi))
def test_tangent_lines_touch(c, r, alpha):
    circ = Circle(Point2(*c), r)
    for ln in tangent_lines_at_orientation(circ, alpha):
        d = abs(ln.normal[0] * c[0] + ln.normal[1] * c[1] - ln.offset)
        assert d == pytest.approx(r, abs=1e-9 * max(1, abs(ln.offset)))
        assert ln.normal[0] * math.cos(alpha) + ln.normal[1] * math.sin(alpha) == \
            pytest.approx(0, abs=1e-12)


def test_inner_bitangents_separated():
    lines = inner_bitangents(C(0, 0), C(4, 0))
    assert len(lines) == 2
    slopes = sorted(math.tan(normalize_orientation(math.atan2(ln.normal[0], -ln.normal[1])))
                    for ln in lines)
    t = math.tan(math.asin(0.5))
    assert slopes == pytest.approx([-t, t])
    for ln in lines:
        n, o = ln.normal, ln.offset
        # through the midpoint, distance 1 to both centres, opposite sides
        assert 2 * n[0] == pytest.approx(o)
        assert abs(0 - o) == pytest.approx(1) and abs(4 * n[0] - o) == pytest.approx(1)
        assert (0 - o) * (4 * n[0] - o) < 0


def test_inner_bitangents_overlap_and_touch():
    assert inner_bitangents(C(0, 0), C(1, 0)) == []
    (ln,) = inner_bitangents(C(0, 0), C(2, 0))
    # the line x = 1
    assert abs(ln.normal[0]) == pytest.approx(1)
    assert ln.offset * ln.normal[0] == pytest.approx(1)
    with pytest.raises(ValueError):
        inner_bitangents(C(0, 0), C(5, 0, 2.0))


def test_smallest_enclosing_disk_examples():
    c = smallest_enclosing_disk([(0, 0)])
    assert c.radius == 0 and tuple(c.center) == (0, 0)
    c = smallest_enclosing_disk([(0, 0), (2, 0)])
    assert c.radius == pytest.approx(1) and c.center == pytest.approx((1, 0))
    c = smallest_enclosing_disk([(0, 0), (2, 0), (1, math.sqrt(3))])
    assert c.radius == pytest.approx(2 / math.sqrt(3))
    with pytest.raises(ValueError):
        smallest_enclosing_disk([])


@given(st.lists(pt, min_size=1, max_size=25), st.integers(0, 5))
def test_smallest_enclosing_disk_minimal(pts, seed):
    c = smallest_enclosing_disk(pts, seed=seed)
    P = np.asarray(pts)
    d = np.hypot(*(P - np.asarray(c.center)).T)
    assert d.max() <= c.radius + 1e-9 * max(1, c.radius)
    if c.radius > 1e-6:
        # grid oracle: no centre near the optimum does better by 1e-6
        g = np.linspace(-1, 1, 41) * c.radius * 0.05
        X, Y = np.meshgrid(g, g)
        cen = np.c_[X.ravel(), Y.ravel()] + np.asarray(c.center)
        best = np.hypot(P[None, :, 0] - cen[:, None, 0], P[None, :, 1] - cen[:, None, 1]).max(1)
        assert best.min() >= c.radius - 1e-6 * max(1, c.radius)
        # shrinking loses a point
        assert d.max() > c.radius - 1e-6 * max(1, c.radius)


@given(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), st.floats(-6, 6), st.floats(-4, 4))
def test_next_sinusoid_root(a, c, after):
    al = next_sinusoid_root(a, c, after)
    if math.isinf(al):
        assert abs(c) > math.hypot(*a) - 1e-9
        return
    assert al >= after - 1e-9 and al <= after + 2 * math.pi + 1e-9
    assert -a[0] * math.sin(al) + a[1] * math.cos(al) == pytest.approx(c, abs=1e-7)
