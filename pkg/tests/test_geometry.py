import itertools
from fractions import Fraction

import numpy as np
import pytest

from brf.errors import InvalidInstance
from brf.geometry import (Point, Rect, Region, all_rectangles, corner_free, corner_intersects,
                          gamma, intersects, leq, normalize)


def R(x1, y1, x2, y2):
    return Rect(Point(x1, y1), Point(x2, y2))


def test_normalize_two_points():
    inst = normalize([(0.5, 10)], [(3.2, 40)])
    assert inst.A == (Point(1, 1),)
    assert inst.B == (Point(2, 2),)
    assert inst.n == 2
    assert inst.raw_x == (Fraction("0.5"), Fraction("3.2"))


def test_normalize_shared_x_breaks_ties_by_y_then_index():
    inst = normalize([(1, 2), (1, 1)], [(5, 5)])
    # same raw x: lower y gets the smaller grid column
    assert inst.A[1].x == 1 and inst.A[0].x == 2
    xs = [p.x for p in inst.A + inst.B]
    ys = [p.y for p in inst.A + inst.B]
    assert len(set(xs)) == len(xs) == 3 and len(set(ys)) == len(ys)


def test_tie_break_puts_a_before_b():
    # a and b share a raw x; the rectangle must survive compression
    inst = normalize([(2, 1)], [(2, 5)])
    assert leq(inst.A[0], inst.B[0])


def test_duplicate_point_rejected():
    with pytest.raises(InvalidInstance):
        normalize([(1, 1)], [(1, 1)])
    with pytest.raises(InvalidInstance):
        normalize([(1, 1), (1, 1)], [(3, 3)])


def test_order_preserved_on_random_ties():
    rng = np.random.default_rng(5)
    for _ in range(50):
        pts = [tuple(int(v) for v in rng.integers(0, 4, 2)) for _ in range(10)]
        pts = list(dict.fromkeys(pts))
        k = len(pts) // 2
        raw_a, raw_b = pts[:k], pts[k:]
        inst = normalize(raw_a, raw_b)
        for i, j in itertools.product(range(len(raw_a)), range(len(raw_b))):
            raw_le = raw_a[i][0] <= raw_b[j][0] and raw_a[i][1] <= raw_b[j][1]
            assert raw_le == leq(inst.A[i], inst.B[j])


def test_gamma_basic():
    inst = normalize([(1, 1)], [(2, 2)])
    assert gamma(inst, 0, 0) == Rect(Point(1, 1), Point(2, 2), 0, 0)
    inst = normalize([(2, 2)], [(1, 3)])
    assert gamma(inst, 0, 0) is None


def test_gamma_region_hole():
    # region is a ring around the middle cell of [1,3]^2
    ring = [(1, 1, 3, 1.5), (1, 2.5, 3, 3), (1, 1, 1.5, 3), (2.5, 1, 3, 3)]
    inst = normalize([(1, 1)], [(3, 3)], ring)
    assert gamma(inst, 0, 0) is None
    inst = normalize([(1, 1)], [(3, 3)], [(0, 0, 4, 4)])
    assert gamma(inst, 0, 0) is not None


def test_region_mask_matches_raw_check():
    rng = np.random.default_rng(11)
    for t in range(40):
        xs = rng.permutation(30)[:6]
        ys = rng.permutation(30)[:6]
        raw = [(int(x), int(y)) for x, y in zip(xs, ys)]
        boxes = []
        for _ in range(2):
            x1, y1 = (int(v) for v in rng.integers(0, 20, 2))
            boxes.append((x1, y1, x1 + int(rng.integers(3, 15)), y1 + int(rng.integers(3, 15))))
        inst = normalize(raw[:3], raw[3:], boxes)
        for i, j in itertools.product(range(3), range(3)):
            (ax, ay), (bx, by) = raw[i], raw[3 + j]
            want = ax <= bx and ay <= by and inst.z.contains_raw_rect(ax, ay, bx, by)
            assert (gamma(inst, i, j) is not None) == want, (t, i, j)


def test_predicate_examples():
    r, s = R(1, 3, 6, 4), R(2, 1, 3, 6)
    assert intersects(r, s) and corner_free(r, s)
    assert not intersects(R(1, 1, 2, 2), R(5, 5, 6, 6))
    r, s = R(1, 1, 4, 3), R(2, 2, 5, 4)
    assert intersects(r, s) and not corner_free(r, s) and corner_intersects(r, s)


def test_edge_touching_is_corner_free():
    r, s = R(1, 1, 3, 3), R(3, 1, 5, 3)
    assert intersects(r, s) and corner_free(r, s)


def _direct(r, s):
    inter = r.a.x <= s.b.x and s.a.x <= r.b.x and r.a.y <= s.b.y and s.a.y <= r.b.y

    def inside(p, t):
        return t.a.x < p[0] < t.b.x and t.a.y < p[1] < t.b.y
    corners = lambda t: [(t.a.x, t.a.y), (t.b.x, t.b.y), (t.a.x, t.b.y), (t.b.x, t.a.y)]  # noqa: E731
    hit = any(inside(p, s) for p in corners(r)) or any(inside(p, r) for p in corners(s))
    return inter, inter and not hit


def test_predicates_against_direct_computation():
    rng = np.random.default_rng(3)
    v = rng.integers(0, 12, size=(100_000, 4, 2))
    for row in v[:20_000]:  # every pair in the fuzz set; subset keeps the suite quick
        (x1, x2), (y1, y2), (u1, u2), (w1, w2) = np.sort(row, axis=1)
        r, s = R(int(x1), int(y1), int(x2), int(y2)), R(int(u1), int(w1), int(u2), int(w2))
        assert (intersects(r, s), corner_free(r, s)) == _direct(r, s)


def test_full_plane_gamma_iff_leq():
    inst = normalize([(1, 5), (3, 2), (6, 1)], [(2, 7), (4, 4), (7, 3)])
    for i, j in itertools.product(range(3), range(3)):
        assert (gamma(inst, i, j) is not None) == leq(inst.A[i], inst.B[j])
    assert len(all_rectangles(inst)) == sum(
        leq(a, b) for a in inst.A for b in inst.B)


def test_raw_coord_midpoint():
    inst = normalize([(0, 0)], [(10, 4)])
    assert inst.to_raw((1, 1)) == (0, 0)
    assert inst.to_raw((Fraction(3, 2), 2)) == (5, 4)


def test_region_full_repr():
    assert Region.full().is_full
    assert repr(Region.full()) == "Region.full()"
