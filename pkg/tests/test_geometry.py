import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hullpartition import (
    CCW,
    COLLINEAR,
    CW,
    ConvexPolygon,
    DegenerateInput,
    Point,
    Segment,
    angle_less,
    convex_hull,
    interior_point,
    interiors_overlap,
    orientation,
    perimeter,
    point_in_polygon,
    point_lt,
    ray_crossing_sign,
    segment_intersects_interior,
)

from conftest import min_boundary_distance, random_convex_polygon, winding_angle_inside

UNIT_SQUARE = convex_hull([(0, 0), (0, 1), (1, 1), (1, 0)])
DIAMOND = convex_hull([(4, 0), (5, 1), (6, 0), (5, -1)])

coords = st.integers(min_value=-(10**6), max_value=10**6)
points = st.builds(Point, coords, coords)


def segs(*pts):
    return Segment(Point(*pts[0]), Point(*pts[1]))


class TestOrientation:
    def test_left_turn(self):
        assert orientation(Point(0, 0), Point(1, 0), Point(0, 1)) == CCW

    def test_collinear(self):
        assert orientation(Point(0, 0), Point(1, 1), Point(2, 2)) == COLLINEAR

    def test_right_turn(self):
        assert orientation(Point(0, 0), Point(0, 1), Point(1, 1)) == CW

    @given(points, points, points)
    def test_antisymmetric_under_swaps(self, a, b, c):
        assert orientation(a, b, c) == -orientation(b, a, c)
        assert orientation(a, b, c) == -orientation(a, c, b)

    def test_exact_on_fractions(self):
        eps = Fraction(1, 10**30)
        assert orientation(Point(0, 0), Point(1, 1), Point(2, 2 + eps)) == CCW
        assert orientation(Point(0, 0), Point(1, 1), Point(2, 2 - eps)) == CW


class TestPointOrder:
    def test_smaller_x_wins(self):
        assert point_lt(Point(0, 0), Point(1, -5))

    def test_tie_by_y(self):
        assert point_lt(Point(2, 1), Point(2, 3))

    def test_irreflexive(self):
        assert not point_lt(Point(2, 3), Point(2, 3))

    @given(points, points)
    def test_strict_total_order(self, u, v):
        if u == v:
            assert not point_lt(u, v) and not point_lt(v, u)
        else:
            assert point_lt(u, v) != point_lt(v, u)

    @given(points, points, points)
    def test_transitive(self, a, b, c):
        if point_lt(a, b) and point_lt(b, c):
            assert point_lt(a, c)


class TestAngleLess:
    def test_up_before_diagonal(self):
        assert angle_less(Point(0, 0), Point(0, 5), Point(1, 1))

    def test_right_after_diagonal(self):
        assert not angle_less(Point(0, 0), Point(1, 0), Point(1, 1))

    def test_equal_angle_nearer_first(self):
        assert angle_less(Point(0, 0), Point(1, 1), Point(2, 2))
        assert not angle_less(Point(0, 0), Point(2, 2), Point(1, 1))

    def test_anchor_rejected(self):
        with pytest.raises(ValueError):
            angle_less(Point(0, 0), Point(0, 0), Point(1, 1))

    @given(points, points, points)
    def test_strict_weak_order(self, anchor, a, b):
        if a == anchor or b == anchor:
            return
        assert not (angle_less(anchor, a, b) and angle_less(anchor, b, a))
        assert not angle_less(anchor, a, a)

    @given(points, points, points, points)
    def test_transitive(self, anchor, a, b, c):
        if anchor in (a, b, c):
            return
        if angle_less(anchor, a, b) and angle_less(anchor, b, c):
            assert angle_less(anchor, a, c)

    def test_hull_angles_increase_clockwise_from_min(self):
        rng = random.Random(7)
        for _ in range(50):
            hull = random_convex_polygon(rng, max_vertices=12)
            verts = hull.vertices
            m = len(verts)
            anchor = hull.min_vertex
            ordered = [verts[(hull.min_index + k) % m] for k in range(1, m)]
            for a, b in zip(ordered, ordered[1:]):
                assert angle_less(anchor, a, b)


class TestPerimeter:
    def test_unit_square(self):
        assert perimeter(UNIT_SQUARE) == pytest.approx(4.0, abs=1e-12)

    def test_diamond(self):
        assert perimeter(DIAMOND) == pytest.approx(4 * math.sqrt(2), rel=1e-12)

    def test_345_triangle(self):
        tri = convex_hull([(0, 0), (3, 0), (0, 4)])
        assert perimeter(tri) == pytest.approx(12.0, abs=1e-12)

    def test_cached_value_matches_edge_sum(self):
        rng = random.Random(3)
        for _ in range(20):
            poly = random_convex_polygon(rng)
            total = sum(e.length for e in poly.edges())
            assert poly.perimeter == pytest.approx(total, rel=1e-12)


class TestConvexHull:
    def test_interior_point_removed(self):
        hull = convex_hull([(0, 0), (1, 1), (2, 0), (1, Fraction(1, 5))])
        assert {(v.x, v.y) for v in hull.vertices} == {(0, 0), (1, 1), (2, 0)}

    def test_collinear_point_removed(self):
        hull = convex_hull([(0, 0), (1, 0), (2, 0), (1, 1)])
        assert {(v.x, v.y) for v in hull.vertices} == {(0, 0), (1, 1), (2, 0)}

    def test_two_overlapping_squares_make_hexagon(self):
        pts = [(0, 0), (0, 1), (1, 1), (1, 0)]
        pts += [
            (Fraction(1, 2), Fraction(1, 2)),
            (Fraction(1, 2), Fraction(3, 2)),
            (Fraction(3, 2), Fraction(3, 2)),
            (Fraction(3, 2), Fraction(1, 2)),
        ]
        hull = convex_hull(pts)
        expected = [
            (0, 0),
            (0, 1),
            (Fraction(1, 2), Fraction(3, 2)),
            (Fraction(3, 2), Fraction(3, 2)),
            (Fraction(3, 2), Fraction(1, 2)),
            (1, 0),
        ]
        assert [(v.x, v.y) for v in hull.vertices] == expected
        assert hull.perimeter == pytest.approx(4 + math.sqrt(2), rel=1e-12)
        for p in pts:
            assert point_in_polygon(Point(*p), hull)

    def test_degenerate_inputs_raise(self):
        with pytest.raises(DegenerateInput):
            convex_hull([(0, 0), (1, 1), (2, 2)])
        with pytest.raises(DegenerateInput):
            convex_hull([(0, 0), (0, 0), (1, 1)])

    def test_duplicates_tolerated(self):
        hull = convex_hull([(0, 0), (0, 0), (0, 1), (1, 1), (1, 0), (1, 1)])
        assert len(hull) == 4

    def test_starts_at_min_vertex_clockwise(self):
        rng = random.Random(11)
        for _ in range(30):
            pts = [(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(12)]
            try:
                hull = convex_hull(pts)
            except DegenerateInput:
                continue
            assert hull.vertices[0] == hull.min_vertex
            assert hull.min_index == 0
            verts = hull.vertices
            for i in range(len(verts)):
                a, b, c = verts[i - 2], verts[i - 1], verts[i]
                assert orientation(a, b, c) == CW

    def test_hull_contains_every_input_point(self):
        rng = random.Random(13)
        for _ in range(30):
            pts = [(rng.randint(-30, 30), rng.randint(-30, 30)) for _ in range(15)]
            try:
                hull = convex_hull(pts)
            except DegenerateInput:
                continue
            for p in pts:
                assert point_in_polygon(Point(*p), hull)

    def test_idempotent(self):
        rng = random.Random(17)
        for _ in range(20):
            hull = random_convex_polygon(rng)
            assert convex_hull(hull.vertices) == hull


class TestInteriorPoint:
    def test_unit_square(self):
        assert interior_point(UNIT_SQUARE) == Point(Fraction(1, 2), Fraction(1, 2))

    def test_diamond(self):
        assert interior_point(DIAMOND) == Point(5, 0)

    def test_triangle(self):
        tri = convex_hull([(0, 0), (3, 0), (0, 3)])
        assert interior_point(tri) == Point(1, 1)

    def test_strictly_interior(self):
        rng = random.Random(19)
        for _ in range(30):
            poly = random_convex_polygon(rng)
            q = interior_point(poly)
            assert point_in_polygon(q, poly)
            assert min_boundary_distance(float(q.x), float(q.y), poly) > 0


class TestRayCrossingSign:
    def test_left_to_right(self):
        assert ray_crossing_sign(segs((5, 1), (6, 0)), Point(5, 0)) == 1

    def test_right_to_left(self):
        assert ray_crossing_sign(segs((6, 0), (5, 1)), Point(5, 0)) == -1

    def test_half_open_exclusion(self):
        assert ray_crossing_sign(segs((4, 0), (5, 1)), Point(5, 0)) == 0

    def test_below_origin_not_counted(self):
        assert ray_crossing_sign(segs((4, -1), (6, -1)), Point(5, 0)) == 0

    def test_vertical_segment_never_crosses(self):
        assert ray_crossing_sign(segs((5, -1), (5, 1)), Point(5, 0)) == 0

    @given(points, points, points)
    def test_reversal_antisymmetry(self, a, b, q):
        if a == b:
            return
        seg = Segment(a, b)
        rev = Segment(b, a)
        assert ray_crossing_sign(seg, q) == -ray_crossing_sign(rev, q)

    def test_closed_cycle_winding(self):
        # Non-zero rule over a full clockwise cycle: 1 inside, 0 outside.
        rng = random.Random(23)
        checked_in = checked_out = 0
        while checked_in < 200 or checked_out < 200:
            poly = random_convex_polygon(rng, radius=5.0)
            qx = Fraction(rng.randint(-8 * 10**6, 8 * 10**6), 10**6)
            qy = Fraction(rng.randint(-8 * 10**6, 8 * 10**6), 10**6)
            q = Point(qx, qy)
            total = sum(ray_crossing_sign(e, q) for e in poly.edges())
            if min_boundary_distance(float(qx), float(qy), poly) < 1e-7:
                continue
            inside = point_in_polygon(q, poly)
            assert total == (1 if inside else 0)
            if inside:
                checked_in += 1
            else:
                checked_out += 1


class TestPointInPolygon:
    def test_inside(self):
        assert point_in_polygon(Point(Fraction(1, 2), Fraction(1, 2)), UNIT_SQUARE)

    def test_outside(self):
        assert not point_in_polygon(Point(2, 2), UNIT_SQUARE)

    def test_boundary_counts_as_inside(self):
        assert point_in_polygon(Point(0, Fraction(1, 2)), UNIT_SQUARE)
        assert point_in_polygon(Point(0, 0), UNIT_SQUARE)

    def test_agrees_with_winding_angle_oracle(self):
        rng = random.Random(29)
        checked = 0
        while checked < 300:
            poly = random_convex_polygon(rng, radius=4.0)
            qx = rng.uniform(-6, 6)
            qy = rng.uniform(-6, 6)
            if min_boundary_distance(qx, qy, poly) < 1e-7:
                continue
            q = Point(Fraction(round(qx * 10**6), 10**6), Fraction(round(qy * 10**6), 10**6))
            if min_boundary_distance(float(q.x), float(q.y), poly) < 1e-7:
                continue
            assert point_in_polygon(q, poly) == winding_angle_inside(
                float(q.x), float(q.y), poly
            )
            checked += 1


class TestSegmentIntersectsInterior:
    def test_diagonal_through_interior(self):
        assert segment_intersects_interior(segs((0, 0), (1, 1)), UNIT_SQUARE)

    def test_boundary_edge_does_not_count(self):
        assert not segment_intersects_interior(segs((0, 0), (0, 1)), UNIT_SQUARE)

    def test_disjoint_segment(self):
        assert not segment_intersects_interior(segs((2, 0), (3, 1)), UNIT_SQUARE)

    def test_touching_vertex_does_not_count(self):
        assert not segment_intersects_interior(segs((-1, 1), (1, -1)), UNIT_SQUARE)

    def test_segment_inside(self):
        seg = segs((Fraction(1, 4), Fraction(1, 2)), (Fraction(3, 4), Fraction(1, 2)))
        assert segment_intersects_interior(seg, UNIT_SQUARE)

    def test_chord_touching_two_vertices(self):
        # Straight through two opposite corners: the open midsection is
        # strictly inside.
        assert segment_intersects_interior(segs((0, 0), (1, 1)), UNIT_SQUARE)

    def test_agrees_with_shapely(self):
        shapely = pytest.importorskip("shapely")
        from shapely.geometry import LineString
        from shapely.geometry import Polygon as ShPolygon

        rng = random.Random(31)
        for _ in range(300):
            pts = [(rng.randint(-20, 20), rng.randint(-20, 20)) for _ in range(8)]
            try:
                poly = convex_hull(pts)
            except DegenerateInput:
                continue
            a = (rng.randint(-25, 25), rng.randint(-25, 25))
            b = (rng.randint(-25, 25), rng.randint(-25, 25))
            if a == b:
                continue
            mine = segment_intersects_interior(segs(a, b), poly)
            sh_poly = ShPolygon([v.as_floats() for v in poly.vertices])
            pattern = LineString([a, b]).relate(sh_poly)
            theirs = pattern[0] != "F" or pattern[3] != "F"
            assert mine == theirs, (a, b, poly, pattern)


class TestInteriorsOverlap:
    def test_overlapping(self):
        other = convex_hull(
            [
                (Fraction(1, 2), Fraction(1, 2)),
                (Fraction(1, 2), Fraction(3, 2)),
                (Fraction(3, 2), Fraction(3, 2)),
                (Fraction(3, 2), Fraction(1, 2)),
            ]
        )
        assert interiors_overlap(UNIT_SQUARE, other)

    def test_touching_edge_is_disjoint(self):
        other = convex_hull([(1, 0), (1, 1), (2, 1), (2, 0)])
        assert not interiors_overlap(UNIT_SQUARE, other)

    def test_touching_corner_is_disjoint(self):
        other = convex_hull([(1, 1), (1, 2), (2, 2), (2, 1)])
        assert not interiors_overlap(UNIT_SQUARE, other)

    def test_containment_counts(self):
        inner = convex_hull(
            [
                (Fraction(1, 4), Fraction(1, 4)),
                (Fraction(1, 4), Fraction(3, 4)),
                (Fraction(3, 4), Fraction(1, 2)),
            ]
        )
        assert interiors_overlap(UNIT_SQUARE, inner)
        assert interiors_overlap(inner, UNIT_SQUARE)

    def test_agrees_with_shapely(self):
        shapely = pytest.importorskip("shapely")
        from shapely.geometry import Polygon as ShPolygon

        rng = random.Random(37)
        for _ in range(300):
            polys = []
            for _ in range(2):
                pts = [(rng.randint(-12, 12), rng.randint(-12, 12)) for _ in range(7)]
                try:
                    polys.append(convex_hull(pts))
                except DegenerateInput:
                    break
            if len(polys) != 2:
                continue
            a, b = polys
            sh_a = ShPolygon([v.as_floats() for v in a.vertices])
            sh_b = ShPolygon([v.as_floats() for v in b.vertices])
            theirs = sh_a.relate(sh_b)[0] == "2"
            assert interiors_overlap(a, b) == theirs
            assert interiors_overlap(b, a) == theirs

    def test_merged_hull_never_longer_than_sum_when_overlapping(self):
        rng = random.Random(41)
        checked = 0
        while checked < 100:
            a = random_convex_polygon(rng, cx=0, cy=0, radius=4)
            b = random_convex_polygon(
                rng, cx=rng.uniform(-2, 2), cy=rng.uniform(-2, 2), radius=4
            )
            if not interiors_overlap(a, b):
                continue
            merged = convex_hull(list(a.vertices) + list(b.vertices))
            assert merged.perimeter <= a.perimeter + b.perimeter + 1e-9
            checked += 1


class TestPolygonValidation:
    def test_rejects_counterclockwise(self):
        with pytest.raises(DegenerateInput):
            ConvexPolygon([Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)])

    def test_rejects_collinear_triple(self):
        with pytest.raises(DegenerateInput):
            ConvexPolygon([Point(0, 0), Point(0, 1), Point(1, 1), (1, Fraction(1, 2)), Point(1, 0)])

    def test_rejects_too_few(self):
        with pytest.raises(DegenerateInput):
            ConvexPolygon([Point(0, 0), Point(1, 1)])

    def test_accepts_rotated_cycle(self):
        poly = ConvexPolygon([Point(1, 1), Point(1, 0), Point(0, 0), Point(0, 1)])
        assert poly.min_vertex == Point(0, 0)
        assert poly.min_index == 2

    def test_segment_endpoints_must_differ(self):
        with pytest.raises(DegenerateInput):
            Segment(Point(1, 1), Point(1, 1))

    def test_nonfinite_coordinates_rejected(self):
        with pytest.raises(DegenerateInput):
            Point(float("nan"), 0)
        with pytest.raises(DegenerateInput):
            Point(float("inf"), 0)
