from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hsforge.geometry import (
    DomainError,
    Location,
    Point,
    PolygonalDomain,
    between_closed,
    between_open,
    clip_convex,
    convex_hull,
    convex_intersection,
    convex_subtract,
    direction_key,
    line_intersection,
    normalize_direction,
    orientation,
    point_in_convex,
    point_in_ring,
    pt,
    segment_contact_params,
    segments_properly_cross,
    segments_touch,
    signed_area2,
)
from hsforge.numbers import RationalFormatError, format_rational, parse_rational

rationals = st.fractions(
    min_value=-8, max_value=8, max_denominator=16
)


def points(draw_x=rationals, draw_y=rationals):
    return st.builds(Point, draw_x, draw_y)


def test_orientation_basic():
    assert orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == 1
    assert orientation(pt(0, 0), pt(0, 1), pt(1, 0)) == -1
    assert orientation(pt(0, 0), pt(1, 1), pt(2, 2)) == 0
    assert orientation(pt(0, 0), pt(1, 0), pt(2, 0)) == 0


def test_between_predicates():
    a, b = pt(0, 0), pt(4, 2)
    assert between_closed(a, b, pt(2, 1))
    assert between_closed(a, b, a)
    assert between_open(a, b, pt(2, 1))
    assert not between_open(a, b, a)
    assert not between_open(a, b, b)
    assert not between_closed(a, b, pt(2, 2))
    assert not between_closed(a, b, pt(6, 3))


def test_proper_crossing():
    assert segments_properly_cross(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0))
    assert not segments_properly_cross(pt(0, 0), pt(2, 2), pt(1, 1), pt(3, 0))
    assert not segments_properly_cross(pt(0, 0), pt(1, 1), pt(2, 2), pt(3, 3))
    assert segments_touch(pt(0, 0), pt(2, 2), pt(1, 1), pt(3, 0))
    assert segments_touch(pt(0, 0), pt(1, 1), pt(1, 1), pt(2, 0))
    assert not segments_touch(pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1))


def test_line_intersection():
    p = line_intersection(pt(0, 0), pt(2, 2), pt(0, 2), pt(2, 0))
    assert p == pt(1, 1)
    assert line_intersection(pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)) is None


def test_segment_contact_params_transversal():
    ts = segment_contact_params(pt(0, 0), pt(4, 0), pt(1, -1), pt(1, 1))
    assert ts == [Fraction(1, 4)]
    assert segment_contact_params(pt(0, 0), pt(4, 0), pt(5, -1), pt(5, 1)) == []


def test_segment_contact_params_collinear_overlap():
    ts = segment_contact_params(pt(0, 0), pt(4, 0), pt(1, 0), pt(6, 0))
    assert ts == [Fraction(1, 4), Fraction(1)]
    ts2 = segment_contact_params(pt(0, 0), pt(4, 0), pt(2, 0), pt(2, 0))
    assert ts2 == [Fraction(1, 2)]
    assert segment_contact_params(pt(0, 0), pt(4, 0), pt(5, 0), pt(6, 0)) == []


SQUARE = (pt(0, 0), pt(10, 0), pt(10, 10), pt(0, 10))
HOLE = (pt(4, 4), pt(4, 6), pt(6, 6), pt(6, 4))


def make_domain() -> PolygonalDomain:
    d = PolygonalDomain(outer=SQUARE, holes=(HOLE,))
    d.validate()
    return d


def test_point_in_domain():
    d = make_domain()
    assert d.locate(pt(1, 1)) is Location.INTERIOR
    assert d.locate(pt(0, 0)) is Location.BOUNDARY
    assert d.locate(pt(5, 0)) is Location.BOUNDARY
    assert d.locate(pt(5, 5)) is Location.EXTERIOR
    assert d.locate(pt(4, 5)) is Location.BOUNDARY
    assert d.locate(pt(11, 5)) is Location.EXTERIOR
    assert d.locate(pt(-1, -1)) is Location.EXTERIOR
    assert d.contains(pt(1, 1))
    assert d.contains(pt(4, 5))
    assert not d.contains(pt(5, 5))


def test_domain_validation_rejects_bad_rings():
    with pytest.raises(DomainError):
        PolygonalDomain(outer=(pt(0, 0), pt(1, 0))).validate()
    with pytest.raises(DomainError):
        PolygonalDomain(outer=(pt(0, 0), pt(0, 10), pt(10, 10), pt(10, 0))).validate()
    with pytest.raises(DomainError):
        PolygonalDomain(
            outer=(pt(0, 0), pt(4, 4), pt(4, 0), pt(0, 4)),
        ).validate()
    with pytest.raises(DomainError):
        PolygonalDomain(
            outer=SQUARE,
            holes=((pt(4, 4), pt(6, 4), pt(6, 6), pt(4, 6)),),
        ).validate()
    with pytest.raises(DomainError):
        PolygonalDomain(
            outer=SQUARE,
            holes=((pt(8, 8), pt(8, 12), pt(12, 12), pt(12, 8)),),
        ).validate()


def test_signed_area():
    assert signed_area2(list(SQUARE)) == 200
    assert signed_area2(list(reversed(SQUARE))) == -200


def test_point_in_ring_vertex_ray_cases():
    ring = (pt(0, 0), pt(4, 0), pt(4, 4), pt(2, 2), pt(0, 4))
    assert point_in_ring(ring, pt(2, 1)) is Location.INTERIOR
    assert point_in_ring(ring, pt(2, 3)) is Location.EXTERIOR
    assert point_in_ring(ring, pt(2, 2)) is Location.BOUNDARY
    assert point_in_ring(ring, pt(1, 2)) is Location.INTERIOR


def test_convex_hull():
    hull = convex_hull([pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2), pt(1, 1), pt(1, 0)])
    assert hull == [pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)]


def test_clip_convex():
    tri = [pt(0, 0), pt(4, 0), pt(0, 4)]
    clipped = clip_convex(tri, pt(2, -1), pt(2, 5))
    assert signed_area2(clipped) == signed_area2([pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 4)])
    assert clip_convex(tri, pt(5, 0), pt(5, 1)) == tri
    assert clip_convex(tri, pt(5, 1), pt(5, 0)) == []


def test_convex_intersection_and_subtract():
    sq = [pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)]
    sq2 = [pt(2, 2), pt(6, 2), pt(6, 6), pt(2, 6)]
    inter = convex_intersection(sq, sq2)
    assert signed_area2(inter) == 2 * 4
    pieces = convex_subtract(sq, sq2)
    total = sum(signed_area2(p) for p in pieces)
    assert total == 2 * (16 - 4)
    assert convex_subtract(sq, sq) == []
    assert convex_subtract(sq, [pt(10, 10), pt(11, 10), pt(11, 11)]) != []


def test_point_in_convex():
    sq = [pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)]
    assert point_in_convex(sq, pt(2, 2))
    assert point_in_convex(sq, pt(0, 0))
    assert point_in_convex(sq, pt(2, 0))
    assert not point_in_convex(sq, pt(5, 2))
    assert point_in_convex([pt(1, 1)], pt(1, 1))
    assert point_in_convex([pt(0, 0), pt(2, 2)], pt(1, 1))
    assert not point_in_convex([pt(0, 0), pt(2, 2)], pt(2, 1))


def test_direction_order():
    dirs = [pt(1, 0), pt(1, 1), pt(0, 1), pt(-1, 1), pt(-1, 0), pt(-1, -1), pt(0, -1), pt(1, -1)]
    keys = [direction_key(d) for d in dirs]
    assert keys == sorted(keys)
    assert normalize_direction(pt(Fraction(1, 2), Fraction(3, 2))) == pt(1, 3)
    assert normalize_direction(pt(-4, -6)) == pt(-2, -3)


def test_rational_parse_format():
    assert parse_rational("3") == Fraction(3)
    assert parse_rational("-7/2") == Fraction(-7, 2)
    assert parse_rational("4/2") == Fraction(2)
    assert format_rational(Fraction(2)) == "2"
    assert format_rational(Fraction(-7, 2)) == "-7/2"
    for bad in ["1/0", "1/-2", "1.5", " 1", "1 ", "a", "", "--1", "1/ 2"]:
        with pytest.raises(RationalFormatError):
            parse_rational(bad)


@given(st.fractions(max_denominator=10**6))
def test_rational_round_trip(q: Fraction):
    assert parse_rational(format_rational(q)) == q


@given(points(), points(), points())
def test_orientation_antisymmetry(a: Point, b: Point, c: Point):
    assert orientation(a, b, c) == -orientation(a, c, b)
    assert orientation(a, b, c) == orientation(b, c, a)


@given(points(), points(), st.fractions(min_value=0, max_value=1, max_denominator=64))
def test_between_interpolation(a: Point, b: Point, t: Fraction):
    p = Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
    assert between_closed(a, b, p)
