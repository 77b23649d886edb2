"""Brute-force hidden-set oracle tests."""
from __future__ import annotations

from hsforge.geometry import PolygonalDomain, pt
from hsforge.model import Instance
from hsforge.oracle import brute_force_lower_bound
from hsforge.verifier import verify


def ring(*pts_):
    return tuple(pt(x, y) for x, y in pts_)


UNIT_SQUARE = PolygonalDomain(ring((0, 0), (1, 0), (1, 1), (0, 1)))
PENTAGON = PolygonalDomain(ring((0, 0), (2, 0), (3, 2), (1, 4), (-1, 2)))
HEXAGON = PolygonalDomain(ring((0, 0), (9, 0), (13, 1), (10, 6), (1, 6), (0, 8)))
SQUARE4_HOLE = PolygonalDomain(
    ring((0, 0), (4, 0), (4, 4), (0, 4)),
    (ring((1, 1), (1, 3), (3, 3), (3, 1)),),
)


def test_convex_polygons_hide_one_point():
    assert brute_force_lower_bound(UNIT_SQUARE).size == 1
    assert brute_force_lower_bound(PENTAGON).size == 1


def test_two_nook_polygon_hides_two():
    result = brute_force_lower_bound(HEXAGON)
    assert result.size == 2
    assert result.complete
    verdict = verify(Instance(domain=HEXAGON, threshold=2), result.placement)
    assert verdict.accepted


def test_square_with_hole_hides_at_least_four():
    result = brute_force_lower_bound(SQUARE4_HOLE)
    assert result.size >= 4
    verdict = verify(
        Instance(domain=SQUARE4_HOLE, threshold=result.size), result.placement
    )
    assert verdict.accepted


def test_deterministic_across_runs():
    a = brute_force_lower_bound(HEXAGON)
    b = brute_force_lower_bound(HEXAGON)
    assert a == b


def test_budget_truncation_is_flagged():
    result = brute_force_lower_bound(HEXAGON, budget=5)
    assert not result.complete
    assert result.size >= 1


def test_hints_enter_the_pool():
    hinted = brute_force_lower_bound(HEXAGON, hints=(pt("1/2", 7), pt(12, 1)))
    assert hinted.size == 2
