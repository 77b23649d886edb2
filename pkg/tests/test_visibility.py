"""Tests for open visibility, visibility regions, covers, and chains."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hsforge.geometry import (
    Location,
    PolygonalDomain,
    convex_hull,
    ensure_ccw,
    point_in_convex,
    pt,
    signed_area2,
    triangulate_ring,
)
from hsforge.visibility import (
    CoverCertificate,
    FastDomain,
    SpectatorGroup,
    VisibilityError,
    check_cover,
    essentially_fixed_chain,
    is_fully_visible,
    region_in_domain,
    sees,
    visibility_region,
)


def ring(*pts_):
    return tuple(pt(x, y) for x, y in pts_)


UNIT_SQUARE = PolygonalDomain(ring((0, 0), (1, 0), (1, 1), (0, 1)))

SQUARE4 = PolygonalDomain(ring((0, 0), (4, 0), (4, 4), (0, 4)))

SQUARE4_HOLE = PolygonalDomain(
    ring((0, 0), (4, 0), (4, 4), (0, 4)),
    (ring((1, 1), (1, 3), (3, 3), (3, 1)),),
)

SQUARE4_TRI_HOLE = PolygonalDomain(
    ring((0, 0), (4, 0), (4, 4), (0, 4)),
    (ring((2, 2), (2, "5/2"), ("5/2", 2)),),
)

# Hexagonal room with two corner nooks.  The top-left nook has apex (0, 8)
# and mouth vertex (1, 6); the bottom-right nook has apex (13, 1) and mouth
# vertex (9, 0).  A spectator at either apex is pinned there: its visibility
# region ends at the mouth vertex along the nook's slant line.
HEXAGON = PolygonalDomain(ring((0, 0), (9, 0), (13, 1), (10, 6), (1, 6), (0, 8)))

HEX_REGION1 = ring((0, 0), (3, 0), (1, 6), (0, 8))
HEX_REGION2 = ring((3, 0), (9, 0), (13, 1), (10, 6), (1, 6))

# Edge on the line y = 8 - 2x, so its relative interior contains the domain
# vertex (1, 6) even though (1, 6) is not listed.
HEX_NFV_TRIANGLE = ring(("1/2", 7), (2, 4), (1, 4))


def rational_points(seed: int, count: int, box, denom: int = 64):
    rng = random.Random(seed)
    (x0, y0), (x1, y1) = box
    out = []
    while len(out) < count:
        x = Fraction(rng.randint(int(x0 * denom), int(x1 * denom)), denom)
        y = Fraction(rng.randint(int(y0 * denom), int(y1 * denom)), denom)
        out.append(pt(x, y))
    return out


def test_domains_validate():
    for dom in (UNIT_SQUARE, SQUARE4, SQUARE4_HOLE, SQUARE4_TRI_HOLE, HEXAGON):
        dom.validate()


def test_sees_straight_shot_in_square():
    assert sees(UNIT_SQUARE, pt("1/4", "1/2"), pt("3/4", "1/2"))


def test_sees_blocked_by_hole():
    assert not sees(SQUARE4_HOLE, pt("1/2", 2), pt("7/2", 2))


def test_sees_killed_by_hole_vertex():
    # The open segment passes through the hole vertex (2, 2).
    assert not sees(SQUARE4_TRI_HOLE, pt(1, 1), pt(3, 3))


def test_sees_grazing_wall_is_fine():
    # Sightline along the bottom wall between edge-interior points.
    assert sees(UNIT_SQUARE, pt("1/4", 0), pt("3/4", 0))


def test_sees_dies_at_domain_vertex():
    # Sightline along the bottom wall through the corner (1, 0) of SQUARE4
    # continued into... still inside SQUARE4, so use HEXAGON's top wall:
    # (0, 6) to (2, 6) passes through the vertex (1, 6).
    assert not sees(HEXAGON, pt(0, 6), pt(2, 6))
    assert sees(HEXAGON, pt("1/2", 6), pt(1, 6))


def test_sees_rejects_equal_points():
    with pytest.raises(VisibilityError):
        sees(UNIT_SQUARE, pt("1/2", "1/2"), pt("1/2", "1/2"))


def test_sees_rejects_outside_point():
    with pytest.raises(VisibilityError):
        sees(UNIT_SQUARE, pt("1/2", "1/2"), pt(2, 2))
    with pytest.raises(VisibilityError):
        sees(SQUARE4_HOLE, pt(2, 2), pt("1/2", "1/2"))


def test_sees_symmetry_random():
    pts = [
        q
        for q in rational_points(7, 120, ((0, 0), (4, 4)))
        if SQUARE4_HOLE.locate(q) is not Location.EXTERIOR
    ]
    for i in range(0, len(pts) - 1, 2):
        p, q = pts[i], pts[i + 1]
        if p == q:
            continue
        assert sees(SQUARE4_HOLE, p, q) == sees(SQUARE4_HOLE, q, p)


def test_hole_never_reveals():
    pts = [
        q
        for q in rational_points(11, 120, ((0, 0), (4, 4)))
        if SQUARE4_HOLE.locate(q) is not Location.EXTERIOR
    ]
    for i in range(0, len(pts) - 1, 2):
        p, q = pts[i], pts[i + 1]
        if p == q:
            continue
        if sees(SQUARE4_HOLE, p, q):
            assert sees(SQUARE4, p, q)


def test_visibility_region_convex_domain():
    apex = pt("1/3", "1/2")
    vr = visibility_region(UNIT_SQUARE, apex)
    assert vr.open_features == ()
    assert signed_area2(list(vr.star_polygon)) == signed_area2(
        list(UNIT_SQUARE.outer)
    )
    for q in rational_points(3, 40, ((0, 0), (1, 1)), denom=8):
        if q == apex or UNIT_SQUARE.locate(q) is Location.EXTERIOR:
            continue
        assert vr.contains(q)


def test_visibility_region_nook_apex():
    vr = visibility_region(HEXAGON, pt(0, 8))
    assert set(vr.star_polygon) == {pt(0, 8), pt(0, 0), pt(4, 0)}
    assert signed_area2(list(vr.star_polygon)) == 32
    assert vr.open_features == ((pt(1, 6), pt(4, 0)),)
    # Half-open feature window: the near end stays visible, the far end not.
    assert not vr.contains(pt(4, 0))
    assert vr.contains(pt(1, 6))
    assert vr.contains(pt("1/2", 7))
    assert not vr.contains(pt("5/2", 3))


def test_visibility_region_contains_matches_sees():
    cases = [
        (HEXAGON, pt(0, 8)),
        (HEXAGON, pt(13, 1)),
        (HEXAGON, pt(5, 3)),
        (SQUARE4_HOLE, pt("1/2", 2)),
        (SQUARE4_HOLE, pt(2, "7/2")),
    ]
    for domain, apex in cases:
        vr = visibility_region(domain, apex)
        x0, y0, x1, y1 = domain.bbox()
        xs = [x0 + Fraction(i, 2) for i in range(int((x1 - x0) * 2) + 1)]
        ys = [y0 + Fraction(j, 2) for j in range(int((y1 - y0) * 2) + 1)]
        for x in xs:
            for y in ys:
                q = pt(x, y)
                if q == apex or domain.locate(q) is Location.EXTERIOR:
                    continue
                assert vr.contains(q) == sees(domain, apex, q), (apex, q)


def test_visibility_region_star_stays_in_domain():
    for domain, apex in [
        (HEXAGON, pt(0, 8)),
        (HEXAGON, pt(13, 1)),
        (SQUARE4_HOLE, pt("1/2", "1/2")),
    ]:
        vr = visibility_region(domain, apex)
        assert all(
            domain.locate(v) is not Location.EXTERIOR for v in vr.star_polygon
        )
        for tri in vr.fan():
            assert region_in_domain(domain, tri), (apex, tri)


def test_fast_domain_matches_reference():
    for domain, box in [
        (HEXAGON, ((0, 0), (13, 8))),
        (SQUARE4_HOLE, ((0, 0), (4, 4))),
    ]:
        fast = FastDomain(domain)
        pts = rational_points(23, 160, box)
        for q in pts:
            assert fast.locate(q) is domain.locate(q), q
        inside = [q for q in pts if domain.locate(q) is not Location.EXTERIOR]
        for i in range(0, len(inside) - 1, 2):
            p, q = inside[i], inside[i + 1]
            if p == q:
                continue
            assert fast.sees(p, q) == sees(domain, p, q), (p, q)


def test_is_fully_visible_square_in_square():
    region = ring(("1/4", "1/4"), ("3/4", "1/4"), ("3/4", "3/4"), ("1/4", "3/4"))
    assert is_fully_visible(UNIT_SQUARE, list(region))


def test_is_fully_visible_cover_regions():
    assert is_fully_visible(HEXAGON, list(HEX_REGION1))
    assert is_fully_visible(HEXAGON, list(HEX_REGION2))


def test_not_fully_visible_edge_through_vertex():
    # Edge on the nook's slant line: the domain vertex (1, 6) sits in the
    # relative interior of one region edge.
    assert not is_fully_visible(HEXAGON, list(HEX_NFV_TRIANGLE))


def test_not_fully_visible_listed_but_not_extreme():
    # (1, 6) is listed as a region vertex but is collinear between (3, 0)
    # and (0, 8) ... actually between (4, 0) and (0, 8) on y = 8 - 2x, so it
    # is not an extreme point of the region and blocks visibility.
    region = ring((0, 0), (4, 0), (1, 6), (0, 8))
    assert not is_fully_visible(HEXAGON, list(region))


def test_fully_visible_segment_region():
    assert is_fully_visible(UNIT_SQUARE, [pt("1/4", "1/2"), pt("3/4", "1/2")])
    # Segment through the domain vertex (1, 6) is not fully visible.
    assert not is_fully_visible(HEXAGON, [pt(0, 6), pt(2, 6)])


def test_is_fully_visible_requires_containment():
    with pytest.raises(VisibilityError):
        is_fully_visible(
            UNIT_SQUARE, [pt("-1/2", "1/2"), pt("1/2", "1/2"), pt("1/2", "3/4")]
        )


def test_region_in_domain_rejects_hole_overlap():
    region = [pt("1/2", "1/2"), pt("7/2", "1/2"), pt("7/2", "7/2"), pt("1/2", "7/2")]
    assert not region_in_domain(SQUARE4_HOLE, region)
    inside_hole = [pt("3/2", "3/2"), pt("5/2", "3/2"), pt(2, "5/2")]
    assert not region_in_domain(SQUARE4_HOLE, inside_hole)
    ok = [pt("1/4", "1/4"), pt("15/4", "1/4"), pt(2, "3/4")]
    assert region_in_domain(SQUARE4_HOLE, ok)


def test_check_cover_valid_two_regions():
    cert = CoverCertificate.build(
        regions=[HEX_REGION1, HEX_REGION2], target=[HEXAGON.outer]
    )
    result = check_cover(HEXAGON, cert)
    assert result.is_valid
    assert result.kind == "valid"


def test_check_cover_gap_when_region_missing():
    cert = CoverCertificate.build(regions=[HEX_REGION1], target=[HEXAGON.outer])
    result = check_cover(HEXAGON, cert)
    assert result.kind == "gap"
    assert result.witness is not None
    assert HEXAGON.locate(result.witness) is not Location.EXTERIOR
    assert point_in_convex(ensure_ccw(list(HEX_REGION2)), result.witness)
    assert not point_in_convex(ensure_ccw(list(HEX_REGION1)), result.witness)


def test_check_cover_not_fully_visible_region():
    cert = CoverCertificate.build(
        regions=[HEX_NFV_TRIANGLE, HEX_REGION1, HEX_REGION2],
        target=[HEXAGON.outer],
    )
    result = check_cover(HEXAGON, cert)
    assert result.kind == "not_fully_visible"
    assert result.region_index == 0


def test_check_cover_rejects_region_outside():
    cert = CoverCertificate.build(
        regions=[ring((-1, 0), (3, 0), (1, 6), (0, 8)), HEX_REGION2],
        target=[HEXAGON.outer],
    )
    with pytest.raises(VisibilityError):
        check_cover(HEXAGON, cert)


def test_check_cover_square_split():
    left = ring((0, 0), ("1/2", 0), ("1/2", 1), (0, 1))
    right = ring(("1/2", 0), (1, 0), (1, 1), ("1/2", 1))
    cert = CoverCertificate.build(
        regions=[left, right], target=[UNIT_SQUARE.outer]
    )
    assert check_cover(UNIT_SQUARE, cert).is_valid

    shrunk = ring(("5/8", 0), (1, 0), (1, 1), ("5/8", 1))
    cert2 = CoverCertificate.build(
        regions=[left, shrunk], target=[UNIT_SQUARE.outer]
    )
    result = check_cover(UNIT_SQUARE, cert2)
    assert result.kind == "gap"
    assert Fraction(1, 2) < result.witness.x < Fraction(5, 8)


def test_check_cover_whitelist_segment_target():
    # Degenerate (zero area) target: a segment traced as a flat ring.  It can
    # only be covered by whitelisting the segment itself.
    target = ring((1, 1), (3, 1), (2, 1))
    bare = CoverCertificate.build(regions=[], target=[target])
    result = check_cover(SQUARE4, bare)
    assert result.kind == "gap"

    listed = CoverCertificate.build(
        regions=[], target=[target], whitelist=[(pt(1, 1), pt(3, 1))]
    )
    assert check_cover(SQUARE4, listed).is_valid


def test_check_cover_catches_thin_strip():
    # Cover misses a strip of width 1/16 below y = 1/2.
    left = ring((0, 0), ("1/2", 0), ("1/2", 1), (0, 1))
    right_hi = ring(("1/2", "1/2"), (1, "1/2"), (1, 1), ("1/2", 1))
    right_lo = ring(("9/16", 0), (1, 0), (1, "1/2"), ("9/16", "1/2"))
    cert = CoverCertificate.build(
        regions=[left, right_hi, right_lo], target=[UNIT_SQUARE.outer]
    )
    result = check_cover(UNIT_SQUARE, cert)
    assert result.kind == "gap"
    assert result.witness.x >= Fraction(1, 2)


def test_chain_confirms_designed_order():
    g1 = SpectatorGroup.build([pt(0, 8)], [HEX_REGION1])
    g2 = SpectatorGroup.build([pt(13, 1)], [HEX_REGION2])
    result = essentially_fixed_chain(HEXAGON, [g1, g2])
    assert result.confirmed, result


def test_chain_flags_reversed_order():
    g1 = SpectatorGroup.build([pt(0, 8)], [HEX_REGION1])
    g2 = SpectatorGroup.build([pt(13, 1)], [HEX_REGION2])
    result = essentially_fixed_chain(HEXAGON, [g2, g1])
    assert result.kind == "violation"
    assert result.index == 1
    assert result.witness is not None
    assert HEXAGON.locate(result.witness) is not Location.EXTERIOR


def test_chain_pair_group():
    pair = SpectatorGroup.build(
        [pt(0, 8), pt(13, 1)], [HEX_REGION1, HEX_REGION2]
    )
    result = essentially_fixed_chain(HEXAGON, [pair])
    assert result.confirmed, result


def test_chain_rejects_visible_pair():
    pair = SpectatorGroup.build([pt(5, 3), pt(6, 3)], [HEX_REGION1])
    with pytest.raises(VisibilityError):
        essentially_fixed_chain(HEXAGON, [pair])


def test_triangulate_ring_preserves_area():
    rings = [
        list(HEXAGON.outer),
        [pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, 2), pt(0, 2)],
        [pt(0, 0), pt("1/2", 0), pt(1, 0), pt(1, 1), pt(0, 1)],
    ]
    for r in rings:
        tris = triangulate_ring(r)
        total = sum(signed_area2(t) for t in tris)
        assert total == abs(signed_area2(r))
        assert all(signed_area2(t) > 0 for t in tris)
