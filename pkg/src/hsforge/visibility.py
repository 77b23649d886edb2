"""Open-visibility predicates, visibility regions, and spectator certification.

Visibility is "open": two points see each other when the open segment between
them stays inside the closed domain and meets no domain vertex.  A consequence
used throughout is that a sightline may graze walls but dies at the first
domain vertex it passes through.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import (
    Location,
    Point,
    PolygonalDomain,
    between_closed,
    between_open,
    convex_hull,
    convex_subtract_many,
    cross,
    cross_vec,
    direction_key,
    dot_vec,
    fan_triangles,
    interpolate,
    line_intersection,
    normalize_direction,
    orientation,
    point_in_convex,
    pt,
    segment_contact_params,
    segments_properly_cross,
    signed_area2,
    triangulate_ring,
)

__all__ = [
    "VisibilityError",
    "sees",
    "FastDomain",
    "VisRegion",
    "visibility_region",
    "region_in_domain",
    "is_fully_visible",
    "CoverCertificate",
    "CoverResult",
    "check_cover",
    "SpectatorGroup",
    "ChainResult",
    "essentially_fixed_chain",
]


class VisibilityError(ValueError):
    """Raised when a visibility query violates its preconditions."""


def _require_inside(domain: PolygonalDomain, p: Point, label: str) -> None:
    if domain.locate(p) is Location.EXTERIOR:
        raise VisibilityError(f"{label} {p} lies outside the domain")


def sees(domain: PolygonalDomain, p: Point, q: Point) -> bool:
    """Open-visibility test between two distinct points of the closed domain."""
    if p == q:
        raise VisibilityError("sees() requires two distinct points")
    _require_inside(domain, p, "point")
    _require_inside(domain, q, "point")
    d = q - p
    dd = dot_vec(d, d)
    for v in domain.vertices():
        w = v - p
        if cross_vec(d, w) == 0 and 0 < dot_vec(w, d) < dd:
            return False
    for a, b in domain.edges():
        if segments_properly_cross(p, q, a, b):
            return False
    params: set[Fraction] = {Fraction(0), Fraction(1)}
    for a, b in domain.edges():
        params.update(segment_contact_params(p, q, a, b))
    ordered = sorted(params)
    for t0, t1 in zip(ordered, ordered[1:]):
        if t0 == t1:
            continue
        mid = interpolate(p, q, (t0 + t1) / 2)
        if domain.locate(mid) is Location.EXTERIOR:
            return False
    return True


def _homog(p: Point) -> tuple[int, int, int]:
    xd = p.x.denominator
    yd = p.y.denominator
    return (p.x.numerator * yd, p.y.numerator * xd, xd * yd)


def _orient_h(
    o: tuple[int, int, int], a: tuple[int, int, int], b: tuple[int, int, int]
) -> int:
    ax = a[0] * o[2] - o[0] * a[2]
    ay = a[1] * o[2] - o[1] * a[2]
    bx = b[0] * o[2] - o[0] * b[2]
    by = b[1] * o[2] - o[1] * b[2]
    d = ax * by - ay * bx
    return (d > 0) - (d < 0)


def _between_strict_h(
    p: tuple[int, int, int], q: tuple[int, int, int], v: tuple[int, int, int]
) -> bool:
    """For collinear p,q,v: is v strictly between p and q?"""
    vx = v[0] * p[2] - p[0] * v[2]
    vy = v[1] * p[2] - p[1] * v[2]
    qx = q[0] * p[2] - p[0] * q[2]
    qy = q[1] * p[2] - p[1] * q[2]
    if vx * qx + vy * qy <= 0:
        return False
    wx = v[0] * q[2] - q[0] * v[2]
    wy = v[1] * q[2] - q[1] * v[2]
    px = p[0] * q[2] - q[0] * p[2]
    py = p[1] * q[2] - q[1] * p[2]
    return wx * px + wy * py > 0


class FastDomain:
    """Integer-arithmetic accelerator for repeated sees() queries on one domain.

    Semantics are identical to sees(); only the hot paths (vertex blocking,
    edge crossing, membership parity) run on homogeneous integer coordinates
    with a conservative float bounding-box prefilter.
    """

    __slots__ = ("domain", "_verts", "_edges", "_rings")

    def __init__(self, domain: PolygonalDomain) -> None:
        self.domain = domain
        self._verts = [(_homog(v), v) for v in domain.vertices()]
        self._edges = []
        for a, b in domain.edges():
            fa = (float(a.x), float(a.y))
            fb = (float(b.x), float(b.y))
            pad = 1e-9 * (1.0 + max(abs(fa[0]), abs(fa[1]), abs(fb[0]), abs(fb[1])))
            box = (
                min(fa[0], fb[0]) - pad,
                max(fa[0], fb[0]) + pad,
                min(fa[1], fb[1]) - pad,
                max(fa[1], fb[1]) + pad,
            )
            self._edges.append((_homog(a), _homog(b), a, b, box))
        self._rings = [
            [(_homog(v), v) for v in ring] for ring in domain.rings()
        ]

    def locate(self, p: Point) -> Location:
        hp = _homog(p)
        fx, fy = float(p.x), float(p.y)
        inside = False
        for ring in self._rings:
            n = len(ring)
            for i in range(n):
                ha, a = ring[i]
                hb, b = ring[(i + 1) % n]
                if _orient_h(ha, hb, hp) == 0:
                    if (
                        min(a.x, b.x) <= p.x <= max(a.x, b.x)
                        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
                    ):
                        return Location.BOUNDARY
                ay, by = a.y, b.y
                if (ay > p.y) != (by > p.y):
                    side = _orient_h(ha, hb, hp)
                    if by > ay:
                        if side > 0:
                            inside = not inside
                    else:
                        if side < 0:
                            inside = not inside
        return Location.INTERIOR if inside else Location.EXTERIOR

    def contains(self, p: Point) -> bool:
        return self.locate(p) is not Location.EXTERIOR

    def sees(self, p: Point, q: Point) -> bool:
        if p == q:
            raise VisibilityError("sees() requires two distinct points")
        hp, hq = _homog(p), _homog(q)
        for hv, v in self._verts:
            if _orient_h(hp, hq, hv) == 0 and _between_strict_h(hp, hq, hv):
                return False
        sx0, sx1 = (float(p.x), float(q.x)) if p.x <= q.x else (float(q.x), float(p.x))
        sy0, sy1 = (float(p.y), float(q.y)) if p.y <= q.y else (float(q.y), float(p.y))
        params: set[Fraction] = {Fraction(0), Fraction(1)}
        for ha, hb, a, b, box in self._edges:
            if box[1] < sx0 or box[0] > sx1 or box[3] < sy0 or box[2] > sy1:
                continue
            o1 = _orient_h(hp, hq, ha)
            o2 = _orient_h(hp, hq, hb)
            if (o1 > 0 and o2 > 0) or (o1 < 0 and o2 < 0):
                continue
            o3 = _orient_h(ha, hb, hp)
            o4 = _orient_h(ha, hb, hq)
            if (o3 > 0 and o4 > 0) or (o3 < 0 and o4 < 0):
                continue
            if o1 * o2 < 0 and o3 * o4 < 0:
                return False
            params.update(segment_contact_params(p, q, a, b))
        ordered = sorted(params)
        for t0, t1 in zip(ordered, ordered[1:]):
            if t0 == t1:
                continue
            mid = interpolate(p, q, (t0 + t1) / 2)
            if self.locate(mid) is Location.EXTERIOR:
                return False
        return True


def _radial_param(apex: Point, d: Point, x: Point) -> Fraction:
    if d.x != 0:
        return (x.x - apex.x) / d.x
    return (x.y - apex.y) / d.y


def _ray_point(apex: Point, d: Point, s: Fraction) -> Point:
    return Point(apex.x + d.x * s, apex.y + d.y * s)


@dataclass(frozen=True)
class VisRegion:
    """Star-shaped closure of a visibility region plus its invisible features.

    star_polygon is the closed region swept from the apex; open_features are
    half-open radial segments (near excluded, far included) on critical rays
    whose points lie in the star closure but are hidden behind a vertex or a
    tangent boundary stretch.
    """

    apex: Point
    star_polygon: tuple[Point, ...]
    open_features: tuple[tuple[Point, Point], ...]
    _dirs: tuple[Point, ...] = field(repr=False)
    _keys: tuple[tuple[int, Fraction], ...] = field(repr=False)
    _chords: tuple[tuple[Point, Point] | None, ...] = field(repr=False)
    _s_vis: tuple[Fraction, ...] = field(repr=False)

    def contains(self, q: Point) -> bool:
        """Exact membership: equals sees(domain, apex, q) for q in the domain."""
        if q == self.apex:
            return True
        nd = normalize_direction(q - self.apex)
        key = direction_key(nd)
        i = bisect_right(self._keys, key) - 1
        if i >= 0 and self._keys[i] == key:
            return _radial_param(self.apex, nd, q) <= self._s_vis[i]
        if i < 0:
            i = len(self._keys) - 1
        chord = self._chords[i]
        if chord is None:
            return False
        a, b = chord
        return cross(a, b, q) >= 0

    def fan(self) -> list[list[Point]]:
        """Positive-area triangles fanning the star polygon from the apex."""
        return fan_triangles(self.apex, list(self.star_polygon))


def _first_hit(
    apex: Point, d: Point, edges: Sequence[tuple[Point, Point]]
) -> tuple[Fraction, Point, Point] | None:
    best: tuple[Fraction, Point, Point] | None = None
    for a, b in edges:
        den = cross_vec(d, b - a)
        if den == 0:
            continue
        s = cross_vec(a - apex, b - a) / den
        if s <= 0:
            continue
        u = cross_vec(a - apex, d) / den
        if u < 0 or u > 1:
            continue
        if best is None or s < best[0]:
            best = (s, a, b)
    return best


def _boundary_hit(apex: Point, d: Point, a: Point, b: Point) -> Point:
    ip = line_intersection(apex, Point(apex.x + d.x, apex.y + d.y), a, b)
    if ip is not None:
        return ip
    for v in (a, b):
        w = v - apex
        if cross_vec(w, d) == 0 and dot_vec(w, d) > 0:
            return v
    raise AssertionError("wedge boundary ray misses its first-hit edge")


def _ray_contacts(
    apex: Point, d: Point, edges: Sequence[tuple[Point, Point]]
) -> list[Fraction]:
    dd = dot_vec(d, d)
    params: set[Fraction] = {Fraction(0)}
    for a, b in edges:
        den = cross_vec(d, b - a)
        if den != 0:
            s = cross_vec(a - apex, b - a) / den
            u = cross_vec(a - apex, d) / den
            if s >= 0 and 0 <= u <= 1:
                params.add(s)
        elif cross_vec(d, a - apex) == 0:
            sa = dot_vec(a - apex, d) / dd
            sb = dot_vec(b - apex, d) / dd
            lo, hi = min(sa, sb), max(sa, sb)
            if hi >= 0:
                params.add(max(lo, Fraction(0)))
                params.add(hi)
    return sorted(params)


def visibility_region(domain: PolygonalDomain, p: Point) -> VisRegion:
    """Rotational sweep around p; exact star polygon plus invisible features."""
    _require_inside(domain, p, "apex")
    edges = list(domain.edges())
    verts = domain.vertices()

    seen: dict[tuple[Fraction, Fraction], Point] = {}
    for v in verts:
        if v != p:
            nd = normalize_direction(v - p)
            seen[(nd.x, nd.y)] = nd
    for ax in (pt(1, 0), pt(0, 1), pt(-1, 0), pt(0, -1)):
        seen.setdefault((ax.x, ax.y), ax)
    dirs = sorted(seen.values(), key=direction_key)
    m = len(dirs)

    chords: list[tuple[Point, Point] | None] = []
    for i in range(m):
        d1 = dirs[i]
        d2 = dirs[(i + 1) % m]
        dm = Point(d1.x + d2.x, d1.y + d2.y)
        hit = _first_hit(p, dm, edges)
        if hit is None:
            chords.append(None)
            continue
        s_first, ea, eb = hit
        mid = _ray_point(p, dm, s_first / 2)
        if domain.locate(mid) is Location.EXTERIOR:
            chords.append(None)
            continue
        chords.append((_boundary_hit(p, d1, ea, eb), _boundary_hit(p, d2, ea, eb)))

    ring: list[Point] = []
    for i in range(m):
        chord = chords[i]
        if chord is None:
            if not ring or ring[-1] != p:
                ring.append(p)
        else:
            for q in chord:
                if not ring or ring[-1] != q:
                    ring.append(q)
    while len(ring) > 1 and ring[0] == ring[-1]:
        ring.pop()
    if all(q == p for q in ring):
        raise AssertionError("apex sees no wedge; invalid domain or apex")

    s_vis: list[Fraction] = []
    features: list[tuple[Point, Point]] = []
    for j, d in enumerate(dirs):
        s_ring = Fraction(0)
        prev_chord = chords[(j - 1) % m]
        if prev_chord is not None:
            s_ring = max(s_ring, _radial_param(p, d, prev_chord[1]))
        if chords[j] is not None:
            s_ring = max(s_ring, _radial_param(p, d, chords[j][0]))
        if s_ring == 0:
            s_vis.append(Fraction(0))
            continue

        contacts = _ray_contacts(p, d, edges)
        s_air = contacts[-1]
        for t0, t1 in zip(contacts, contacts[1:]):
            if t0 == t1:
                continue
            mid = _ray_point(p, d, (t0 + t1) / 2)
            if domain.locate(mid) is Location.EXTERIOR:
                s_air = t0
                break
        s_stop = s_air
        for v in verts:
            if v == p:
                continue
            w = v - p
            if cross_vec(d, w) == 0 and dot_vec(w, d) > 0:
                s_stop = min(s_stop, _radial_param(p, d, v))
        if s_stop < s_ring:
            features.append((_ray_point(p, d, s_stop), _ray_point(p, d, s_ring)))
            s_vis.append(s_stop)
        else:
            s_vis.append(s_ring)

    return VisRegion(
        apex=p,
        star_polygon=tuple(ring),
        open_features=tuple(features),
        _dirs=tuple(dirs),
        _keys=tuple(direction_key(d) for d in dirs),
        _chords=tuple(chords),
        _s_vis=tuple(s_vis),
    )


def _segment_clip_params(
    ring: Sequence[Point], a: Point, b: Point
) -> tuple[Fraction, Fraction] | None:
    """Parameter interval of segment ab inside a convex ccw ring, or None."""
    t0, t1 = Fraction(0), Fraction(1)
    n = len(ring)
    for i in range(n):
        u, v = ring[i], ring[(i + 1) % n]
        c0 = cross(u, v, a)
        c1 = cross(u, v, b)
        if c0 < 0 and c1 < 0:
            return None
        if c0 == c1:
            continue
        t = c0 / (c0 - c1)
        if c0 < 0:
            t0 = max(t0, t)
        elif c1 < 0:
            t1 = min(t1, t)
    if t0 > t1:
        return None
    return t0, t1


def _segment_in_domain(domain: PolygonalDomain, a: Point, b: Point) -> bool:
    if a == b:
        return domain.locate(a) is not Location.EXTERIOR
    for u, v in domain.edges():
        if segments_properly_cross(a, b, u, v):
            return False
    params: set[Fraction] = {Fraction(0), Fraction(1)}
    for u, v in domain.edges():
        params.update(segment_contact_params(a, b, u, v))
    ordered = sorted(params)
    for t0, t1 in zip(ordered, ordered[1:]):
        if t0 == t1:
            continue
        mid = interpolate(a, b, (t0 + t1) / 2)
        if domain.locate(mid) is Location.EXTERIOR:
            return False
    return True


def _strict_corners(region: Sequence[Point]) -> list[Point]:
    pts = [pt(q.x, q.y) if not isinstance(q, Point) else q for q in region]
    unique: list[Point] = []
    for q in pts:
        if q not in unique:
            unique.append(q)
    if len(unique) <= 2:
        return unique
    return convex_hull(unique)


def region_in_domain(domain: PolygonalDomain, region: Sequence[Point]) -> bool:
    """Closed convex region containment in the closed domain."""
    pts = list(region)
    for q in pts:
        if domain.locate(q) is Location.EXTERIOR:
            return False
    n = len(pts)
    for i in range(n):
        if not _segment_in_domain(domain, pts[i], pts[(i + 1) % n]):
            return False
    corners = _strict_corners(pts)
    if len(corners) >= 3:
        for a, b in domain.edges():
            clipped = _segment_clip_params(corners, a, b)
            if clipped is None:
                continue
            t0, t1 = clipped
            if t0 == t1:
                continue
            mid = interpolate(a, b, (t0 + t1) / 2)
            if all(cross(corners[i], corners[(i + 1) % len(corners)], mid) > 0
                   for i in range(len(corners))):
                return False
        cx = sum((q.x for q in corners), Fraction(0)) / len(corners)
        cy = sum((q.y for q in corners), Fraction(0)) / len(corners)
        if domain.locate(Point(cx, cy)) is Location.EXTERIOR:
            return False
    return True


def is_fully_visible(domain: PolygonalDomain, region: Sequence[Point]) -> bool:
    """True iff no domain vertex sits on region's boundary except at corners.

    Corners are the extreme points of the convex region; a domain vertex in
    the relative interior of a geometric edge (including one listed as a
    collinear "corner") blocks some pair of region points, so the region is
    not fully visible.
    """
    pts = [q if isinstance(q, Point) else pt(*q) for q in region]
    if not region_in_domain(domain, pts):
        raise VisibilityError("region is not contained in the domain")
    corners = _strict_corners(pts)
    corner_set = set(corners)
    if len(corners) >= 3:
        hull = corners
        for v in domain.vertices():
            if v in corner_set:
                continue
            if point_in_convex(hull, v):
                return False
    elif len(corners) == 2:
        a, b = corners
        for v in domain.vertices():
            if v in corner_set:
                continue
            if orientation(a, b, v) == 0 and between_open(a, b, v):
                return False
    return True


@dataclass(frozen=True)
class CoverCertificate:
    """Claim that a target is covered up to whitelisted segments.

    Coverage is provided by closed convex fully-visible regions plus the
    exact visibility regions of designated spectator positions.  Each region
    and each whitelisted segment can host at most one hidden point, and a
    confirmed spectator chain pins at most one point per spectator, so the
    certificate bounds the hidden-set size by
    ``len(regions) + len(whitelist) + len(spectators)``.
    """

    regions: tuple[tuple[Point, ...], ...]
    target: tuple[tuple[Point, ...], ...]
    whitelist: tuple[tuple[Point, Point], ...] = ()
    spectators: tuple[Point, ...] = ()

    @staticmethod
    def build(
        regions: Iterable[Sequence[Point | tuple]],
        target: Iterable[Sequence[Point | tuple]],
        whitelist: Iterable[tuple] = (),
        spectators: Iterable[Point | tuple] = (),
    ) -> "CoverCertificate":
        regs = tuple(tuple(q if isinstance(q, Point) else pt(*q) for q in r) for r in regions)
        tgt = tuple(tuple(q if isinstance(q, Point) else pt(*q) for q in r) for r in target)
        wl = tuple(
            (a if isinstance(a, Point) else pt(*a), b if isinstance(b, Point) else pt(*b))
            for a, b in whitelist
        )
        spect = tuple(q if isinstance(q, Point) else pt(*q) for q in spectators)
        return CoverCertificate(regs, tgt, wl, spect)

    @property
    def counting_size(self) -> int:
        return len(self.regions) + len(self.whitelist) + len(self.spectators)


@dataclass(frozen=True)
class CoverResult:
    kind: str
    witness: Point | None = None
    region_index: int | None = None

    @property
    def is_valid(self) -> bool:
        return self.kind == "valid"


def _point_in_target(target: Sequence[Sequence[Point]], q: Point) -> bool:
    from .geometry import point_in_ring

    return any(point_in_ring(list(ring), q) is not Location.EXTERIOR for ring in target)


def _covered(
    regions: Sequence[Sequence[Point]],
    whitelist: Sequence[tuple[Point, Point]],
    vis: Sequence[VisRegion],
    q: Point,
) -> bool:
    for region in regions:
        if point_in_convex(list(region), q):
            return True
    for a, b in whitelist:
        if q == a or q == b:
            return True
        if orientation(a, b, q) == 0 and between_closed(a, b, q):
            return True
    for vr in vis:
        if vr.contains(q):
            return True
    return False


def check_cover(domain: PolygonalDomain, certificate: CoverCertificate) -> CoverResult:
    """Exact cover check: target minus regions, spectator visibility and
    whitelisted segments must be empty."""
    from .geometry import ensure_ccw

    for idx, region in enumerate(certificate.regions):
        if not region_in_domain(domain, region):
            raise VisibilityError(f"cover region {idx} is not contained in the domain")
        if not is_fully_visible(domain, region):
            return CoverResult("not_fully_visible", region_index=idx)
    regions_ccw = [ensure_ccw(list(r)) for r in certificate.regions]
    vis = [visibility_region(domain, p) for p in certificate.spectators]
    vis_fans = [tri for vr in vis for tri in vr.fan()]

    pieces: list[list[Point]] = []
    for ring in certificate.target:
        if len(ring) >= 3 and signed_area2(list(ring)) != 0:
            pieces.extend(triangulate_ring(list(ring)))
    cutters = [r for r in regions_ccw if len(_strict_corners(r)) >= 3]
    cutters += [tri for tri in vis_fans if signed_area2(list(tri)) != 0]
    residual = convex_subtract_many(pieces, cutters)
    if residual:
        piece = residual[0]
        cx = sum((q.x for q in piece), Fraction(0)) / len(piece)
        cy = sum((q.y for q in piece), Fraction(0)) / len(piece)
        return CoverResult("gap", witness=Point(cx, cy))

    segments: list[tuple[Point, Point]] = []
    for ring in certificate.target:
        n = len(ring)
        for i in range(n):
            segments.append((ring[i], ring[(i + 1) % n]))
    for region in certificate.regions:
        n = len(region)
        for i in range(n):
            segments.append((region[i], region[(i + 1) % n]))
    for tri in vis_fans:
        n = len(tri)
        for i in range(n):
            segments.append((tri[i], tri[(i + 1) % n]))
    split_points = [q for seg in segments for q in seg]
    split_points += [q for wl in certificate.whitelist for q in wl]

    for a, b in segments:
        if a == b:
            continue
        params: set[Fraction] = {Fraction(0), Fraction(1)}
        for u, v in segments:
            if (u, v) == (a, b):
                continue
            params.update(segment_contact_params(a, b, u, v))
        d = b - a
        dd = dot_vec(d, d)
        for q in split_points:
            w = q - a
            if cross_vec(d, w) == 0:
                t = dot_vec(w, d) / dd
                if 0 <= t <= 1:
                    params.add(t)
        ordered = sorted(params)
        candidates = [interpolate(a, b, t) for t in ordered]
        candidates += [
            interpolate(a, b, (t0 + t1) / 2)
            for t0, t1 in zip(ordered, ordered[1:])
            if t0 != t1
        ]
        for q in candidates:
            if not _point_in_target(certificate.target, q):
                continue
            if not _covered(regions_ccw, certificate.whitelist, vis, q):
                return CoverResult("gap", witness=q)
    return CoverResult("valid")


@dataclass(frozen=True)
class SpectatorGroup:
    """One or two designated spectator positions with their fully-visible covers."""

    points: tuple[Point, ...]
    regions: tuple[tuple[Point, ...], ...]

    @staticmethod
    def build(
        points: Iterable[Point | tuple],
        regions: Iterable[Sequence[Point | tuple]] = (),
    ) -> "SpectatorGroup":
        pts_ = tuple(q if isinstance(q, Point) else pt(*q) for q in points)
        regs = tuple(tuple(q if isinstance(q, Point) else pt(*q) for q in r) for r in regions)
        return SpectatorGroup(pts_, regs)


@dataclass(frozen=True)
class ChainResult:
    kind: str
    index: int | None = None
    witness: Point | None = None

    @property
    def confirmed(self) -> bool:
        return self.kind == "confirmed"


_EDGE_STOPS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def _sample_points(pieces: Iterable[Sequence[Point]]) -> set[Point]:
    samples: set[Point] = set()
    for piece in pieces:
        n = len(piece)
        if n == 0:
            continue
        cx = sum((q.x for q in piece), Fraction(0)) / n
        cy = sum((q.y for q in piece), Fraction(0)) / n
        samples.add(Point(cx, cy))
        for i in range(n):
            samples.add(piece[i])
            for t in _EDGE_STOPS:
                samples.add(interpolate(piece[i], piece[(i + 1) % n], t))
    return samples


def _feature_probes(vis: Sequence[VisRegion]) -> set[Point]:
    """Points hugging each invisible window from both sides, plus its near end.

    Thin visibility slivers are bounded by these windows; probing just off the
    window line lands samples inside them, where plain fan sampling cannot.
    """
    out: set[Point] = set()
    for vr in vis:
        for near, far in vr.open_features:
            out.add(near)
            d = far - near
            m = max(abs(d.x), abs(d.y))
            if m == 0:
                continue
            off = Point(-d.y * Fraction(1, 64), d.x * Fraction(1, 64))
            for t in _EDGE_STOPS:
                base = interpolate(near, far, t)
                out.add(Point(base.x + off.x, base.y + off.y))
                out.add(Point(base.x - off.x, base.y - off.y))
    return out


def essentially_fixed_chain(
    domain: PolygonalDomain,
    chain: Sequence[SpectatorGroup],
    exempt_regions: Sequence[Sequence[Point]] = (),
    exempt_segments: Sequence[tuple[Point, Point]] = (),
) -> ChainResult:
    """Check each group is vision (co-)minimal relative to its predecessors.

    Group i fails when some sampled alternative position (inside the group's
    visibility, outside earlier groups' visibility) misses a sampled witness
    point that the designated spectators do see, witness also outside earlier
    visibility.  For pair groups only mutually non-visible alternative pairs
    count, and a witness must be missed by both members.  The failing group
    index is reported 1-based.

    Exempt regions and segments are counted as their own cells by the bound,
    so points on them are excluded from every group's scope.
    """
    from .geometry import ensure_ccw

    fast = FastDomain(domain)

    def fsees(a: Point, b: Point) -> bool:
        return a == b or fast.sees(a, b)

    exempt_ccw = [ensure_ccw(list(r)) for r in exempt_regions]

    def exempted(q: Point) -> bool:
        for region in exempt_ccw:
            if point_in_convex(region, q):
                return True
        for a, b in exempt_segments:
            d = b - a
            w = q - a
            if cross_vec(d, w) == 0 and 0 <= dot_vec(w, d) <= dot_vec(d, d):
                return True
        return False

    earlier: list[VisRegion] = []

    def in_earlier(q: Point) -> bool:
        return exempted(q) or any(vr.contains(q) for vr in earlier)

    for gi, group in enumerate(chain, start=1):
        if not 1 <= len(group.points) <= 2:
            raise VisibilityError("spectator group must hold one or two points")
        if len(group.points) == 2 and fast.sees(group.points[0], group.points[1]):
            raise VisibilityError(
                f"group {gi} pair is mutually visible; not a valid hidden pair"
            )
        vis = [visibility_region(domain, q) for q in group.points]

        pieces = [tri for vr in vis for tri in vr.fan()]
        cutters = [tri for vr in earlier for tri in vr.fan()]
        residual = convex_subtract_many(pieces, cutters)
        raw = _sample_points(residual)
        raw |= _feature_probes(vis)

        witnesses = sorted(
            (
                w
                for w in raw
                if fast.contains(w)
                and any(fsees(q, w) for q in group.points)
                and not in_earlier(w)
            ),
            key=lambda q: (q.x, q.y),
        )

        alt_pool = set(raw)
        alt_pool.update(_sample_points(group.regions))
        alternates: list[list[Point]] = []
        for q in group.points:
            alternates.append(
                sorted(
                    (
                        a
                        for a in alt_pool
                        if a not in group.points
                        and fast.contains(a)
                        and fsees(q, a)
                        and not in_earlier(a)
                    ),
                    key=lambda x: (x.x, x.y),
                )
            )

        if len(group.points) == 1:
            cloud = sorted(set(alternates[0]) | set(witnesses), key=lambda q: (q.x, q.y))
            hull = convex_hull(cloud) if len(cloud) >= 3 else list(cloud)
            mutual = False
            if len(hull) >= 3 and region_in_domain(domain, hull):
                try:
                    mutual = is_fully_visible(domain, hull)
                except VisibilityError:
                    mutual = False
            if not mutual:
                for a in alternates[0]:
                    for w in witnesses:
                        if a == w:
                            continue
                        if not fast.sees(a, w):
                            return ChainResult("violation", index=gi, witness=w)
        else:
            for a in alternates[0]:
                missed = [w for w in witnesses if w != a and not fsees(a, w)]
                if not missed:
                    continue
                for b in alternates[1]:
                    if a == b or fast.sees(a, b):
                        continue
                    for w in missed:
                        if w != b and not fsees(b, w):
                            return ChainResult("violation", index=gi, witness=w)
        earlier.extend(vis)
    return ChainResult("confirmed")
