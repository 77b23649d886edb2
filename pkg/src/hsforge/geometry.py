"""Exact planar geometry over rationals.

Points, segment predicates, simple rings, polygonal domains with holes,
and convex clipping. Every predicate is decided exactly with Fraction
arithmetic; nothing here rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence


@dataclass(frozen=True, slots=True)
class Point:
    x: Fraction
    y: Fraction

    def __iter__(self) -> Iterator[Fraction]:
        yield self.x
        yield self.y

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k: Fraction | int) -> "Point":
        return Point(self.x * k, self.y * k)


def pt(x: object, y: object) -> Point:
    """Point constructor coercing ints and rational strings to Fraction."""
    return Point(Fraction(x), Fraction(y))  # type: ignore[arg-type]


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """Cross product of (a - o) and (b - o)."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def cross_vec(u: Point, v: Point) -> Fraction:
    return u.x * v.y - u.y * v.x


def dot_vec(u: Point, v: Point) -> Fraction:
    return u.x * v.x + u.y * v.y


def orientation(o: Point, a: Point, b: Point) -> int:
    """Sign of the turn o -> a -> b: +1 left, -1 right, 0 collinear."""
    c = cross(o, a, b)
    if c > 0:
        return 1
    if c < 0:
        return -1
    return 0


def between_closed(a: Point, b: Point, p: Point) -> bool:
    """p lies on the closed segment ab."""
    if orientation(a, b, p) != 0:
        return False
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def between_open(a: Point, b: Point, p: Point) -> bool:
    """p lies strictly inside the segment ab."""
    return p != a and p != b and between_closed(a, b, p)


def segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """The open segments ab and cd cross transversally at one point."""
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool:
    """The closed segments ab and cd share at least one point."""
    if segments_properly_cross(a, b, c, d):
        return True
    return (
        between_closed(a, b, c)
        or between_closed(a, b, d)
        or between_closed(c, d, a)
        or between_closed(c, d, b)
    )


def line_intersection(p: Point, q: Point, a: Point, b: Point) -> Point | None:
    """Intersection of the support lines pq and ab; None when parallel."""
    r = q - p
    s = b - a
    denom = cross_vec(r, s)
    if denom == 0:
        return None
    t = cross_vec(a - p, s) / denom
    return Point(p.x + t * r.x, p.y + t * r.y)


def interpolate(a: Point, b: Point, t: Fraction) -> Point:
    return Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))


def midpoint(a: Point, b: Point) -> Point:
    return interpolate(a, b, Fraction(1, 2))


def segment_contact_params(p: Point, q: Point, a: Point, b: Point) -> list[Fraction]:
    """Parameters t in [0,1] where p + t(q-p) meets the closed segment ab.

    Transversal contact yields one value; collinear overlap yields the
    endpoints of the overlap interval clipped to [0,1].
    """
    r = q - p
    s = b - a
    ap = a - p
    denom = cross_vec(r, s)
    if denom != 0:
        t = cross_vec(ap, s) / denom
        u = cross_vec(ap, r) / denom
        if 0 <= t <= 1 and 0 <= u <= 1:
            return [t]
        return []
    if cross_vec(ap, r) != 0:
        return []
    rr = dot_vec(r, r)
    if rr == 0:
        return [Fraction(0)] if between_closed(a, b, p) else []
    ta = dot_vec(a - p, r) / rr
    tb = dot_vec(b - p, r) / rr
    lo, hi = (ta, tb) if ta <= tb else (tb, ta)
    lo = max(lo, Fraction(0))
    hi = min(hi, Fraction(1))
    if lo > hi:
        return []
    return [lo] if lo == hi else [lo, hi]


def normalize_direction(d: Point) -> Point:
    """Scale a nonzero direction to its primitive integer form (exact)."""
    if d.x == 0 and d.y == 0:
        raise ValueError("zero direction")
    den_lcm = d.x.denominator * d.y.denominator // gcd(d.x.denominator, d.y.denominator)
    xi = d.x.numerator * (den_lcm // d.x.denominator)
    yi = d.y.numerator * (den_lcm // d.y.denominator)
    g = gcd(abs(xi), abs(yi))
    return Point(Fraction(xi // g), Fraction(yi // g))


def direction_key(d: Point) -> tuple[int, Fraction]:
    """Sort key ordering nonzero directions counterclockwise from the +x axis."""
    if d.x > 0 and d.y >= 0:
        return (0, d.y / d.x)
    if d.x <= 0 and d.y > 0:
        return (1, -d.x / d.y)
    if d.x < 0 and d.y <= 0:
        return (2, d.y / d.x)
    if d.x >= 0 and d.y < 0:
        return (3, -d.x / d.y)
    raise ValueError("zero direction")


def signed_area2(ring: Sequence[Point]) -> Fraction:
    """Twice the signed area; positive for counterclockwise rings."""
    total = Fraction(0)
    n = len(ring)
    for i in range(n):
        a = ring[i]
        b = ring[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return total


class Location(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def point_in_ring(ring: Sequence[Point], p: Point) -> Location:
    """Locate p relative to a simple ring (orientation-independent)."""
    n = len(ring)
    for i in range(n):
        a = ring[i]
        b = ring[(i + 1) % n]
        if between_closed(a, b, p):
            return Location.BOUNDARY
    inside = False
    for i in range(n):
        a = ring[i]
        b = ring[(i + 1) % n]
        if (a.y > p.y) != (b.y > p.y):
            t = (p.y - a.y) / (b.y - a.y)
            xcross = a.x + t * (b.x - a.x)
            if xcross > p.x:
                inside = not inside
    return Location.INTERIOR if inside else Location.EXTERIOR


class DomainError(ValueError):
    """A ring set does not form a valid polygonal domain."""


def _validate_ring(ring: Sequence[Point], label: str) -> None:
    n = len(ring)
    if n < 3:
        raise DomainError(f"{label}: ring needs at least 3 vertices, got {n}")
    if len({(v.x, v.y) for v in ring}) != n:
        raise DomainError(f"{label}: repeated vertex")
    for i in range(n):
        a = ring[i]
        b = ring[(i + 1) % n]
        c = ring[(i + 2) % n]
        if orientation(a, b, c) == 0 and (between_closed(a, b, c) or between_closed(b, c, a)):
            raise DomainError(f"{label}: degenerate spike at vertex {(i + 1) % n}")
    for i in range(n):
        a = ring[i]
        b = ring[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            c = ring[j]
            d = ring[(j + 1) % n]
            if segments_touch(a, b, c, d):
                raise DomainError(f"{label}: edges {i} and {j} intersect")


@dataclass(frozen=True)
class PolygonalDomain:
    """A simple polygon (counterclockwise) with disjoint interior holes (clockwise)."""

    outer: tuple[Point, ...]
    holes: tuple[tuple[Point, ...], ...] = ()

    def rings(self) -> Iterator[tuple[Point, ...]]:
        yield self.outer
        yield from self.holes

    def edges(self) -> Iterator[tuple[Point, Point]]:
        for ring in self.rings():
            n = len(ring)
            for i in range(n):
                yield ring[i], ring[(i + 1) % n]

    def vertices(self) -> tuple[Point, ...]:
        out: list[Point] = []
        for ring in self.rings():
            out.extend(ring)
        return tuple(out)

    def validate(self) -> None:
        _validate_ring(self.outer, "outer")
        if signed_area2(self.outer) <= 0:
            raise DomainError("outer ring must be counterclockwise")
        for k, hole in enumerate(self.holes):
            _validate_ring(hole, f"hole {k}")
            if signed_area2(hole) >= 0:
                raise DomainError(f"hole {k} must be clockwise")
            for v in hole:
                if point_in_ring(self.outer, v) is not Location.INTERIOR:
                    raise DomainError(f"hole {k} is not strictly inside the outer ring")
        rings = list(self.rings())
        for i in range(len(rings)):
            for j in range(i + 1, len(rings)):
                for a, b in _ring_edges(rings[i]):
                    for c, d in _ring_edges(rings[j]):
                        if segments_touch(a, b, c, d):
                            raise DomainError(f"rings {i} and {j} touch")
        for i in range(1, len(rings)):
            for j in range(1, len(rings)):
                if i != j and point_in_ring(rings[j], rings[i][0]) is Location.INTERIOR:
                    raise DomainError(f"hole {i - 1} lies inside hole {j - 1}")

    def locate(self, p: Point) -> Location:
        loc = point_in_ring(self.outer, p)
        if loc is not Location.INTERIOR:
            return loc
        for hole in self.holes:
            inner = point_in_ring(hole, p)
            if inner is Location.BOUNDARY:
                return Location.BOUNDARY
            if inner is Location.INTERIOR:
                return Location.EXTERIOR
        return Location.INTERIOR

    def contains(self, p: Point) -> bool:
        """p lies in the closed domain."""
        return self.locate(p) is not Location.EXTERIOR

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [v.x for v in self.outer]
        ys = [v.y for v in self.outer]
        return min(xs), min(ys), max(xs), max(ys)


def _ring_edges(ring: Sequence[Point]) -> Iterator[tuple[Point, Point]]:
    n = len(ring)
    for i in range(n):
        yield ring[i], ring[(i + 1) % n]


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Counterclockwise convex hull; collinear boundary points are dropped."""
    pts = sorted(set((p.x, p.y) for p in points))
    if len(pts) <= 2:
        return [Point(x, y) for x, y in pts]
    def build(seq: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
        out: list[tuple[Fraction, Fraction]] = []
        for q in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                if (a[0] - o[0]) * (q[1] - o[1]) - (a[1] - o[1]) * (q[0] - o[0]) <= 0:
                    out.pop()
                else:
                    break
            out.append(q)
        return out
    lower = build(pts)
    upper = build(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    return [Point(x, y) for x, y in hull]


def clip_convex(poly: Sequence[Point], a: Point, b: Point) -> list[Point]:
    """Intersect a convex ccw polygon with the closed half-plane left of line ab."""
    if not poly:
        return []
    out: list[Point] = []
    n = len(poly)
    for i in range(n):
        cur = poly[i]
        nxt = poly[(i + 1) % n]
        c_cur = cross(a, b, cur)
        c_nxt = cross(a, b, nxt)
        if c_cur >= 0:
            out.append(cur)
        if (c_cur > 0 and c_nxt < 0) or (c_cur < 0 and c_nxt > 0):
            ip = line_intersection(cur, nxt, a, b)
            assert ip is not None
            out.append(ip)
    res: list[Point] = []
    for p in out:
        if not res or res[-1] != p:
            res.append(p)
    if len(res) >= 2 and res[0] == res[-1]:
        res.pop()
    return res


def convex_intersection(p_poly: Sequence[Point], q_poly: Sequence[Point]) -> list[Point]:
    """Intersection of two convex ccw polygons (possibly empty or degenerate)."""
    out = list(p_poly)
    n = len(q_poly)
    for i in range(n):
        if not out:
            return []
        out = clip_convex(out, q_poly[i], q_poly[(i + 1) % n])
    return out


def convex_subtract(p_poly: Sequence[Point], q_poly: Sequence[Point]) -> list[list[Point]]:
    """Closed convex P minus closed convex Q, as positive-area convex pieces.

    Measure-zero residue (edges, points) is dropped; callers that care about
    one-dimensional leftovers must check candidate points separately.
    """
    if len(q_poly) < 3 or signed_area2(list(q_poly)) == 0:
        piece = [p for p in p_poly]
        return [piece] if len(piece) >= 3 and signed_area2(piece) > 0 else []
    pieces: list[list[Point]] = []
    rest = list(p_poly)
    n = len(q_poly)
    for i in range(n):
        if not rest:
            break
        a = q_poly[i]
        b = q_poly[(i + 1) % n]
        outside = clip_convex(rest, b, a)
        if len(outside) >= 3 and signed_area2(outside) > 0:
            pieces.append(outside)
        rest = clip_convex(rest, a, b)
    return pieces


def point_in_convex(poly: Sequence[Point], p: Point) -> bool:
    """p lies in the closed convex ccw polygon."""
    n = len(poly)
    if n == 0:
        return False
    if n == 1:
        return p == poly[0]
    if n == 2:
        return between_closed(poly[0], poly[1], p)
    for i in range(n):
        if cross(poly[i], poly[(i + 1) % n], p) < 0:
            return False
    return True


def fan_triangles(center: Point, ring: Sequence[Point]) -> list[list[Point]]:
    """Positive-area triangles fanning a star-shaped ring from its kernel point."""
    out: list[list[Point]] = []
    n = len(ring)
    for i in range(n):
        a = ring[i]
        b = ring[(i + 1) % n]
        tri = [center, a, b]
        if signed_area2(tri) > 0:
            out.append(tri)
        elif signed_area2(tri) < 0:
            out.append([center, b, a])
    return out


def ensure_ccw(poly: Sequence[Point]) -> list[Point]:
    ring = list(poly)
    if signed_area2(ring) < 0:
        ring.reverse()
    return ring


def convex_subtract_many(
    pieces: list[list[Point]], cutters: Sequence[Sequence[Point]]
) -> list[list[Point]]:
    """Subtract every convex cutter from every convex piece (positive-area result)."""
    out = list(pieces)
    for cutter in cutters:
        nxt: list[list[Point]] = []
        for piece in out:
            nxt.extend(convex_subtract(piece, cutter))
        out = nxt
        if not out:
            break
    return out


def triangulate_ring(ring: Sequence[Point]) -> list[list[Point]]:
    """Ear-clipping triangulation of a simple polygon (any orientation)."""
    pts = ensure_ccw(ring)
    pts = [p for i, p in enumerate(pts) if p != pts[(i + 1) % len(pts)]]
    tris: list[list[Point]] = []
    guard = 0
    while len(pts) > 3:
        guard += 1
        if guard > 10000:
            raise ValueError("triangulation did not terminate; ring may be non-simple")
        n = len(pts)
        clipped = False
        for i in range(n):
            a, b, c = pts[(i - 1) % n], pts[i], pts[(i + 1) % n]
            turn = orientation(a, b, c)
            if turn == 0:
                if between_closed(a, c, b):
                    pts.pop(i)
                    clipped = True
                    break
                continue
            if turn < 0:
                continue
            blocked = False
            for j in range(n):
                v = pts[j]
                if v == a or v == b or v == c:
                    continue
                o1 = orientation(a, b, v)
                o2 = orientation(b, c, v)
                o3 = orientation(c, a, v)
                if o1 > 0 and o2 > 0 and o3 > 0:
                    blocked = True
                    break
                if o3 == 0 and between_open(c, a, v):
                    blocked = True
                    break
            if blocked:
                continue
            tris.append([a, b, c])
            pts.pop(i)
            clipped = True
            break
        if not clipped:
            raise ValueError("no ear found; ring may be non-simple")
    if len(pts) == 3 and signed_area2(pts) > 0:
        tris.append(pts)
    return tris
