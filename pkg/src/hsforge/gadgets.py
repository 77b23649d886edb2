"""Gadget builders: exact room geometry with hiding certificates.

Every builder works in a canonical local frame and is mapped onto its
attachment interval by a positive uniform scale plus a translation, which
preserves all visibility relations exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence, Union

from .frontend import MobiusParams, check_h_admissible
from .geometry import (
    Point,
    PolygonalDomain,
    clip_convex,
    convex_hull,
    dot_vec,
    interpolate,
    line_intersection,
    pt,
    signed_area2,
)
from .model import CriticalFeature, GadgetDescriptor, Instance, InstanceValidationError
from .visibility import CoverCertificate

Q = Fraction

# Canonical variable-gadget frame: the attachment mouth spans [0, 12] on
# y = 0 and the room hangs below.  The floor is a monotone valley: two
# straight slopes descending from the side walls to the corners of a sunken
# dip box whose bottom edge is the birdhouse segment.  The dip corners are
# the lowest boundary points outside the dip, so every chord between floor
# points passes over the bowl: the floor plus the air above it is one
# mutually visible set.
#
# Spectators (pocket apexes, none can reach the dip bottom), listed in the
# chain order of increasing vision:
#   sky_l (-1/2, -27/32)     left wall pocket with a strictly ascending fan
#                            [1/50, 1/2]; the fan-bottom ray runs along its
#                            lower edge and its extension dies exactly at the
#                            opposite mouth-top corner, so no ray can slip
#                            into the opposite pocket;
#   sky_r (25/2, -27/32)     mirror image;
#   vl    (-1/2, -49/40)     grazes the left valley edge through a micro fan
#                            capped by the ray that dies at the far dip
#                            corner, so nothing past the dip is visible;
#   vr    (25/2, -179/160)   grazes the right valley edge (its own lower
#                            pocket edge); descending rays that clear the
#                            far dip corner sink below the near corner level
#                            inside the dip span and die on a dip wall.  Its
#                            mouth-top corner is shared with sky_r's
#                            mouth-bottom corner, so the wall between them is
#                            empty; rays aimed above that shared corner die
#                            on it.  vr does see slivers of the earlier
#                            pockets through their mouths, which is why it
#                            confirms last: those slivers are already
#                            accounted to the earlier groups.

_VG_MOUTH = (Q(0), Q(12))
_VG_FLOOR = Q(-5, 4)
_VG_DIP_BOTTOM = Q(-3, 2)
_VG_CEIL = Q(1, 4)
_VG_VALUE_CENTER = Q(6)
_VG_VALUE_SCALE = Q(5, 8)
_VG_DIP_MARGIN = Q(5, 8)

_VG_SKY_L = (Q(-1, 2), Q(-27, 32))
_VG_SKY_R = (Q(25, 2), Q(-27, 32))
_VG_VL = (Q(-1, 2), Q(-49, 40))
_VG_VR = (Q(25, 2), Q(-179, 160))
_VG_SKY_MOUTH_HI = Q(-19, 32)
_VG_SKY_MOUTH_LO = Q(-667, 800)


def _value_abscissa(value: Fraction) -> Fraction:
    return _VG_VALUE_CENTER + _VG_VALUE_SCALE * value


def _variable_profile(lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Boundary run from (0,0) to (12,0), interior on the left."""
    dip_l = _value_abscissa(lo) - _VG_DIP_MARGIN
    dip_r = _value_abscissa(hi) + _VG_DIP_MARGIN
    vl_x, vl_y = _VG_VL
    vr_x, vr_y = _VG_VR
    # vl's fan is capped by the ray through the far dip corner; its mouth
    # upper corner sits on that ray at the wall.
    far_slope = (_VG_FLOOR - vl_y) / (dip_r - vl_x)
    mu_l = vl_y - far_slope * vl_x
    return [
        (Q(0), Q(0)),
        (Q(0), _VG_SKY_MOUTH_HI),
        _VG_SKY_L,
        (Q(0), _VG_SKY_MOUTH_LO),
        (Q(0), mu_l),
        _VG_VL,
        (dip_l, _VG_FLOOR),
        (dip_l, _VG_DIP_BOTTOM),
        (dip_r, _VG_DIP_BOTTOM),
        (dip_r, _VG_FLOOR),
        _VG_VR,
        (Q(12), _VG_SKY_MOUTH_LO),
        _VG_SKY_R,
        (Q(12), _VG_SKY_MOUTH_HI),
        (Q(12), Q(0)),
    ]


def _scaled(points: Sequence[tuple[Fraction, Fraction]], a0: Fraction, s: Fraction) -> list[Point]:
    return [Point(a0 + s * x, s * y) for x, y in points]


def _scale_point(p: tuple[Fraction, Fraction], a0: Fraction, s: Fraction) -> Point:
    return Point(a0 + s * p[0], s * p[1])


def build_variable(
    attachment: tuple[Fraction, Fraction] = (Q(0), Q(12)),
    value_range: tuple[Fraction, Fraction] = (Q(-1), Q(1)),
    name: str | None = None,
) -> GadgetDescriptor:
    """Room below the attachment whose only hideout beyond its four
    spectators is the birdhouse segment at the bottom of a sunken dip."""
    a0, a1 = Q(attachment[0]), Q(attachment[1])
    lo, hi = Q(value_range[0]), Q(value_range[1])
    if a0 >= a1:
        raise InstanceValidationError("attachment interval is empty")
    if not (Q(-1) <= lo <= hi <= Q(1)):
        raise InstanceValidationError("value range must sit inside [-1, 1]")
    s = (a1 - a0) / (_VG_MOUTH[1] - _VG_MOUTH[0])

    profile = _variable_profile(lo, hi)
    patch = _scaled(profile, a0, s)
    dip_l = _value_abscissa(lo) - _VG_DIP_MARGIN
    dip_r = _value_abscissa(hi) + _VG_DIP_MARGIN

    seg_l = _scale_point((dip_l, _VG_DIP_BOTTOM), a0, s)
    seg_r = _scale_point((dip_r, _VG_DIP_BOTTOM), a0, s)
    corner_l = _scale_point((dip_l, _VG_FLOOR), a0, s)
    corner_r = _scale_point((dip_r, _VG_FLOOR), a0, s)
    sky_l = _scale_point(_VG_SKY_L, a0, s)
    sky_r = _scale_point(_VG_SKY_R, a0, s)
    vl = _scale_point(_VG_VL, a0, s)
    vr = _scale_point(_VG_VR, a0, s)
    anchor_lo = _scale_point((_value_abscissa(lo), _VG_DIP_BOTTOM), a0, s)
    anchor_hi = _scale_point((_value_abscissa(hi), _VG_DIP_BOTTOM), a0, s)

    dip_box = (corner_l, seg_l, seg_r, corner_r)
    cover = CoverCertificate.build(
        regions=[dip_box],
        target=[patch],
        spectators=[sky_l, sky_r, vl, vr],
    )
    kind = "ConstantOne" if lo == hi else "Variable"
    geometry: dict[str, object] = {
        "anchor_lo": anchor_lo,
        "anchor_hi": anchor_hi,
        "corner_left": corner_l,
        "corner_right": corner_r,
        "value_lo": lo,
        "value_hi": hi,
        "scale": s,
    }
    if name is not None:
        geometry["name"] = name
    return GadgetDescriptor(
        kind=kind,
        local_threshold=5,
        spectators=((sky_l,), (sky_r,), (vl,), (vr,)),
        cover=cover,
        critical=CriticalFeature("segment", (seg_l, seg_r)),
        boundary_patch=tuple(patch),
        attachment=(a0, a1),
        geometry=geometry,
    )


def variable_value_of(gadget: GadgetDescriptor, q: Point) -> Fraction:
    """Value encoded by a birdhouse at q on the gadget's segment."""
    lo: Fraction = gadget.geometry["value_lo"]
    hi: Fraction = gadget.geometry["value_hi"]
    if lo == hi:
        return lo
    a: Point = gadget.geometry["anchor_lo"]
    b: Point = gadget.geometry["anchor_hi"]
    return lo + (hi - lo) * (q.x - a.x) / (b.x - a.x)


def variable_point_for(gadget: GadgetDescriptor, value: Fraction) -> Point:
    """Segment point encoding the given value."""
    lo: Fraction = gadget.geometry["value_lo"]
    hi: Fraction = gadget.geometry["value_hi"]
    a: Point = gadget.geometry["anchor_lo"]
    b: Point = gadget.geometry["anchor_hi"]
    value = Q(value)
    if lo == hi:
        if value != lo:
            raise InstanceValidationError(f"gadget pins value {lo}, got {value}")
        return a
    if not lo <= value <= hi:
        raise InstanceValidationError(f"value {value} outside [{lo}, {hi}]")
    t = (value - lo) / (hi - lo)
    return Point(a.x + t * (b.x - a.x), a.y)


def variable_fixture(
    value_range: tuple[Fraction, Fraction] = (Q(-1), Q(1)),
) -> Instance:
    """Standalone room: the canonical variable gadget plus a stub chamber."""
    gadget = build_variable((Q(0), Q(12)), value_range)
    patch = list(gadget.boundary_patch)
    # Drop the mouth corners: the stub walls continue straight through them.
    ring = patch[1:-1] + [pt(12, _VG_CEIL), pt(0, _VG_CEIL)]
    domain = PolygonalDomain(tuple(ring))
    seg = gadget.critical.points
    cover = CoverCertificate(
        regions=gadget.cover.regions,
        target=(tuple(ring),),
        whitelist=(),
        spectators=gadget.cover.spectators,
    )
    fixture_gadget = GadgetDescriptor(
        kind=gadget.kind,
        local_threshold=gadget.local_threshold,
        spectators=gadget.spectators,
        cover=cover,
        critical=gadget.critical,
        boundary_patch=gadget.boundary_patch,
        attachment=gadget.attachment,
        geometry=dict(gadget.geometry),
    )
    return Instance(
        domain=domain,
        threshold=5,
        gadgets=(fixture_gadget,),
        spectators=tuple(q for group in gadget.spectators for q in group),
        variable_segments={"x": (seg[0], seg[1])},
        metadata="variable gadget fixture",
    )


# ---------------------------------------------------------------------------
# Constraint semantics.
#
# Each constraint gadget watches a horizontal critical set from two or three
# pivot vertices.  A guard standing at position v on a birdhouse segment blots
# out the part of the critical set behind the ray from the guard through its
# pivot.  The functions below compute the part left uncovered; a nonempty
# answer is exactly the witness room the paired inequality needs.


@dataclass(frozen=True)
class Covered:
    """Every critical point is blocked for the queried values."""


@dataclass(frozen=True)
class UncoveredPoint:
    """A one-dimensional slice of critical points survives; one witness."""

    point: Point


@dataclass(frozen=True)
class SinglePoint:
    """Exact equality: the three guard rays meet in one critical point."""

    point: Point


@dataclass(frozen=True)
class UncoveredRegion:
    """A two-dimensional pocket of critical points survives."""

    polygon: tuple[Point, ...]

    def representative(self) -> Point:
        total = pt(0, 0)
        for vertex in self.polygon:
            total = total + vertex
        n = Q(len(self.polygon))
        return pt(total.x / n, total.y / n)


SemanticsResult = Union[Covered, UncoveredPoint, SinglePoint, UncoveredRegion]

Direction = str

_DIRECTIONS = ("LE", "GE")


def _require_direction(direction: Direction) -> None:
    if direction not in _DIRECTIONS:
        raise ValueError(f"direction must be 'LE' or 'GE', got {direction!r}")


def _seg_point(minus1: Point, plus1: Point, value: Fraction) -> Point:
    # Value -1 is the left endpoint, +1 the right endpoint.
    return interpolate(minus1, plus1, (Q(value) + 1) / 2)


def _seg_value(minus1: Point, plus1: Point, point: Point) -> Fraction:
    d = plus1 - minus1
    return 2 * dot_vec(point - minus1, d) / dot_vec(d, d) - 1


def _param_along(t: Point, s: Point, p: Point) -> Fraction:
    # Affine coordinate on the critical segment: 0 at t, 1 at s.
    d = s - t
    return dot_vec(p - t, d) / dot_vec(d, d)


def _interval_result(
    t: Point,
    s: Point,
    tau_lo: Fraction,
    tau_hi: Fraction,
) -> SemanticsResult:
    lo = max(tau_lo, Q(0))
    hi = min(tau_hi, Q(1))
    if lo > hi:
        return Covered()
    return UncoveredPoint(interpolate(t, s, (lo + hi) / 2))


def _ground_height(points: Sequence[Point], label: str) -> Fraction:
    heights = {p.y for p in points}
    if len(heights) != 1:
        raise ValueError(f"{label} segments must lie on one horizontal line")
    return next(iter(heights))


def _segment_stats(minus1: Point, plus1: Point, label: str) -> tuple[Fraction, Fraction]:
    if minus1.x >= plus1.x:
        raise ValueError(f"{label} segment endpoints must run left to right")
    return (minus1.x + plus1.x) / 2, (plus1.x - minus1.x) / 2


# --- scaling / copy -------------------------------------------------------


@dataclass(frozen=True)
class ScalingGeometry:
    """Projection frame of one scaling inequality gadget.

    Guards at x (left segment) project through pivot_p, guards at y (right
    segment) through pivot_q, both onto the critical segment from t to s.
    The two images coincide exactly when alpha*x == y.
    """

    direction: Direction
    x_minus1: Point
    x_plus1: Point
    y_minus1: Point
    y_plus1: Point
    pivot_p: Point
    pivot_q: Point
    s: Point
    t: Point

    @property
    def alpha(self) -> Fraction:
        return (self.x_plus1.x - self.x_minus1.x) / (self.y_plus1.x - self.y_minus1.x)

    def x_at(self, value: Fraction) -> Point:
        return _seg_point(self.x_minus1, self.x_plus1, value)

    def y_at(self, value: Fraction) -> Point:
        return _seg_point(self.y_minus1, self.y_plus1, value)


def plan_scaling_geometry(
    direction: Direction,
    x_seg: tuple[Point, Point],
    y_seg: tuple[Point, Point],
    alpha: Fraction,
    top_y: Fraction = Q(1),
    critical_y: Fraction = Q(6, 5),
) -> ScalingGeometry:
    """Place pivots and critical segment so images meet iff alpha*x == y."""
    _require_direction(direction)
    alpha = Q(alpha)
    x_minus1, x_plus1 = x_seg
    y_minus1, y_plus1 = y_seg
    ground = _ground_height((x_minus1, x_plus1, y_minus1, y_plus1), "guard")
    x_mid, r_x = _segment_stats(x_minus1, x_plus1, "x")
    y_mid, r_y = _segment_stats(y_minus1, y_plus1, "y")
    if x_plus1.x >= y_minus1.x:
        raise ValueError("x segment must lie strictly left of y segment")
    if alpha <= 0 or alpha > 1 or alpha != r_x / r_y:
        raise ValueError("alpha maps range outside target segment")
    top_y = Q(top_y)
    critical_y = Q(critical_y)
    if not ground < top_y < critical_y:
        raise ValueError("need ground < top_y < critical_y")
    # mu scales ground offsets onto the critical line through a top pivot.
    mu = (critical_y - ground) / (top_y - ground)
    gap = (y_mid - x_mid) * (mu - 1) / mu
    mid = (x_mid + y_mid) / 2
    pivot_p = pt(mid - gap / 2, top_y)
    pivot_q = pt(mid + gap / 2, top_y)
    if not (x_plus1.x < pivot_p.x and pivot_q.x < y_minus1.x):
        raise ValueError("pivots not strictly between the segments")
    line_a = pt(x_mid, critical_y)
    line_b = pt(y_mid, critical_y)
    s = line_intersection(x_minus1, pivot_p, line_a, line_b)
    t = line_intersection(x_plus1, pivot_p, line_a, line_b)
    if s is None or t is None:
        raise ValueError("guard ray parallel to the critical line")
    return ScalingGeometry(
        direction=direction,
        x_minus1=x_minus1,
        x_plus1=x_plus1,
        y_minus1=y_minus1,
        y_plus1=y_plus1,
        pivot_p=pivot_p,
        pivot_q=pivot_q,
        s=s,
        t=t,
    )


def scaling_semantics(
    geometry: ScalingGeometry,
    x_value: Fraction,
    y_value: Fraction,
) -> SemanticsResult:
    """Part of the critical segment no guard pair blots out.

    GE variant: nonempty iff alpha*x >= y.  LE variant: iff alpha*x <= y.
    """
    a_pt = line_intersection(
        geometry.x_at(Q(x_value)), geometry.pivot_p, geometry.s, geometry.t
    )
    b_pt = line_intersection(
        geometry.y_at(Q(y_value)), geometry.pivot_q, geometry.s, geometry.t
    )
    if a_pt is None or b_pt is None:
        raise ValueError("guard ray parallel to the critical line")
    tau_a = _param_along(geometry.t, geometry.s, a_pt)
    tau_b = _param_along(geometry.t, geometry.s, b_pt)
    if geometry.direction == "GE":
        return _interval_result(geometry.t, geometry.s, tau_a, tau_b)
    return _interval_result(geometry.t, geometry.s, tau_b, tau_a)


# --- addition ---------------------------------------------------------------


@dataclass(frozen=True)
class AdditionQuery:
    """Ray bookkeeping for one (x, y, z) query.

    d1/d2 are the ground gaps between consecutive guards; s and S are the
    heights of the x-z and z-y ray crossings above the pivot line, in units
    of the pivot height.  d1 == d2 iff x + y == z iff all three rays meet.
    """

    d1: Fraction
    d2: Fraction
    s: Fraction
    S: Fraction


@dataclass(frozen=True)
class AdditionGeometry:
    """Projection frame of one addition inequality gadget.

    Three guard segments on one ground line (x, z, y left to right, the
    middle one half-length), three pivots on the top line with p2 above the
    middle segment and p1, p3 at offset delta to either side.
    """

    direction: Direction
    x_minus1: Point
    x_plus1: Point
    z_minus1: Point
    z_plus1: Point
    y_minus1: Point
    y_plus1: Point
    p1: Point
    p2: Point
    p3: Point
    delta: Fraction
    spacing: Fraction
    ceiling_y: Fraction
    critical_region: tuple[Point, ...]

    def x_at(self, value: Fraction) -> Point:
        return _seg_point(self.x_minus1, self.x_plus1, value)

    def z_at(self, value: Fraction) -> Point:
        return _seg_point(self.z_minus1, self.z_plus1, value)

    def y_at(self, value: Fraction) -> Point:
        return _seg_point(self.y_minus1, self.y_plus1, value)

    def d1(self, x_value: Fraction, z_value: Fraction) -> Fraction:
        return self.z_at(Q(z_value)).x - self.x_at(Q(x_value)).x

    def d2(self, y_value: Fraction, z_value: Fraction) -> Fraction:
        return self.y_at(Q(y_value)).x - self.z_at(Q(z_value)).x

    def query(self, x_value: Fraction, y_value: Fraction, z_value: Fraction) -> AdditionQuery:
        d1 = self.d1(x_value, z_value)
        d2 = self.d2(y_value, z_value)
        return AdditionQuery(
            d1=d1,
            d2=d2,
            s=self.delta / (d1 - self.delta),
            S=self.delta / (d2 - self.delta),
        )


def _addition_blind_triangle(
    geometry_points: tuple[Point, Point, Point],
    pivots: tuple[Point, Point, Point],
) -> list[Point]:
    gx, gz, gy = geometry_points
    p1, p2, p3 = pivots
    t_xz = line_intersection(gx, p1, gz, p2)
    t_zy = line_intersection(gz, p2, gy, p3)
    t_xy = line_intersection(gx, p1, gy, p3)
    if t_xz is None or t_zy is None or t_xy is None:
        raise ValueError("guard rays parallel; delta out of range")
    return convex_hull([t_xz, t_zy, t_xy])


def plan_addition_geometry(
    direction: Direction,
    x_seg: tuple[Point, Point],
    z_seg: tuple[Point, Point],
    y_seg: tuple[Point, Point],
    top_y: Fraction = Q(1),
    delta: Fraction | None = None,
) -> AdditionGeometry:
    """Place pivots and the critical region for one addition gadget.

    The critical region is the convex hull of every corner assignment's
    blind triangle, clipped under a ceiling tangent to the equality locus,
    so a query leaves part of it uncovered iff its inequality holds.
    """
    _require_direction(direction)
    x_minus1, x_plus1 = x_seg
    z_minus1, z_plus1 = z_seg
    y_minus1, y_plus1 = y_seg
    endpoints = (x_minus1, x_plus1, z_minus1, z_plus1, y_minus1, y_plus1)
    ground = _ground_height(endpoints, "guard")
    x_mid, r_x = _segment_stats(x_minus1, x_plus1, "x")
    z_mid, r_z = _segment_stats(z_minus1, z_plus1, "z")
    y_mid, r_y = _segment_stats(y_minus1, y_plus1, "y")
    if r_x != r_y:
        raise ValueError("outer segments must have equal length")
    if 2 * r_z != r_x:
        raise ValueError("middle segment must be half the outer length")
    spacing = z_mid - x_mid
    if spacing <= 0 or y_mid - z_mid != spacing:
        raise ValueError("segment spacing mismatch")
    top_y = Q(top_y)
    if top_y <= ground:
        raise ValueError("top line must sit above the guard line")
    if delta is None:
        delta = spacing / 4
    delta = Q(delta)
    if not 0 < delta < spacing - 3 * r_x / 2:
        raise ValueError("delta must fit below every guard gap")
    p1 = pt(z_mid - delta, top_y)
    p2 = pt(z_mid, top_y)
    p3 = pt(z_mid + delta, top_y)
    # Ceiling tangent to the equality locus: the shallowest concurrent
    # crossing (gap spacing - r_x) lands exactly on it.
    height = top_y - ground
    ceiling_y = top_y + height * delta / (spacing - r_x - delta)
    ceil_a = pt(z_mid + 1, ceiling_y)
    ceil_b = pt(z_mid, ceiling_y)
    sign = 1 if direction == "GE" else -1
    pool: list[Point] = []
    for cx, cy, cz in product((Q(-1), Q(1)), repeat=3):
        if sign * (cx + cy - cz) <= 0:
            continue
        guards = (
            _seg_point(x_minus1, x_plus1, cx),
            _seg_point(z_minus1, z_plus1, cz),
            _seg_point(y_minus1, y_plus1, cy),
        )
        triangle = _addition_blind_triangle(guards, (p1, p2, p3))
        pool.extend(clip_convex(triangle, ceil_a, ceil_b))
    region = convex_hull(pool)
    if len(region) < 3:
        raise ValueError("critical region degenerates; widen the geometry")
    return AdditionGeometry(
        direction=direction,
        x_minus1=x_minus1,
        x_plus1=x_plus1,
        z_minus1=z_minus1,
        z_plus1=z_plus1,
        y_minus1=y_minus1,
        y_plus1=y_plus1,
        p1=p1,
        p2=p2,
        p3=p3,
        delta=delta,
        spacing=spacing,
        ceiling_y=ceiling_y,
        critical_region=tuple(region),
    )


def addition_semantics(
    geometry: AdditionGeometry,
    x_value: Fraction,
    y_value: Fraction,
    z_value: Fraction,
) -> SemanticsResult:
    """Part of the critical region all three guards leave uncovered.

    GE variant: nonempty iff x + y >= z, a single point iff x + y == z.
    LE variant: mirrored.
    """
    gx = geometry.x_at(Q(x_value))
    gz = geometry.z_at(Q(z_value))
    gy = geometry.y_at(Q(y_value))
    if geometry.direction == "GE":
        cuts = ((geometry.p1, gx), (gz, geometry.p2), (geometry.p3, gy))
    else:
        cuts = ((gx, geometry.p1), (geometry.p2, gz), (gy, geometry.p3))
    poly = list(geometry.critical_region)
    for a, b in cuts:
        poly = clip_convex(poly, a, b)
        if not poly:
            return Covered()
    distinct: list[Point] = []
    for vertex in poly:
        if vertex not in distinct:
            distinct.append(vertex)
    if len(distinct) == 1:
        return SinglePoint(distinct[0])
    return UncoveredRegion(tuple(distinct))


# --- curved (Mobius) --------------------------------------------------------


def _fit_mobius(samples: Sequence[tuple[Fraction, Fraction]]) -> MobiusParams:
    """Mobius map through three (v, w) pairs via the 3x4 nullspace."""
    if len(samples) != 3:
        raise ValueError("mobius fit needs exactly three samples")
    # Row [v, 1, -v*w, -w] dotted with (a, b, c, d) must vanish.
    mat = [[v, Q(1), -v * w, -w] for v, w in samples]
    pivot_cols: list[int] = []
    row = 0
    for col in range(4):
        pivot_row = next((i for i in range(row, 3) if mat[i][col] != 0), None)
        if pivot_row is None:
            continue
        mat[row], mat[pivot_row] = mat[pivot_row], mat[row]
        head = mat[row][col]
        mat[row] = [entry / head for entry in mat[row]]
        for other in range(3):
            if other != row and mat[other][col] != 0:
                factor = mat[other][col]
                mat[other] = [a - factor * b for a, b in zip(mat[other], mat[row])]
        pivot_cols.append(col)
        row += 1
        if row == 3:
            break
    free = [col for col in range(4) if col not in pivot_cols]
    if len(free) != 1:
        raise ValueError("mobius fit needs three distinct samples")
    coeffs = [Q(0)] * 4
    coeffs[free[0]] = Q(1)
    for fit_row, col in zip(mat, pivot_cols):
        coeffs[col] = -fit_row[free[0]]
    lead = next(c for c in coeffs if c != 0)
    coeffs = [c / lead for c in coeffs]
    return MobiusParams(*coeffs)


@dataclass(frozen=True)
class CurvedGeometry:
    """Projection frame of one curved inequality gadget.

    Guards at x project through the floating pivot_p onto the slanted
    critical line y = k*x + l; guards at y project through pivot_q onto the
    same line.  Following x's image onward through pivot_q back to the
    ground composes two central projections: the induced Mobius map.
    """

    direction: Direction
    x_minus1: Point
    x_plus1: Point
    y_minus1: Point
    y_plus1: Point
    pivot_p: Point
    pivot_q: Point
    k: Fraction
    l: Fraction
    s: Point
    t: Point
    induced: MobiusParams

    def x_at(self, value: Fraction) -> Point:
        return _seg_point(self.x_minus1, self.x_plus1, value)

    def y_at(self, value: Fraction) -> Point:
        return _seg_point(self.y_minus1, self.y_plus1, value)

    def forward(self, value: Fraction) -> Fraction:
        """Map an x value to the y value whose guard blots the same point."""
        ray = line_intersection(self.x_at(Q(value)), self.pivot_p, self.s, self.t)
        if ray is None:
            raise ValueError("guard ray parallel to the critical line")
        ground_y = self.x_minus1.y
        landing = line_intersection(
            ray, self.pivot_q, pt(Q(0), ground_y), pt(Q(1), ground_y)
        )
        if landing is None:
            raise ValueError("projected ray parallel to the ground line")
        return _seg_value(self.y_minus1, self.y_plus1, landing)


def plan_curved_geometry(
    direction: Direction,
    x_seg: tuple[Point, Point],
    y_seg: tuple[Point, Point],
    pivot_p: Point,
    pivot_q: Point,
    k: Fraction,
    l: Fraction,
) -> CurvedGeometry:
    """Fit the induced Mobius map of a two-projection curved gadget."""
    _require_direction(direction)
    x_minus1, x_plus1 = x_seg
    y_minus1, y_plus1 = y_seg
    ground = _ground_height((x_minus1, x_plus1, y_minus1, y_plus1), "guard")
    _segment_stats(x_minus1, x_plus1, "x")
    _segment_stats(y_minus1, y_plus1, "y")
    k = Q(k)
    l = Q(l)
    if not ground < pivot_q.y < pivot_p.y:
        raise ValueError("need ground < pivot_q height < pivot_p height")
    for pivot in (pivot_p, pivot_q):
        if pivot.y == k * pivot.x + l:
            raise ValueError("pivot lies on the critical line")
    line_a = pt(Q(0), l)
    line_b = pt(Q(1), k + l)
    s = line_intersection(x_minus1, pivot_p, line_a, line_b)
    t = line_intersection(x_plus1, pivot_p, line_a, line_b)
    if s is None or t is None:
        raise ValueError("guard ray parallel to the critical line")
    if s == t:
        raise ValueError("critical image degenerates to a point")
    for endpoint in (s, t):
        if endpoint.y <= pivot_q.y:
            raise ValueError("critical line must run above the mouth pivot")
    probe = CurvedGeometry(
        direction=direction,
        x_minus1=x_minus1,
        x_plus1=x_plus1,
        y_minus1=y_minus1,
        y_plus1=y_plus1,
        pivot_p=pivot_p,
        pivot_q=pivot_q,
        k=k,
        l=l,
        s=s,
        t=t,
        induced=MobiusParams(Q(1), Q(0), Q(0), Q(1)),
    )
    samples = [(v, probe.forward(v)) for v in (Q(-1), Q(0), Q(1))]
    if not samples[0][1] < samples[1][1] < samples[2][1]:
        raise ValueError("induced map must be increasing")
    induced = _fit_mobius(samples)
    verdict = check_h_admissible(induced)
    if not verdict.admissible:
        raise ValueError(f"induced fails admissibility: {verdict.reason}")
    return CurvedGeometry(
        direction=direction,
        x_minus1=x_minus1,
        x_plus1=x_plus1,
        y_minus1=y_minus1,
        y_plus1=y_plus1,
        pivot_p=pivot_p,
        pivot_q=pivot_q,
        k=k,
        l=l,
        s=s,
        t=t,
        induced=induced,
    )


def curved_semantics(
    geometry: CurvedGeometry,
    x_value: Fraction,
    y_value: Fraction,
) -> SemanticsResult:
    """Part of the critical segment no guard pair blots out.

    GE variant: nonempty iff induced(x) >= y.  LE variant: mirrored.
    """
    a_pt = line_intersection(
        geometry.x_at(Q(x_value)), geometry.pivot_p, geometry.s, geometry.t
    )
    b_pt = line_intersection(
        geometry.y_at(Q(y_value)), geometry.pivot_q, geometry.s, geometry.t
    )
    if a_pt is None or b_pt is None:
        raise ValueError("guard ray parallel to the critical line")
    tau_a = _param_along(geometry.t, geometry.s, a_pt)
    tau_b = _param_along(geometry.t, geometry.s, b_pt)
    if geometry.direction == "GE":
        return _interval_result(geometry.t, geometry.s, tau_a, tau_b)
    return _interval_result(geometry.t, geometry.s, tau_b, tau_a)
