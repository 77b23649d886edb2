"""Instance and placement files: exact JSON encoding with lossless rationals.

Wire conventions: every rational is a string Python's Fraction both emits and
parses ("-3/7", "5"); a point is a two-element array [x, y]; a ring is an
array of points.  Instance files carry the keys "outer", "holes",
"threshold", "spectators", "variable_segments", "gadgets", "metadata".
Placement files are a bare JSON array of points.  Serialization is
deterministic, so round trips are bit-exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .geometry import DomainError, Location, Point, PolygonalDomain
from .visibility import CoverCertificate, FastDomain

__all__ = [
    "InstanceParseError",
    "InstanceValidationError",
    "CriticalFeature",
    "GadgetDescriptor",
    "Instance",
    "parse_instance",
    "serialize_instance",
    "parse_placement",
    "serialize_placement",
    "rational_from_str",
    "rational_to_str",
]

GADGET_KINDS = frozenset(
    {
        "Variable",
        "ConstantOne",
        "Blocker",
        "Pocket",
        "EdgeCoverPocket",
        "ScalingLE",
        "ScalingGE",
        "AdditionLE",
        "AdditionGE",
        "CurvedLE",
        "CurvedGE",
    }
)


class InstanceParseError(ValueError):
    """Malformed instance or placement file."""


class InstanceValidationError(ValueError):
    """Structurally well formed file whose content breaks an invariant."""


def rational_to_str(q: Fraction | int) -> str:
    return str(Fraction(q))


def rational_from_str(text: object, where: str = "value") -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise InstanceParseError(f"{where}: expected a rational string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceParseError(f"{where}: bad rational {text!r}: {exc}") from exc


def _point_to_json(p: Point) -> list[str]:
    return [rational_to_str(p.x), rational_to_str(p.y)]


def _point_from_json(obj: object, where: str) -> Point:
    if not isinstance(obj, Sequence) or isinstance(obj, str) or len(obj) != 2:
        raise InstanceParseError(f"{where}: expected [x, y], got {obj!r}")
    return Point(
        rational_from_str(obj[0], f"{where}[0]"),
        rational_from_str(obj[1], f"{where}[1]"),
    )


def _ring_to_json(ring: Sequence[Point]) -> list[list[str]]:
    return [_point_to_json(v) for v in ring]


def _ring_from_json(obj: object, where: str) -> tuple[Point, ...]:
    if not isinstance(obj, Sequence) or isinstance(obj, str):
        raise InstanceParseError(f"{where}: expected an array of points")
    return tuple(_point_from_json(v, f"{where}[{i}]") for i, v in enumerate(obj))


def _segment_to_json(seg: tuple[Point, Point]) -> list[list[str]]:
    return [_point_to_json(seg[0]), _point_to_json(seg[1])]


def _segment_from_json(obj: object, where: str) -> tuple[Point, Point]:
    ringish = _ring_from_json(obj, where)
    if len(ringish) != 2:
        raise InstanceParseError(f"{where}: expected exactly two points")
    return ringish[0], ringish[1]


@dataclass(frozen=True)
class CriticalFeature:
    """The part of a gadget that hosts its value-dependent hidden point."""

    kind: str  # "segment" or "region"
    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("segment", "region"):
            raise InstanceValidationError(f"critical feature kind {self.kind!r}")
        if self.kind == "segment" and len(self.points) != 2:
            raise InstanceValidationError("critical segment needs two endpoints")
        if self.kind == "region" and len(self.points) < 3:
            raise InstanceValidationError("critical region needs a ring")

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "points": _ring_to_json(self.points)}

    @staticmethod
    def from_json(obj: object, where: str) -> "CriticalFeature":
        if not isinstance(obj, Mapping):
            raise InstanceParseError(f"{where}: expected an object")
        kind = obj.get("kind")
        if kind not in ("segment", "region"):
            raise InstanceParseError(f"{where}: bad critical kind {kind!r}")
        return CriticalFeature(kind, _ring_from_json(obj.get("points"), f"{where}.points"))


def _cover_to_json(cover: CoverCertificate) -> dict[str, Any]:
    return {
        "regions": [_ring_to_json(r) for r in cover.regions],
        "target": [_ring_to_json(r) for r in cover.target],
        "whitelist": [_segment_to_json(s) for s in cover.whitelist],
        "spectators": _ring_to_json(cover.spectators),
    }


def _cover_from_json(obj: object, where: str) -> CoverCertificate:
    if not isinstance(obj, Mapping):
        raise InstanceParseError(f"{where}: expected an object")
    regions = obj.get("regions", [])
    target = obj.get("target", [])
    whitelist = obj.get("whitelist", [])
    spectators = obj.get("spectators", [])
    if not isinstance(regions, Sequence) or isinstance(regions, str):
        raise InstanceParseError(f"{where}.regions: expected an array")
    if not isinstance(target, Sequence) or isinstance(target, str):
        raise InstanceParseError(f"{where}.target: expected an array")
    if not isinstance(whitelist, Sequence) or isinstance(whitelist, str):
        raise InstanceParseError(f"{where}.whitelist: expected an array")
    return CoverCertificate(
        regions=tuple(
            _ring_from_json(r, f"{where}.regions[{i}]") for i, r in enumerate(regions)
        ),
        target=tuple(
            _ring_from_json(r, f"{where}.target[{i}]") for i, r in enumerate(target)
        ),
        whitelist=tuple(
            _segment_from_json(s, f"{where}.whitelist[{i}]")
            for i, s in enumerate(whitelist)
        ),
        spectators=_ring_from_json(spectators, f"{where}.spectators"),
    )


def _geometry_value_to_json(value: object) -> object:
    if isinstance(value, Point):
        return _point_to_json(value)
    if isinstance(value, Fraction):
        return rational_to_str(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, Sequence):
        return [_geometry_value_to_json(v) for v in value]
    raise InstanceValidationError(f"unserializable geometry value {value!r}")


def _geometry_value_from_json(value: object) -> object:
    if isinstance(value, bool) or value is None or isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            return value
    if isinstance(value, Sequence):
        if (
            len(value) == 2
            and all(isinstance(v, str) for v in value)
        ):
            try:
                return Point(Fraction(value[0]), Fraction(value[1]))
            except (ValueError, ZeroDivisionError):
                pass
        return tuple(_geometry_value_from_json(v) for v in value)
    raise InstanceParseError(f"bad geometry value {value!r}")


@dataclass(frozen=True)
class GadgetDescriptor:
    """One gadget: geometry footprint, spectators, local threshold, certificates."""

    kind: str
    local_threshold: int
    spectators: tuple[tuple[Point, ...], ...] = ()
    cover: CoverCertificate | None = None
    critical: CriticalFeature | None = None
    boundary_patch: tuple[Point, ...] = ()
    holes_added: tuple[tuple[Point, ...], ...] = ()
    attachment: tuple[Fraction, Fraction] | None = None
    geometry: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in GADGET_KINDS:
            raise InstanceValidationError(f"unknown gadget kind {self.kind!r}")
        if self.local_threshold < 0:
            raise InstanceValidationError("local threshold must be nonnegative")

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "local_threshold": self.local_threshold,
            "spectators": [_ring_to_json(group) for group in self.spectators],
            "cover": None if self.cover is None else _cover_to_json(self.cover),
            "critical": None if self.critical is None else self.critical.to_json(),
            "boundary_patch": _ring_to_json(self.boundary_patch),
            "holes_added": [_ring_to_json(r) for r in self.holes_added],
            "attachment": None
            if self.attachment is None
            else [rational_to_str(self.attachment[0]), rational_to_str(self.attachment[1])],
            "geometry": {
                key: _geometry_value_to_json(self.geometry[key])
                for key in sorted(self.geometry)
            },
        }

    @staticmethod
    def from_json(obj: object, where: str) -> "GadgetDescriptor":
        if not isinstance(obj, Mapping):
            raise InstanceParseError(f"{where}: expected an object")
        kind = obj.get("kind")
        if not isinstance(kind, str):
            raise InstanceParseError(f"{where}.kind: expected a string")
        threshold = obj.get("local_threshold")
        if isinstance(threshold, bool) or not isinstance(threshold, int):
            raise InstanceParseError(f"{where}.local_threshold: expected an integer")
        groups = obj.get("spectators", [])
        if not isinstance(groups, Sequence) or isinstance(groups, str):
            raise InstanceParseError(f"{where}.spectators: expected an array")
        cover = obj.get("cover")
        critical = obj.get("critical")
        attachment = obj.get("attachment")
        geometry = obj.get("geometry", {})
        if not isinstance(geometry, Mapping):
            raise InstanceParseError(f"{where}.geometry: expected an object")
        try:
            return GadgetDescriptor(
                kind=kind,
                local_threshold=threshold,
                spectators=tuple(
                    _ring_from_json(g, f"{where}.spectators[{i}]")
                    for i, g in enumerate(groups)
                ),
                cover=None if cover is None else _cover_from_json(cover, f"{where}.cover"),
                critical=None
                if critical is None
                else CriticalFeature.from_json(critical, f"{where}.critical"),
                boundary_patch=_ring_from_json(
                    obj.get("boundary_patch", []), f"{where}.boundary_patch"
                ),
                holes_added=tuple(
                    _ring_from_json(r, f"{where}.holes_added[{i}]")
                    for i, r in enumerate(obj.get("holes_added", []))
                ),
                attachment=None
                if attachment is None
                else _segmentish_interval(attachment, f"{where}.attachment"),
                geometry={
                    str(k): _geometry_value_from_json(v) for k, v in geometry.items()
                },
            )
        except InstanceValidationError as exc:
            raise InstanceParseError(f"{where}: {exc}") from exc


def _segmentish_interval(obj: object, where: str) -> tuple[Fraction, Fraction]:
    if not isinstance(obj, Sequence) or isinstance(obj, str) or len(obj) != 2:
        raise InstanceParseError(f"{where}: expected [lo, hi]")
    return (
        rational_from_str(obj[0], f"{where}[0]"),
        rational_from_str(obj[1], f"{where}[1]"),
    )


@dataclass(frozen=True)
class Instance:
    """A hidden-set decision instance: domain, threshold, and gadget annotations."""

    domain: PolygonalDomain
    threshold: int
    gadgets: tuple[GadgetDescriptor, ...] = ()
    spectators: tuple[Point, ...] = ()
    variable_segments: Mapping[str, tuple[Point, Point]] = field(default_factory=dict)
    metadata: str = ""

    def validate(self) -> None:
        try:
            self.domain.validate()
        except DomainError as exc:
            raise InstanceValidationError(str(exc)) from exc
        if self.threshold < 0:
            raise InstanceValidationError("threshold must be nonnegative")
        fast = FastDomain(self.domain)
        for i, p in enumerate(self.spectators):
            if fast.locate(p) is Location.EXTERIOR:
                raise InstanceValidationError(f"spectator {i} lies outside the domain")
        for name, (a, b) in self.variable_segments.items():
            for p in (a, b):
                if fast.locate(p) is Location.EXTERIOR:
                    raise InstanceValidationError(
                        f"variable segment {name!r} endpoint outside the domain"
                    )
        if self.gadgets:
            total = sum(g.local_threshold for g in self.gadgets)
            if total != self.threshold:
                raise InstanceValidationError(
                    f"threshold {self.threshold} != sum of gadget thresholds {total}"
                )

    def to_json(self) -> dict[str, Any]:
        return {
            "outer": _ring_to_json(self.domain.outer),
            "holes": [_ring_to_json(h) for h in self.domain.holes],
            "threshold": self.threshold,
            "spectators": [_point_to_json(p) for p in self.spectators],
            "variable_segments": {
                name: _segment_to_json(self.variable_segments[name])
                for name in sorted(self.variable_segments)
            },
            "gadgets": [g.to_json() for g in self.gadgets],
            "metadata": self.metadata,
        }


def parse_instance(data: bytes | str) -> Instance:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, Mapping):
        raise InstanceParseError("instance file must hold a JSON object")
    outer = _ring_from_json(obj.get("outer"), "outer")
    holes_obj = obj.get("holes", [])
    if not isinstance(holes_obj, Sequence) or isinstance(holes_obj, str):
        raise InstanceParseError("holes: expected an array")
    holes = tuple(_ring_from_json(h, f"holes[{i}]") for i, h in enumerate(holes_obj))
    threshold = obj.get("threshold")
    if isinstance(threshold, bool) or not isinstance(threshold, int):
        raise InstanceParseError("threshold: expected an integer")
    spectators_obj = obj.get("spectators", [])
    if not isinstance(spectators_obj, Sequence) or isinstance(spectators_obj, str):
        raise InstanceParseError("spectators: expected an array")
    segs_obj = obj.get("variable_segments", {})
    if not isinstance(segs_obj, Mapping):
        raise InstanceParseError("variable_segments: expected an object")
    gadgets_obj = obj.get("gadgets", [])
    if not isinstance(gadgets_obj, Sequence) or isinstance(gadgets_obj, str):
        raise InstanceParseError("gadgets: expected an array")
    metadata = obj.get("metadata", "")
    if not isinstance(metadata, str):
        raise InstanceParseError("metadata: expected a string")
    instance = Instance(
        domain=PolygonalDomain(outer, holes),
        threshold=threshold,
        gadgets=tuple(
            GadgetDescriptor.from_json(g, f"gadgets[{i}]")
            for i, g in enumerate(gadgets_obj)
        ),
        spectators=tuple(
            _point_from_json(p, f"spectators[{i}]")
            for i, p in enumerate(spectators_obj)
        ),
        variable_segments={
            str(name): _segment_from_json(seg, f"variable_segments[{name}]")
            for name, seg in segs_obj.items()
        },
        metadata=metadata,
    )
    instance.validate()
    return instance


def serialize_instance(instance: Instance) -> bytes:
    return (json.dumps(instance.to_json(), indent=2) + "\n").encode("utf-8")


def parse_placement(data: bytes | str) -> tuple[Point, ...]:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, Sequence) or isinstance(obj, str):
        raise InstanceParseError("placement file must hold a JSON array of points")
    return tuple(_point_from_json(p, f"placement[{i}]") for i, p in enumerate(obj))


def serialize_placement(points: Sequence[Point]) -> bytes:
    return (
        json.dumps([_point_to_json(p) for p in points], indent=2) + "\n"
    ).encode("utf-8")
