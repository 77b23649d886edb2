"""Placement verification: accept iff enough pairwise non-seeing points.

A placement is a witness when it holds at least ``instance.threshold``
distinct points of the closed domain, no two of which see each other.
Failures are reported deterministically: the count check first, then the
lowest failing index (or lexicographically first failing pair).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .geometry import Location, Point
from .model import Instance
from .visibility import FastDomain

__all__ = ["Verdict", "verify", "conflict_graph"]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification run; accepted exactly when reason is Ok."""

    reason: str
    found: int | None = None
    required: int | None = None
    index: int | None = None
    pair: tuple[int, int] | None = None

    @property
    def accepted(self) -> bool:
        return self.reason == "Ok"

    @staticmethod
    def ok() -> "Verdict":
        return Verdict("Ok")

    @staticmethod
    def too_few(found: int, required: int) -> "Verdict":
        return Verdict("TooFew", found=found, required=required)

    @staticmethod
    def outside_domain(index: int) -> "Verdict":
        return Verdict("OutsideDomain", index=index)

    @staticmethod
    def mutually_visible(i: int, j: int) -> "Verdict":
        return Verdict("MutuallyVisible", pair=(i, j))

    @staticmethod
    def duplicate_point(i: int, j: int) -> "Verdict":
        return Verdict("DuplicatePoint", pair=(i, j))

    def to_json(self) -> dict[str, Any]:
        reason: dict[str, Any] = {"kind": self.reason}
        if self.reason == "TooFew":
            reason["found"] = self.found
            reason["required"] = self.required
        elif self.reason == "OutsideDomain":
            reason["index"] = self.index
        elif self.reason in ("MutuallyVisible", "DuplicatePoint"):
            reason["i"], reason["j"] = self.pair
        return {"accepted": self.accepted, "reason": reason}


def verify(instance: Instance, placement: Sequence[Point]) -> Verdict:
    """Check a placement against the instance threshold and visibility rules."""
    points = list(placement)
    if len(points) < instance.threshold:
        return Verdict.too_few(len(points), instance.threshold)
    fast = FastDomain(instance.domain)
    for i, p in enumerate(points):
        if fast.locate(p) is Location.EXTERIOR:
            return Verdict.outside_domain(i)
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            if points[i] == points[j]:
                return Verdict.duplicate_point(i, j)
    for i in range(n):
        for j in range(i + 1, n):
            if fast.sees(points[i], points[j]):
                return Verdict.mutually_visible(i, j)
    return Verdict.ok()


def conflict_graph(
    instance: Instance, placement: Sequence[Point]
) -> list[tuple[int, int]]:
    """All index pairs that see each other, for diagnostics and the UI.

    Pairs with a point outside the domain or coincident points are skipped;
    verify() reports those failures separately.
    """
    points = list(placement)
    fast = FastDomain(instance.domain)
    inside = [fast.locate(p) is not Location.EXTERIOR for p in points]
    out: list[tuple[int, int]] = []
    n = len(points)
    for i in range(n):
        if not inside[i]:
            continue
        for j in range(i + 1, n):
            if not inside[j] or points[i] == points[j]:
                continue
            if fast.sees(points[i], points[j]):
                out.append((i, j))
    return out
