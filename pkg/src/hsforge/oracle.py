"""Desk-scale ground truth: brute-force hidden-set lower bounds.

The brute force enumerates a deterministic candidate pool (domain vertices,
caller hints, edge midpoints, intersections of vertex-vertex extension
lines, and a coarse interior grid standing in for cell representatives),
builds the exact pairwise visibility graph, and solves maximum independent
set exactly by branch and bound.  The result is a lower bound on the true
hidden-set optimum; it is exact whenever a matching cover certificate
squeezes it from above.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .geometry import Location, Point, PolygonalDomain, midpoint
from .visibility import FastDomain

__all__ = ["BruteForceResult", "brute_force_lower_bound"]


@dataclass(frozen=True)
class BruteForceResult:
    """Exact maximum hidden set over the candidate pool."""

    size: int
    placement: tuple[Point, ...]
    complete: bool  # false when the budget truncated the candidate pool


def _line_key(u: Point, v: Point) -> tuple[int, int, int]:
    """Primitive integer (A, B, C) with Ax + By = C for the line through u, v."""
    a = v.y - u.y
    b = u.x - v.x
    c = a * u.x + b * u.y
    scale = lcm(a.denominator, b.denominator, c.denominator)
    ai = int(a * scale)
    bi = int(b * scale)
    ci = int(c * scale)
    g = gcd(gcd(abs(ai), abs(bi)), abs(ci))
    if g:
        ai, bi, ci = ai // g, bi // g, ci // g
    if ai < 0 or (ai == 0 and bi < 0):
        ai, bi, ci = -ai, -bi, -ci
    return ai, bi, ci


def _line_intersections(lines: Sequence[tuple[int, int, int]]) -> Iterable[Point]:
    n = len(lines)
    for i in range(n):
        a1, b1, c1 = lines[i]
        for j in range(i + 1, n):
            a2, b2, c2 = lines[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            yield Point(
                Fraction(c1 * b2 - c2 * b1, det), Fraction(a1 * c2 - a2 * c1, det)
            )


def _grid_samples(domain: PolygonalDomain, divisions: int) -> Iterable[Point]:
    x0, y0, x1, y1 = domain.bbox()
    for i in range(1, divisions):
        for j in range(1, divisions):
            yield Point(
                x0 + (x1 - x0) * Fraction(i, divisions),
                y0 + (y1 - y0) * Fraction(j, divisions),
            )


def _candidates(
    domain: PolygonalDomain, fast: FastDomain, budget: int, hints: Sequence[Point]
) -> tuple[list[Point], bool]:
    def point_key(q: Point) -> tuple[Fraction, Fraction]:
        return (q.x, q.y)

    lines_seen: dict[tuple[int, int, int], None] = {}
    verts = domain.vertices()
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if verts[i] != verts[j]:
                lines_seen.setdefault(_line_key(verts[i], verts[j]))

    tiers: list[Iterable[Point]] = [
        verts,
        sorted((h for h in hints), key=point_key),
        [midpoint(a, b) for a, b in domain.edges()],
        sorted(_line_intersections(list(lines_seen)), key=point_key),
        _grid_samples(domain, 12),
    ]

    out: list[Point] = []
    seen: set[Point] = set()
    truncated = False
    for tier in tiers:
        for q in tier:
            if q in seen or fast.locate(q) is Location.EXTERIOR:
                continue
            if len(out) >= budget:
                truncated = True
                break
            seen.add(q)
            out.append(q)
        if truncated:
            break
    return out, not truncated


def _max_clique(neighbors: Sequence[int]) -> tuple[int, int]:
    """Exact maximum clique (size, vertex mask) with greedy-coloring bounds."""
    best_size = 0
    best_mask = 0

    def expand(r_mask: int, r_size: int, cand: int) -> None:
        nonlocal best_size, best_mask
        if r_size > best_size:
            best_size, best_mask = r_size, r_mask
        if not cand:
            return
        color_class: list[int] = []
        order: list[tuple[int, int]] = []
        rem = cand
        while rem:
            v = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            c = 0
            while c < len(color_class) and (color_class[c] & neighbors[v]):
                c += 1
            if c == len(color_class):
                color_class.append(0)
            color_class[c] |= 1 << v
            order.append((c + 1, v))
        live = cand
        for bound, v in sorted(order, key=lambda t: (-t[0], -t[1])):
            if r_size + bound <= best_size:
                return
            bit = 1 << v
            expand(r_mask | bit, r_size + 1, live & neighbors[v])
            live &= ~bit

    expand(0, 0, (1 << len(neighbors)) - 1 if neighbors else 0)
    return best_size, best_mask


def brute_force_lower_bound(
    domain: PolygonalDomain,
    budget: int = 400,
    hints: Sequence[Point] = (),
) -> BruteForceResult:
    """Best pairwise-hidden point set found over the candidate pool.

    Deterministic: candidate order is fixed, ties in the search are broken
    by candidate index, and identical inputs give identical placements.
    """
    fast = FastDomain(domain)
    points, complete = _candidates(domain, fast, budget, hints)
    n = len(points)
    if n == 0:
        return BruteForceResult(0, (), complete)
    nonsee = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if not fast.sees(points[i], points[j]):
                nonsee[i] |= 1 << j
                nonsee[j] |= 1 << i
    size, mask = _max_clique(nonsee)
    placement = tuple(points[i] for i in range(n) if (mask >> i) & 1)
    return BruteForceResult(size, placement, complete)
