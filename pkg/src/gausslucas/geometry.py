"""Convex hulls in the complex plane, containment, and separating directions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import NotSeparable


def cross(o: complex, a: complex, b: complex) -> float:
    """z-component of (a - o) x (b - o); positive for a left turn."""
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def dot(u: complex, v: complex) -> float:
    return u.real * v.real + u.imag * v.imag


@dataclass(frozen=True)
class Hull:
    """Counter-clockwise vertices; one vertex is a point, two a segment."""

    vertices: tuple[complex, ...]

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        vs = self.vertices
        if len(vs) == 2:
            return [(vs[0], vs[1])]
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))] if len(vs) > 2 else []

    def to_json(self) -> list[list[float]]:
        return [[v.real, v.imag] for v in self.vertices]

    @classmethod
    def from_json(cls, data) -> Hull:
        return cls(tuple(complex(float(x), float(y)) for x, y in data))


@dataclass(frozen=True)
class Witness:
    """Unit ``direction`` with ``(z - a) . direction >= margin > 0`` for all hull points ``a``."""

    point: complex
    direction: complex
    margin: float

    def to_json(self) -> dict:
        return {
            "point": [self.point.real, self.point.imag],
            "direction": [self.direction.real, self.direction.imag],
            "margin": self.margin,
        }


def convex_hull(points: Iterable[complex]) -> Hull:
    """Monotone chain; collinear boundary points are dropped."""
    pts = sorted({complex(p) for p in points}, key=lambda z: (z.real, z.imag))
    if not pts:
        raise ValueError("convex hull of an empty point set")
    if len(pts) <= 2:
        return Hull(tuple(pts))

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return Hull(tuple(lower[:-1] + upper[:-1]))


def closest_point_on_segment(a: complex, b: complex, p: complex) -> complex:
    ab = b - a
    denom = dot(ab, ab)
    if denom == 0:
        return a
    t = min(1.0, max(0.0, dot(p - a, ab) / denom))
    return a + t * ab


def closest_point(h: Hull, p: complex) -> complex:
    """Nearest point of the hull boundary (or the single vertex) to ``p``."""
    if len(h) == 1:
        return h.vertices[0]
    best, best_d = None, math.inf
    for a, b in h.edges():
        q = closest_point_on_segment(a, b, p)
        d = abs(p - q)
        if d < best_d:
            best, best_d = q, d
    return best


def signed_distance(h: Hull, p: complex) -> float:
    """Distance from ``p`` to the hull; negative depth when strictly inside a polygon."""
    p = complex(p)
    if len(h) < 3:
        return abs(p - closest_point(h, p))
    inside = True
    depth = math.inf
    for a, b in h.edges():
        c = cross(a, b, p)
        if c < 0:
            inside = False
            break
        depth = min(depth, c / abs(b - a))
    if inside:
        return -depth
    return abs(p - closest_point(h, p))


def contains(h: Hull, p: complex, eps: float = 0.0) -> bool:
    """True when ``p`` lies within ``eps`` of the hull, boundary inclusive."""
    if eps < 0:
        raise ValueError("eps must be non-negative")
    return signed_distance(h, p) <= eps


def separating_direction(h: Hull, z: complex, eps: float = 0.0) -> Witness:
    """Unit vector from the nearest hull point towards ``z``, with its margin."""
    z = complex(z)
    if contains(h, z, eps):
        raise NotSeparable(f"{z} lies within {eps} of the hull")
    q = closest_point(h, z)
    v = (z - q) / abs(z - q)
    margin = min(dot(z - a, v) for a in h.vertices)
    if not margin > 0:
        raise NotSeparable(f"{z} is too close to the hull to separate in floating point")
    return Witness(z, v, margin)


def diameter(h: Hull) -> float:
    if len(h) < 2:
        return 0.0
    return max(abs(a - b) for a, b in combinations(h.vertices, 2))


def tolerance_scale(h: Hull) -> float:
    """Diameter used to scale tolerances; 1 for a single point."""
    d = diameter(h)
    return d if d > 0 else 1.0
