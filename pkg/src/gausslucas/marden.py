"""Steiner inellipse of a triangle, whose foci are the critical points of the cubic."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateTriangle
from .geometry import dot

DEGENERATE_AREA_REL = 1e-12


@dataclass(frozen=True)
class Ellipse:
    """String-construction ellipse: points with ``|p - f1| + |p - f2| = 2a``."""

    focus1: complex
    focus2: complex
    semi_major: float

    def __post_init__(self):
        if not self.semi_major > 0:
            raise ValueError("semi_major must be positive")
        if not 2 * self.semi_major > abs(self.focus1 - self.focus2):
            raise ValueError("foci are too far apart for this semi-major axis")

    @property
    def center(self) -> complex:
        return (self.focus1 + self.focus2) / 2

    @property
    def semi_minor(self) -> float:
        c = abs(self.focus1 - self.focus2) / 2
        return math.sqrt((self.semi_major - c) * (self.semi_major + c))

    def distance_sum(self, p: complex) -> float:
        return abs(p - self.focus1) + abs(p - self.focus2)

    def to_json(self) -> dict:
        return {
            "f1": [self.focus1.real, self.focus1.imag],
            "f2": [self.focus2.real, self.focus2.imag],
            "a": self.semi_major,
        }

    @classmethod
    def from_json(cls, data) -> Ellipse:
        return cls(complex(*data["f1"]), complex(*data["f2"]), float(data["a"]))


def triangle_area(a: complex, b: complex, c: complex) -> float:
    return abs((b - a).real * (c - a).imag - (b - a).imag * (c - a).real) / 2


def triangle_scale(a: complex, b: complex, c: complex) -> float:
    """Longest side."""
    return max(abs(a - b), abs(b - c), abs(c - a))


def cubic_critical_points(a: complex, b: complex, c: complex) -> tuple[complex, complex]:
    """Roots of ``3z^2 - 2(a+b+c)z + (ab+bc+ca)``, solved about the centroid.

    Shifting to the centroid kills the linear term, leaving ``g +/- sqrt(-s/3)``
    with ``s`` the second elementary symmetric function of the shifted vertices.
    """
    g = (a + b + c) / 3
    u, v, w = a - g, b - g, c - g
    s = u * v + v * w + w * u
    r = cmath.sqrt(-s / 3)
    return g + r, g - r


def steiner_inellipse(a: complex, b: complex, c: complex) -> Ellipse:
    a, b, c = complex(a), complex(b), complex(c)
    scale = triangle_scale(a, b, c)
    if not triangle_area(a, b, c) > DEGENERATE_AREA_REL * scale * scale:
        raise DegenerateTriangle(f"triangle {a}, {b}, {c} is degenerate")
    f1, f2 = cubic_critical_points(a, b, c)
    m = (a + b) / 2
    semi = (abs(m - f1) + abs(m - f2)) / 2
    # nearly flat triangles can round a to or below the focal half-distance
    semi = max(semi, math.nextafter(abs(f1 - f2) / 2, math.inf))
    return Ellipse(f1, f2, semi)


def on_boundary(e: Ellipse, p: complex, tol: float) -> bool:
    return abs(e.distance_sum(complex(p)) - 2 * e.semi_major) <= tol


def _slope(e: Ellipse, p: complex, u: complex) -> float:
    """Directional derivative of the distance sum along unit ``u``."""
    total = 0.0
    for f in (e.focus1, e.focus2):
        r = abs(p - f)
        if r > 0:
            total += dot(p - f, u) / r
    return total


def minimize_on_segment(e: Ellipse, start: complex, end: complex, iters: int = 200) -> complex:
    """Minimizer of the (convex) distance sum over the segment.

    Bisection on the sign of the slope; this pins the point to rounding level,
    where a value-only search stalls at the square root of it.
    """
    start, end = complex(start), complex(end)
    length = abs(end - start)
    if length == 0:
        return start
    u = (end - start) / length
    lo, hi = 0.0, 1.0
    if _slope(e, start, u) >= 0:
        return start
    if _slope(e, end, u) <= 0:
        return end
    for _ in range(iters):
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if _slope(e, start + mid * (end - start), u) < 0:
            lo = mid
        else:
            hi = mid
    return start + (lo + hi) / 2 * (end - start)


def tangency_check(e: Ellipse, side_start: complex, side_end: complex, tol: float) -> bool:
    """True when the side touches the ellipse exactly at its midpoint.

    The minimum of the distance sum along the side must equal ``2a`` within
    ``tol`` and be attained at the midpoint within ``tol * max(1, side length)``.
    """
    side_start, side_end = complex(side_start), complex(side_end)
    p = minimize_on_segment(e, side_start, side_end)
    touches = abs(e.distance_sum(p) - 2 * e.semi_major) <= tol
    at_mid = abs(p - (side_start + side_end) / 2) <= tol * max(1.0, abs(side_end - side_start))
    return touches and at_mid


def ellipse_area(e: Ellipse) -> float:
    return math.pi * e.semi_major * e.semi_minor

