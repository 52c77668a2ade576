"""Complex polynomials stored low degree first, and multisets of roots."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import PoleAtChargeLocation

MAX_DEGREE = 64
POLE_GUARD_REL = 1e-14


def _as_complex(value) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex value {value!r}")
    return z


@dataclass(frozen=True)
class Polynomial:
    """Coefficients ``coeffs[i]`` of ``z**i``; the zero polynomial is ``(0,)``."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        cs = [_as_complex(c) for c in self.coeffs]
        if not cs:
            raise ValueError("a polynomial needs at least one coefficient")
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if len(cs) - 1 > MAX_DEGREE:
            raise ValueError(f"degree {len(cs) - 1} exceeds the cap of {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_array(cls, arr) -> Polynomial:
        return cls(tuple(complex(c) for c in np.asarray(arr, dtype=complex)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0j,)

    @property
    def leading(self) -> complex:
        return self.coeffs[-1]

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.complex128)

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0j] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0j] * (n - len(other.coeffs))
        return Polynomial(tuple(x + y for x, y in zip(a, b)))

    def to_json(self) -> list[list[float]]:
        return [[c.real, c.imag] for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> Polynomial:
        return cls(tuple(complex(float(re), float(im)) for re, im in data))


@dataclass(frozen=True)
class RootSet:
    """Distinct locations with positive integer multiplicities."""

    entries: tuple[tuple[complex, int], ...] = ()

    def __post_init__(self):
        clean = []
        for loc, mult in self.entries:
            m = int(mult)
            if m != mult or m < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {mult!r}")
            clean.append((_as_complex(loc), m))
        object.__setattr__(self, "entries", tuple(clean))

    @classmethod
    def from_points(cls, points: Iterable, multiplicities: Iterable[int] | None = None) -> RootSet:
        """Build from locations, merging exactly repeated points into one entry."""
        points = [_as_complex(p) for p in points]
        mults = [1] * len(points) if multiplicities is None else [int(m) for m in multiplicities]
        if len(mults) != len(points):
            raise ValueError("points and multiplicities differ in length")
        merged: dict[complex, int] = {}
        for p, m in zip(points, mults):
            merged[p] = merged.get(p, 0) + m
        return cls(tuple(merged.items()))

    @property
    def locations(self) -> np.ndarray:
        return np.array([loc for loc, _ in self.entries], dtype=np.complex128)

    @property
    def multiplicities(self) -> np.ndarray:
        return np.array([m for _, m in self.entries], dtype=np.int64)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def expanded(self) -> np.ndarray:
        """Locations repeated by multiplicity."""
        return np.repeat(self.locations, self.multiplicities)

    def to_json(self) -> list[list[float]]:
        return [[loc.real, loc.imag, m] for loc, m in self.entries]

    @classmethod
    def from_json(cls, data) -> RootSet:
        """Parse ``[[re, im, mult?], ...]``; exact duplicates are merged."""
        if not isinstance(data, list):
            raise ValueError("root set JSON must be a list of [re, im, mult?] entries")
        points, mults = [], []
        for item in data:
            if not isinstance(item, (list, tuple)) or len(item) not in (2, 3):
                raise ValueError(f"bad root entry {item!r}")
            if any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in item):
                raise ValueError(f"bad root entry {item!r}")
            points.append(complex(float(item[0]), float(item[1])))
            mults.append(item[2] if len(item) == 3 else 1)
        if any(int(m) != m for m in mults):
            raise ValueError("multiplicities must be integers")
        return cls.from_points(points, [int(m) for m in mults])


def bbox_diameter(points: Sequence[complex] | np.ndarray) -> float:
    """Diagonal of the axis-aligned bounding box of ``points`` (0 when empty)."""
    pts = np.asarray(points, dtype=np.complex128)
    if pts.size == 0:
        return 0.0
    return math.hypot(np.ptp(pts.real), np.ptp(pts.imag))


def pole_guard(points) -> float:
    return POLE_GUARD_REL * max(1.0, bbox_diameter(points))


def from_roots(roots: RootSet) -> Polynomial:
    """Expand the monic product of ``(z - a)**m`` over the root set."""
    if roots.total > MAX_DEGREE:
        raise ValueError(f"degree {roots.total} exceeds the cap of {MAX_DEGREE}")
    c = np.ones(1, dtype=np.complex128)
    for a, m in roots:
        for _ in range(m):
            nxt = np.zeros(len(c) + 1, dtype=np.complex128)
            nxt[1:] = c
            nxt[:-1] -= a * c
            c = nxt
    return Polynomial.from_array(c)


def derivative(p: Polynomial) -> Polynomial:
    if p.degree == 0:
        return Polynomial((0j,))
    return Polynomial(tuple(i * c for i, c in enumerate(p.coeffs) if i > 0))


def evaluate(p: Polynomial, z):
    """Horner evaluation; ``z`` may be a scalar or a numpy array."""
    acc = p.coeffs[-1] * np.ones_like(z, dtype=np.complex128) if isinstance(z, np.ndarray) else p.coeffs[-1]
    for c in reversed(p.coeffs[:-1]):
        acc = acc * z + c
    return acc


def log_derivative(roots: RootSet, z: complex) -> complex:
    """``P'(z)/P(z)`` as the sum of ``m / (z - a)`` over the roots."""
    z = _as_complex(z)
    locs = roots.locations
    d = z - locs
    if locs.size and np.min(np.abs(d)) <= pole_guard(locs):
        raise PoleAtChargeLocation(f"{z} is within the pole guard of a root")
    return complex(np.sum(roots.multiplicities / d))
