"""Random charge configurations used by the CLI and the test suites."""

from __future__ import annotations

import numpy as np

from .electrostatics import ChargeConfiguration
from .geometry import Hull, signed_distance, tolerance_scale


def random_roots(rng: np.random.Generator, n: int, radius: float = 2.0, min_sep: float = 1e-2) -> np.ndarray:
    """``n`` points uniform in the disk of ``radius``, pairwise at least ``min_sep`` apart."""
    while True:
        r = radius * np.sqrt(rng.random(n))
        z = r * np.exp(2j * np.pi * rng.random(n))
        if n < 2:
            return z
        d = np.abs(z[:, None] - z[None, :])
        d[np.diag_indices(n)] = np.inf
        if d.min() >= min_sep:
            return z


def random_configuration(rng: np.random.Generator, degree: int, **kwargs) -> ChargeConfiguration:
    return ChargeConfiguration.from_points(random_roots(rng, degree, **kwargs))


def random_outside_point(rng: np.random.Generator, hull: Hull, gap: float = 1e-3, spread: float = 2.0) -> complex:
    """A point at least ``gap * diameter`` outside the hull, within ``spread`` diameters of it."""
    scale = tolerance_scale(hull)
    center = complex(np.mean(hull.vertices))
    reach = max(abs(v - center) for v in hull.vertices) + spread * scale
    while True:
        z = center + reach * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        if signed_distance(hull, z) > gap * scale:
            return complex(z)


def random_points_away(rng: np.random.Generator, cfg: ChargeConfiguration, count: int, clearance: float = 0.05, pad: float = 0.5) -> np.ndarray:
    """``count`` points in the padded bounding box, each ``clearance * diameter`` from every charge."""
    locs = cfg.locations
    scale = tolerance_scale(cfg.hull())
    x0, x1 = locs.real.min() - pad * scale, locs.real.max() + pad * scale
    y0, y1 = locs.imag.min() - pad * scale, locs.imag.max() + pad * scale
    out = np.empty(0, dtype=np.complex128)
    while out.size < count:
        z = rng.uniform(x0, x1, 2 * count) + 1j * rng.uniform(y0, y1, 2 * count)
        near = np.min(np.abs(z[:, None] - locs[None, :]), axis=1)
        out = np.concatenate([out, z[near >= clearance * scale]])
    return out[:count]


def quintic_with_double_critical_point(
    top: complex = 0.7j, left: complex = -0.6 - 0.3j, right: complex = 0.6 - 0.4j, constant: complex = 0.3
) -> ChargeConfiguration:
    """Five simple roots whose P' = 5 (z - top)^2 (z - left)(z - right).

    Three distinct critical points, the uppermost of multiplicity two, which
    makes a compact five-charge demo scene.
    """
    from numpy.polynomial import polynomial as npoly

    from .poly import Polynomial
    from .roots import find_roots

    dp = 5 * npoly.polyfromroots([top, top, left, right])
    p = npoly.polyint(dp)
    p[0] = constant
    return ChargeConfiguration(find_roots(Polynomial.from_array(p), strict=True).roots)
