"""Potential and field of integer point charges sitting at the roots of P.

In two dimensions a unit charge at ``a`` has potential ``-(1/2pi) ln|z - a|``;
the field of the whole configuration is the conjugate of ``P'/P`` over ``2pi``,
so it vanishes exactly at the critical points of P away from the roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field, replace

import numpy as np

from . import kernels
from .errors import PoleAtChargeLocation
from .geometry import Hull, Witness, convex_hull, separating_direction, signed_distance, tolerance_scale
from .poly import Polynomial, RootSet, derivative, evaluate, from_roots, log_derivative, pole_guard
from .roots import SolveReport, SolverConfig, find_roots

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ChargeConfiguration:
    """Charges at ``charges.locations``; a multiplicity m is a charge of m."""

    charges: RootSet

    def __post_init__(self):
        if self.charges.total < 1:
            raise ValueError("a charge configuration needs at least one charge")

    @classmethod
    def from_points(cls, points, multiplicities=None) -> ChargeConfiguration:
        return cls(RootSet.from_points(points, multiplicities))

    @property
    def locations(self) -> np.ndarray:
        return self.charges.locations

    @property
    def multiplicities(self) -> np.ndarray:
        return self.charges.multiplicities

    @property
    def total_charge(self) -> int:
        return self.charges.total

    def polynomial(self) -> Polynomial:
        return from_roots(self.charges)

    def hull(self) -> Hull:
        return convex_hull(self.locations)

    def pole_guard(self) -> float:
        return pole_guard(self.locations)


@dataclass(frozen=True)
class FieldVector:
    ex: float
    ey: float

    def as_complex(self) -> complex:
        return complex(self.ex, self.ey)

    def dot(self, v: complex) -> float:
        return self.ex * v.real + self.ey * v.imag

    @property
    def norm(self) -> float:
        return math.hypot(self.ex, self.ey)


def _check_pole(cfg: ChargeConfiguration, z: complex) -> None:
    if np.min(np.abs(z - cfg.locations)) <= cfg.pole_guard():
        raise PoleAtChargeLocation(f"{z} coincides with a charge")


def potential(cfg: ChargeConfiguration, z: complex) -> float:
    z = complex(z)
    _check_pole(cfg, z)
    total = sum(m * math.log(abs(z - a)) for a, m in cfg.charges)
    return -total / TWO_PI


def field(cfg: ChargeConfiguration, z: complex) -> FieldVector:
    """Sum of ``m (z - a) / |z - a|**2`` over charges, divided by 2pi."""
    z = complex(z)
    _check_pole(cfg, z)
    ex = ey = 0.0
    for a, m in cfg.charges:
        dx, dy = z.real - a.real, z.imag - a.imag
        r2 = dx * dx + dy * dy
        ex += m * dx / r2
        ey += m * dy / r2
    return FieldVector(ex / TWO_PI, ey / TWO_PI)


def field_via_log_derivative(cfg: ChargeConfiguration, z: complex) -> FieldVector:
    try:
        w = log_derivative(cfg.charges, z).conjugate() / TWO_PI
    except PoleAtChargeLocation:
        raise PoleAtChargeLocation(f"{z} coincides with a charge") from None
    return FieldVector(w.real, w.imag)


def field_many(cfg: ChargeConfiguration, zs) -> np.ndarray:
    """Field at many points as ``ex + 1j*ey``; no pole checks."""
    return kernels.get_backend().field_points(zs, cfg.locations, cfg.multiplicities)


def field_magnitude_scale(cfg: ChargeConfiguration) -> float:
    """``total_charge / (2pi * diameter)``: a typical field strength inside the hull."""
    return cfg.total_charge / (TWO_PI * tolerance_scale(cfg.hull()))


def polish_critical_point(cfg: ChargeConfiguration, z: complex, max_steps: int = 8) -> complex:
    """Newton on ``sum m/(z - a)``, kept only while the field keeps shrinking.

    The sum form avoids the rounding of expanded coefficients, so it reaches
    field zeros that the coefficient solve can only locate to ~1e-9.
    """
    locs, mults = cfg.locations, cfg.multiplicities
    scale = tolerance_scale(cfg.hull())
    start = z
    d = z - locs
    if np.min(np.abs(d)) <= cfg.pole_guard():
        return z
    f = np.sum(mults / d)
    for _ in range(max_steps):
        df = -np.sum(mults / (d * d))
        if df == 0:
            break
        nz = z - f / df
        if abs(nz - start) > 1e-6 * scale:
            break
        nd = nz - locs
        if np.min(np.abs(nd)) <= cfg.pole_guard():
            break
        nf = np.sum(mults / nd)
        if not abs(nf) < abs(f):
            break
        z, d, f = nz, nd, nf
    return complex(z)


def critical_report(cfg: ChargeConfiguration, solver: SolverConfig | None = None) -> SolveReport:
    """Solve P' from its coefficients, then polish simple critical points off the charges."""
    if cfg.total_charge < 2:
        raise ValueError("critical points need a total charge of at least 2")
    solver = solver or SolverConfig()
    dp = derivative(cfg.polynomial())
    report = find_roots(dp, solver, strict=True)
    snap = solver.cluster_radius * max(1.0, tolerance_scale(cfg.hull()))
    entries = []
    for z, m in report.roots:
        if m == 1 and np.min(np.abs(z - cfg.locations)) > snap:
            z = polish_critical_point(cfg, z)
        entries.append((z, m))
    roots = RootSet(tuple(entries))
    max_res = float(max(abs(evaluate(dp, z)) for z, _ in roots))
    return replace(report, roots=roots, max_residual=max_res)


def critical_points(cfg: ChargeConfiguration, solver: SolverConfig | None = None) -> RootSet:
    """Roots of P' with multiplicity; raises NonConvergence on a failed solve."""
    return critical_report(cfg, solver).roots


@dataclass(frozen=True)
class GaussLucasReport:
    critical: RootSet
    hull: Hull
    contained: bool
    max_field_at_critical: float
    witnesses: tuple[Witness, ...]
    eps: float
    worst_distance: float
    at_charge: tuple[bool, ...] = dc_field(default=())
    solve: SolveReport | None = None

    def to_json(self) -> dict:
        return {
            "critical": self.critical.to_json(),
            "hull": self.hull.to_json(),
            "contained": self.contained,
            "max_field_at_critical": self.max_field_at_critical,
            "witnesses": [w.to_json() for w in self.witnesses],
            "eps": self.eps,
            "worst_distance": self.worst_distance,
        }


def gauss_lucas_report(
    cfg: ChargeConfiguration, solver: SolverConfig | None = None, eps: float | None = None
) -> GaussLucasReport:
    """Critical points, hull, containment verdicts and field magnitudes in one pass.

    ``eps`` is an absolute inflation of the hull; by default 1e-9 times the hull
    diameter. Critical points that coincide with a charge (repeated roots of P)
    are contained trivially and excluded from the field maximum.
    """
    solver = solver or SolverConfig()
    hull = cfg.hull()
    scale = tolerance_scale(hull)
    if eps is None:
        eps = 1e-9 * scale
    solve = critical_report(cfg, solver)
    crit = solve.roots
    snap = solver.cluster_radius * max(1.0, scale)
    worst = -math.inf
    max_field = 0.0
    witnesses = []
    at_charge = []
    for z, _ in crit:
        dist = signed_distance(hull, z)
        worst = max(worst, dist)
        on_charge = bool(np.min(np.abs(z - cfg.locations)) <= snap)
        at_charge.append(on_charge)
        if not on_charge:
            max_field = max(max_field, field(cfg, z).norm)
        if dist > eps:
            witnesses.append(separating_direction(hull, z, eps))
    return GaussLucasReport(
        critical=crit,
        hull=hull,
        contained=not witnesses,
        max_field_at_critical=max_field,
        witnesses=tuple(witnesses),
        eps=eps,
        worst_distance=worst,
        at_charge=tuple(at_charge),
        solve=solve,
    )
