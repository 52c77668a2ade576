"""All complex roots of a polynomial, with multiplicities."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NonConvergence, StalledAtCriticalPoint
from .poly import Polynomial, RootSet, derivative, evaluate

log = logging.getLogger(__name__)

START_RADIUS = 0.9
START_ANGLE = 0.4
STEP_TOL_REL = 1e-14


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-12
    max_iter: int = 200
    cluster_radius: float = 1e-7

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not self.cluster_radius > 0:
            raise ValueError("cluster_radius must be positive")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")


@dataclass(frozen=True)
class SolveReport:
    roots: RootSet
    iterations: int
    max_residual: float
    converged: bool = True

    def to_json(self) -> dict:
        return {
            "roots": self.roots.to_json(),
            "iterations": self.iterations,
            "max_residual": self.max_residual,
        }


def cauchy_bound(p: Polynomial) -> float:
    """``1 + max |c_i| / |c_n|``; every root lies in the disk of this radius."""
    if p.degree < 1:
        raise ValueError("Cauchy bound needs a non-constant polynomial")
    lead = abs(p.leading)
    return 1.0 + max(abs(c) for c in p.coeffs[:-1]) / lead


def residual_scale(p: Polynomial) -> float:
    """Magnitude scale that residuals are compared against: max|c| * max(1, R)**deg."""
    return max(abs(c) for c in p.coeffs) * max(1.0, cauchy_bound(p)) ** p.degree


def inclusion_radii(p: Polynomial, z: np.ndarray) -> np.ndarray:
    """``n |p(z_i)| / |c_n prod_{j != i} (z_i - z_j)|``: the disks around the
    approximations whose union contains every root.
    """
    n = len(z)
    diff = z[:, None] - z[None, :]
    diff[np.diag_indices(n)] = 1.0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        r = n * np.abs(evaluate(p, z)) / np.abs(p.leading * diff.prod(axis=1))
    # coincident points: leave merging to the fixed radius
    r[~np.isfinite(r)] = 0.0
    return r


def cluster(points: np.ndarray, radius: float, spread: np.ndarray | None = None) -> RootSet:
    """Single-linkage clustering; each cluster becomes (centroid, size).

    Points merge when closer than ``radius`` or, given per-point ``spread``
    radii, when their disks overlap. Entries are sorted by real then imaginary
    part so output is deterministic.
    """
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            reach = radius if spread is None else max(radius, spread[i] + spread[j])
            if abs(points[i] - points[j]) <= reach:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    entries = [(complex(np.mean(points[idx])), len(idx)) for idx in groups.values()]
    entries.sort(key=lambda e: (e[0].real, e[0].imag))
    return RootSet(tuple(entries))


def symmetrize_conjugates(roots: RootSet, snap: float) -> RootSet:
    """Pair each entry with its nearest conjugate of equal multiplicity and average.

    For real-coefficient polynomials the true root multiset is closed under
    conjugation. Unpaired entries within ``snap`` of the real axis become real;
    others are left alone.
    """
    locs = [z for z, _ in roots]
    mults = [m for _, m in roots]
    out = list(locs)
    free = set(range(len(locs)))
    for i in range(len(locs)):
        if i not in free:
            continue
        free.discard(i)
        best, best_d = None, 2 * abs(locs[i].imag)
        for j in sorted(free):
            if mults[j] == mults[i]:
                d = abs(locs[i] - locs[j].conjugate())
                if d < best_d:
                    best, best_d = j, d
        if best is None:
            if abs(locs[i].imag) <= snap:
                out[i] = complex(locs[i].real, 0.0)
        else:
            free.discard(best)
            w = (locs[i] + locs[best].conjugate()) / 2
            out[i], out[best] = w, w.conjugate()
    entries = sorted(zip(out, mults), key=lambda e: (e[0].real, e[0].imag))
    return RootSet(tuple(entries))


def initial_guesses(n: int, radius: float) -> np.ndarray:
    k = np.arange(n)
    return START_RADIUS * radius * np.exp(1j * (2 * np.pi * k / n + START_ANGLE))


def find_roots(p: Polynomial, cfg: SolverConfig | None = None, *, strict: bool = False) -> SolveReport:
    """Roots of ``p`` by simultaneous Aberth-Ehrlich iteration.

    Exhausting ``cfg.max_iter`` with a residual above ``cfg.tol * residual_scale(p)``
    yields a report with ``converged=False``; with ``strict=True`` that raises
    :class:`NonConvergence` carrying the report instead.
    """
    cfg = cfg or SolverConfig()
    n = p.degree
    if n < 1:
        raise ValueError("cannot find roots of a constant polynomial")
    bound = cauchy_bound(p)
    coeffs = p.as_array()
    if n == 1:
        z = np.array([-coeffs[0] / coeffs[1]])
        sweeps, all_done = 0, True
    else:
        z, sweeps, done = kernels.get_backend().aberth(
            coeffs, initial_guesses(n, bound), cfg.max_iter, STEP_TOL_REL * bound
        )
        all_done = bool(np.all(done))
    radius = cfg.cluster_radius * bound
    spread = inclusion_radii(p, z) if n > 1 else None
    roots = cluster(z, radius, spread)
    reach = radius if spread is None else max(radius, float(np.max(spread)))
    if any(m > 1 for _, m in roots):
        roots = RootSet(tuple((_polish_multiple(p, loc, m, reach), m) for loc, m in roots))
    if all(c.imag == 0 for c in p.coeffs):
        roots = symmetrize_conjugates(roots, reach)
    max_res = float(max(abs(evaluate(p, loc)) for loc, _ in roots))
    converged = all_done or max_res <= cfg.tol * residual_scale(p)
    report = SolveReport(roots, int(sweeps), max_res, converged)
    log.debug("degree %d: %d sweeps, max residual %.3g", n, sweeps, max_res)
    if not converged:
        log.info("root iteration exhausted after %d sweeps (max residual %.3g)", sweeps, max_res)
        if strict:
            raise NonConvergence(f"no convergence after {sweeps} sweeps", report)
    return report


def _polish_multiple(p: Polynomial, z: complex, m: int, radius: float) -> complex:
    """Newton on the (m-1)-th derivative, where an m-fold root is simple.

    The cluster mean is only accurate to about eps**(1/m); the polished point
    must stay within the clustering radius or the mean is kept.
    """
    if m == 1:
        return z
    q = p
    for _ in range(m - 1):
        q = derivative(q)
    try:
        polished = refine_root(q, z, max_steps=10)
    except StalledAtCriticalPoint:
        return z
    return polished if abs(polished - z) <= radius else z


def refine_root(p: Polynomial, z0: complex, max_steps: int = 50) -> complex:
    """Newton-polish ``z0`` while the residual keeps decreasing."""
    dp = derivative(p)
    z = complex(z0)
    res = abs(evaluate(p, z))
    for _ in range(max_steps):
        if res == 0:
            break
        d = evaluate(dp, z)
        guard = 1e-14 * max(1.0, sum(abs(c) * abs(z) ** i for i, c in enumerate(dp.coeffs)))
        if abs(d) <= guard:
            raise StalledAtCriticalPoint(f"derivative vanishes near {z}")
        nz = z - evaluate(p, z) / d
        nres = abs(evaluate(p, nz))
        if not nres < res:
            break
        z, res = nz, nres
    return z

