"""Vectorized numpy kernels; the reference path when numba is disabled."""

import numpy as np

from ._tables import NOISE_FACTOR, SEGMENTS

NAME = "numpy"
_EPS = np.finfo(np.float64).eps
_TINY = 1e-300


def _horner(coeffs, z):
    acc = np.full(z.shape, coeffs[-1], dtype=coeffs.dtype)
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def aberth(coeffs, z0, max_iter, step_tol):
    """Simultaneous Aberth-Ehrlich iteration (Jacobi sweeps).

    Returns ``(z, sweeps, done)``. A point is frozen once its correction drops
    below ``step_tol`` or its residual reaches the Horner rounding floor.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z = np.array(z0, dtype=np.complex128)
    n = z.size
    dcoeffs = coeffs[1:] * np.arange(1, n + 1)
    acoeffs = np.abs(coeffs)
    lead = coeffs[-1]
    floor = NOISE_FACTOR * n * _EPS
    done = np.zeros(n, dtype=np.bool_)
    diag = np.eye(n, dtype=np.bool_)
    sweeps = 0
    while sweeps < max_iter and not done.all():
        sweeps += 1
        p = _horner(coeffs, z)
        dp = _horner(dcoeffs, z)
        bound = _horner(acoeffs, np.abs(z).astype(np.float64))
        at_floor = np.abs(p) <= floor * bound
        diff = z[:, None] - z[None, :]
        diff[diag] = 1.0
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            inv = 1.0 / diff
            inv[diag] = 0.0
            ratio = p / dp
            denom = 1.0 - ratio * inv.sum(axis=1)
            w = ratio / denom
            bad = (dp == 0) | (np.abs(denom) < _TINY) | ~np.isfinite(w)
            if bad.any():
                # Durand-Kerner fallback
                w[bad] = p[bad] / (lead * diff[bad].prod(axis=1))
        w[~np.isfinite(w)] = 0.0
        move = ~(done | at_floor)
        z[move] -= w[move]
        done |= at_floor | (move & (np.abs(w) < step_tol))
    return z, sweeps, done


def potential_grid(xs, ys, locs, mults, mask_radius):
    """-(1/2pi) sum m ln|z - a| at every (xs[i], ys[j]); NaN within mask_radius of a charge."""
    zz = xs[None, :] + 1j * ys[:, None]
    acc = np.zeros(zz.shape, dtype=np.float64)
    nearest = np.full(zz.shape, np.inf)
    for a, m in zip(locs, mults):
        r = np.abs(zz - a)
        nearest = np.minimum(nearest, r)
        with np.errstate(divide="ignore"):
            acc += m * np.log(r)
    out = -acc / (2.0 * np.pi)
    out[nearest <= mask_radius] = np.nan
    return out


def field_points(zs, locs, mults):
    """Field ``ex + 1j*ey`` at each of ``zs`` summed from component vectors."""
    zs = np.asarray(zs, dtype=np.complex128)
    ex = np.zeros(zs.shape)
    ey = np.zeros(zs.shape)
    for a, m in zip(locs, mults):
        dx = zs.real - a.real
        dy = zs.imag - a.imag
        r2 = dx * dx + dy * dy
        ex += m * dx / r2
        ey += m * dy / r2
    return (ex + 1j * ey) / (2.0 * np.pi)


def march_segments(values, level):
    """Edge-id pairs of every contour segment at ``level``, ordered by (cell, slot)."""
    ny, nx = values.shape
    v00 = values[:-1, :-1]
    v10 = values[:-1, 1:]
    v11 = values[1:, 1:]
    v01 = values[1:, :-1]
    valid = np.isfinite(v00) & np.isfinite(v10) & np.isfinite(v11) & np.isfinite(v01)
    case = (
        (v00 > level).astype(np.int64)
        | (v10 > level).astype(np.int64) << 1
        | (v11 > level).astype(np.int64) << 2
        | (v01 > level).astype(np.int64) << 3
    )
    center = ((v00 + v10 + v11 + v01) * 0.25 > level).astype(np.int64)
    case[~valid] = 0

    jj, ii = np.nonzero(case % 15 != 0)
    if jj.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    cs = case[jj, ii]
    table = SEGMENTS[center[jj, ii], cs]  # (k, 2 slots, 2 ends)
    h = ny * (nx - 1)
    local = np.stack(
        [
            jj * (nx - 1) + ii,
            h + jj * nx + ii + 1,
            (jj + 1) * (nx - 1) + ii,
            h + jj * nx + ii,
        ],
        axis=1,
    )
    cell = jj * (nx - 1) + ii
    keys, segs = [], []
    for slot in (0, 1):
        has = table[:, slot, 0] >= 0
        rows = np.nonzero(has)[0]
        ends = table[rows, slot]
        segs.append(np.stack([local[rows, ends[:, 0]], local[rows, ends[:, 1]]], axis=1))
        keys.append(cell[rows] * 2 + slot)
    order = np.argsort(np.concatenate(keys), kind="stable")
    return np.concatenate(segs)[order]
