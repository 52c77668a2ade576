"""numba-compiled loop kernels. Same signatures and semantics as ``_numpy``."""

import math

import numpy as np
from numba import njit

from ._tables import NOISE_FACTOR, SEGMENTS

NAME = "numba"
_EPS = np.finfo(np.float64).eps
_TINY = 1e-300


@njit(cache=True)
def _aberth(coeffs, z, max_iter, step_tol):
    n = z.shape[0]
    lead = coeffs[n]
    floor = NOISE_FACTOR * n * _EPS
    done = np.zeros(n, dtype=np.bool_)
    w = np.zeros(n, dtype=np.complex128)
    freeze = np.zeros(n, dtype=np.bool_)
    sweeps = 0
    while sweeps < max_iter:
        remaining = 0
        for i in range(n):
            if not done[i]:
                remaining += 1
        if remaining == 0:
            break
        sweeps += 1
        for i in range(n):
            w[i] = 0.0
            freeze[i] = False
            if done[i]:
                continue
            zi = z[i]
            azi = abs(zi)
            p = coeffs[n]
            dp = 0.0j
            bound = abs(coeffs[n])
            for k in range(n - 1, -1, -1):
                dp = dp * zi + p
                p = p * zi + coeffs[k]
                bound = bound * azi + abs(coeffs[k])
            if abs(p) <= floor * bound:
                freeze[i] = True
                continue
            s = 0.0j
            prod = 1.0 + 0.0j
            for j in range(n):
                if j != i:
                    d = zi - z[j]
                    prod *= d
                    if d != 0:
                        s += 1.0 / d
            ok = dp != 0
            if ok:
                ratio = p / dp
                denom = 1.0 - ratio * s
                if abs(denom) < _TINY:
                    ok = False
                else:
                    wi = ratio / denom
                    if not (math.isfinite(wi.real) and math.isfinite(wi.imag)):
                        ok = False
            if not ok:
                # Durand-Kerner fallback
                wi = p / (lead * prod)
            if math.isfinite(wi.real) and math.isfinite(wi.imag):
                w[i] = wi
        for i in range(n):
            if done[i]:
                continue
            if freeze[i]:
                done[i] = True
                continue
            z[i] -= w[i]
            if abs(w[i]) < step_tol:
                done[i] = True
    return z, sweeps, done


def aberth(coeffs, z0, max_iter, step_tol):
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    z = np.array(z0, dtype=np.complex128)
    return _aberth(coeffs, z, int(max_iter), float(step_tol))


@njit(cache=True)
def _potential_grid(xs, ys, locs, mults, mask_radius):
    ny = ys.shape[0]
    nx = xs.shape[0]
    out = np.empty((ny, nx), dtype=np.float64)
    scale = -1.0 / (2.0 * math.pi)
    for j in range(ny):
        y = ys[j]
        for i in range(nx):
            x = xs[i]
            acc = 0.0
            masked = False
            for k in range(locs.shape[0]):
                r = math.hypot(x - locs[k].real, y - locs[k].imag)
                if r <= mask_radius:
                    masked = True
                    break
                acc += mults[k] * math.log(r)
            out[j, i] = np.nan if masked else scale * acc
    return out


def potential_grid(xs, ys, locs, mults, mask_radius):
    return _potential_grid(
        np.ascontiguousarray(xs, dtype=np.float64),
        np.ascontiguousarray(ys, dtype=np.float64),
        np.ascontiguousarray(locs, dtype=np.complex128),
        np.ascontiguousarray(mults, dtype=np.float64),
        float(mask_radius),
    )


@njit(cache=True)
def _field_points(zs, locs, mults):
    out = np.empty(zs.shape[0], dtype=np.complex128)
    for q in range(zs.shape[0]):
        ex = 0.0
        ey = 0.0
        for k in range(locs.shape[0]):
            dx = zs[q].real - locs[k].real
            dy = zs[q].imag - locs[k].imag
            r2 = dx * dx + dy * dy
            ex += mults[k] * dx / r2
            ey += mults[k] * dy / r2
        out[q] = complex(ex, ey) / (2.0 * math.pi)
    return out


def field_points(zs, locs, mults):
    zs = np.asarray(zs, dtype=np.complex128)
    flat = _field_points(
        np.ascontiguousarray(zs.ravel()),
        np.ascontiguousarray(locs, dtype=np.complex128),
        np.ascontiguousarray(mults, dtype=np.float64),
    )
    return flat.reshape(zs.shape)


@njit(cache=True)
def _march_segments(values, level, table):
    ny, nx = values.shape
    h = ny * (nx - 1)
    out = np.empty((2 * (ny - 1) * (nx - 1), 2), dtype=np.int64)
    count = 0
    local = np.empty(4, dtype=np.int64)
    for j in range(ny - 1):
        for i in range(nx - 1):
            v00 = values[j, i]
            v10 = values[j, i + 1]
            v11 = values[j + 1, i + 1]
            v01 = values[j + 1, i]
            if not (
                math.isfinite(v00) and math.isfinite(v10)
                and math.isfinite(v11) and math.isfinite(v01)
            ):
                continue
            case = 0
            if v00 > level:
                case |= 1
            if v10 > level:
                case |= 2
            if v11 > level:
                case |= 4
            if v01 > level:
                case |= 8
            if case == 0 or case == 15:
                continue
            center = 1 if (v00 + v10 + v11 + v01) * 0.25 > level else 0
            local[0] = j * (nx - 1) + i
            local[1] = h + j * nx + i + 1
            local[2] = (j + 1) * (nx - 1) + i
            local[3] = h + j * nx + i
            for slot in range(2):
                a = table[center, case, slot, 0]
                if a < 0:
                    break
                out[count, 0] = local[a]
                out[count, 1] = local[table[center, case, slot, 1]]
                count += 1
    return out[:count].copy()


def march_segments(values, level):
    return _march_segments(
        np.ascontiguousarray(values, dtype=np.float64), float(level), np.asarray(SEGMENTS)
    )
