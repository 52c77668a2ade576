import os
import subprocess
import sys

import numpy as np
import pytest

from gausslucas import kernels
from gausslucas.kernels import _numpy
from gausslucas.poly import RootSet, from_roots
from gausslucas.roots import cauchy_bound, initial_guesses
from gausslucas.sampling import random_roots

needs_numba = pytest.mark.skipif("numba" not in kernels.BACKENDS, reason="numba not installed")


def both():
    return kernels.BACKENDS["numpy"], kernels.BACKENDS["numba"]


def brute_segments(values, level):
    """Segments implied by sign flips around each complete cell (2 flips per segment)."""
    above = values > level
    fin = np.isfinite(values)
    ok = fin[:-1, :-1] & fin[1:, :-1] & fin[:-1, 1:] & fin[1:, 1:]
    flips = (
        (above[:-1, :-1] != above[:-1, 1:]).astype(int)
        + (above[:-1, 1:] != above[1:, 1:])
        + (above[1:, 1:] != above[1:, :-1])
        + (above[1:, :-1] != above[:-1, :-1])
    )
    return int(np.sum((flips // 2)[ok]))


class TestSelection:
    def test_unknown_backend(self):
        with pytest.raises(ValueError):
            kernels.set_backend("fortran")

    def test_env_flag_forces_numpy(self):
        env = dict(os.environ, GLL_DISABLE_NUMBA="1")
        out = subprocess.run(
            [sys.executable, "-c", "from gausslucas import kernels; print(kernels.backend_name())"],
            env=env, capture_output=True, text=True, check=True,
        )
        assert out.stdout.strip() == "numpy"

    @needs_numba
    def test_default_is_numba(self):
        env = {k: v for k, v in os.environ.items() if k != "GLL_DISABLE_NUMBA"}
        out = subprocess.run(
            [sys.executable, "-c", "from gausslucas import kernels; print(kernels.backend_name())"],
            env=env, capture_output=True, text=True, check=True,
        )
        assert out.stdout.strip() == "numba"


class TestMarchSegments:
    def test_single_cell_cases(self, backend):
        march = kernels.get_backend().march_segments
        for case in range(16):
            v = np.array([[case & 1, (case >> 1) & 1], [(case >> 3) & 1, (case >> 2) & 1]], dtype=float)
            segs = march(v, 0.5)
            want = 0 if case in (0, 15) else (2 if case in (5, 10) else 1)
            assert len(segs) == want

    def test_saddle_follows_center(self, backend):
        march = kernels.get_backend().march_segments
        # 2x2 grid edge ids: bottom 0, top 1, left 2, right 3; BL and TR corners high
        v = np.array([[1.0, 0.0], [0.0, 1.0]])
        pairs = lambda level: {frozenset(s) for s in march(v, level).tolist()}
        # center mean 0.5 above the level: high corners stay joined, low corners are cut off
        assert pairs(0.45) == {frozenset((0, 3)), frozenset((1, 2))}
        # center below the level: high corners are cut off instead
        assert pairs(0.55) == {frozenset((0, 2)), frozenset((1, 3))}

    def test_nan_cells_skipped(self, backend):
        march = kernels.get_backend().march_segments
        v = np.array([[0.0, 1.0, 0.0], [np.nan, 1.0, 0.0], [0.0, 1.0, 0.0]])
        assert len(march(v, 0.5)) == 2

    def test_count_matches_brute_force(self, backend, rng):
        march = kernels.get_backend().march_segments
        for _ in range(20):
            v = rng.normal(size=(15, 18))
            v[rng.random(v.shape) < 0.05] = np.nan
            assert len(march(v, 0.1)) == brute_segments(v, 0.1)


@needs_numba
class TestBackendsAgree:
    def test_potential_grid(self, rng):
        a, b = both()
        xs, ys = np.linspace(-1, 1, 67), np.linspace(-1, 1, 41)
        locs = rng.normal(size=5) + 1j * rng.normal(size=5)
        mults = np.array([1, 2, 1, 1, 3], dtype=np.int64)
        va = a.potential_grid(xs, ys, locs, mults, 0.03)
        vb = b.potential_grid(xs, ys, locs, mults, 0.03)
        assert np.array_equal(np.isnan(va), np.isnan(vb))
        assert np.nanmax(np.abs(va - vb)) <= 1e-14

    def test_field_points(self, rng):
        a, b = both()
        zs = 3 * (rng.normal(size=200) + 1j * rng.normal(size=200))
        locs = rng.normal(size=7) + 1j * rng.normal(size=7)
        mults = np.ones(7, dtype=np.int64)
        assert np.allclose(a.field_points(zs, locs, mults), b.field_points(zs, locs, mults), rtol=1e-13, atol=0)

    def test_march_segments_identical(self, rng):
        a, b = both()
        for _ in range(10):
            v = rng.normal(size=(30, 25))
            v[rng.random(v.shape) < 0.03] = np.nan
            assert np.array_equal(a.march_segments(v, 0.0), b.march_segments(v, 0.0))

    def test_aberth(self, rng):
        a, b = both()
        for _ in range(30):
            n = int(rng.integers(2, 13))
            p = from_roots(RootSet.from_points(random_roots(rng, n)))
            c = p.as_array()
            z0 = initial_guesses(n, cauchy_bound(p))
            za, _, da = a.aberth(c, z0, 200, 1e-14 * cauchy_bound(p))
            zb, _, db = b.aberth(c, z0, 200, 1e-14 * cauchy_bound(p))
            assert da.all() and db.all()
            cost = np.abs(np.sort_complex(za) - np.sort_complex(zb))
            assert cost.max() <= 1e-9


def test_numpy_module_is_reference():
    assert kernels.BACKENDS["numpy"] is _numpy
