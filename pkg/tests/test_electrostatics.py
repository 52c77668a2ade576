import cmath
import math

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from gausslucas.electrostatics import (
    ChargeConfiguration,
    critical_points,
    field,
    field_magnitude_scale,
    field_many,
    field_via_log_derivative,
    gauss_lucas_report,
    potential,
)
from gausslucas.errors import PoleAtChargeLocation
from gausslucas.geometry import tolerance_scale
from gausslucas.sampling import random_configuration, random_points_away

TWO_PI = 2 * math.pi


def charges(*points, mults=None):
    return ChargeConfiguration.from_points(points, mults)


def sorted_entries(rs):
    return sorted(rs.entries, key=lambda e: (e[0].real, e[0].imag))


def quadratic_roots(a, b, c):
    d = cmath.sqrt(b * b - 4 * a * c)
    return [(-b + d) / (2 * a), (-b - d) / (2 * a)]


class TestPotential:
    def test_unit_distance(self):
        assert potential(charges(0), 1) == 0

    def test_e(self):
        assert potential(charges(0), math.e) == pytest.approx(-1 / TWO_PI, rel=1e-15)

    def test_symmetric_pair(self):
        assert potential(charges(1, -1), 0) == 0

    def test_pole(self):
        with pytest.raises(PoleAtChargeLocation):
            potential(charges(0, 1), 1)

    def test_multiplicity_scales(self):
        assert potential(charges(0, mults=[3]), 2) == pytest.approx(3 * potential(charges(0), 2), rel=1e-15)


class TestField:
    def test_radial(self):
        e = field(charges(0), 1)
        assert (e.ex, e.ey) == pytest.approx((1 / TWO_PI, 0), abs=1e-17)

    def test_cancel(self):
        e = field(charges(1, -1), 0)
        assert (e.ex, e.ey) == (0, 0)

    def test_vertical(self):
        e = field(charges(0), 2j)
        assert (e.ex, e.ey) == pytest.approx((0, 1 / (4 * math.pi)), abs=1e-17)

    def test_pole(self):
        with pytest.raises(PoleAtChargeLocation):
            field(charges(0), 0)
        with pytest.raises(PoleAtChargeLocation):
            field_via_log_derivative(charges(0), 0)

    def test_log_derivative_route(self):
        e = field_via_log_derivative(charges(0), 1)
        assert (e.ex, e.ey) == pytest.approx((1 / TWO_PI, 0), abs=1e-17)
        e = field_via_log_derivative(charges(1, -1), 2)
        assert (e.ex, e.ey) == pytest.approx(((1 + 1 / 3) / TWO_PI, 0), abs=1e-16)

    def test_routes_agree(self, rng):
        for _ in range(20):
            cfg = random_configuration(rng, int(rng.integers(2, 13)))
            for z in random_points_away(rng, cfg, 200):
                a, b = field(cfg, z), field_via_log_derivative(cfg, z)
                norm = np.sum(cfg.multiplicities / np.abs(z - cfg.locations)) / TWO_PI
                assert abs(a.as_complex() - b.as_complex()) <= 1e-11 * norm

    def test_gradient_of_potential(self, rng):
        for _ in range(10):
            cfg = random_configuration(rng, int(rng.integers(2, 13)))
            h = 1e-6 * tolerance_scale(cfg.hull())
            for z in random_points_away(rng, cfg, 50):
                gx = (potential(cfg, z + h) - potential(cfg, z - h)) / (2 * h)
                gy = (potential(cfg, z + 1j * h) - potential(cfg, z - 1j * h)) / (2 * h)
                e = field(cfg, z)
                tol = max(1e-6, 100 * h * h)
                assert abs(e.ex + gx) <= tol and abs(e.ey + gy) <= tol

    def test_field_many_matches_scalar(self, backend, rng):
        cfg = random_configuration(rng, 6)
        zs = random_points_away(rng, cfg, 100)
        many = field_many(cfg, zs)
        one = np.array([field(cfg, z).as_complex() for z in zs])
        assert np.allclose(many, one, rtol=1e-14, atol=0)


class TestCriticalPoints:
    def test_pair(self):
        cp = critical_points(charges(1, -1))
        assert cp.multiplicities.tolist() == [1] and abs(cp.locations[0]) == 0

    def test_cube_roots_of_unity(self):
        cp = critical_points(charges(*np.exp(2j * np.pi * np.arange(3) / 3)))
        assert cp.multiplicities.tolist() == [2]
        assert abs(cp.locations[0]) <= 1e-12

    def test_triangle_quadratic_oracle(self):
        cp = critical_points(charges(0, 1, 1j))
        want = np.array(quadratic_roots(3, -2 * (1 + 1j), 1j))
        cost = np.abs(cp.locations[:, None] - want[None, :])
        r, c = linear_sum_assignment(cost)
        assert cost[r, c].max() <= 1e-12

    def test_repeated_root(self):
        # P = z (z - 1)^2, P' = (z - 1)(3z - 1)
        cp = critical_points(charges(0, 1, mults=[1, 2]))
        (z1, m1), (z2, m2) = sorted_entries(cp)
        assert (m1, m2) == (1, 1)
        assert z1 == pytest.approx(1 / 3, abs=1e-14)
        assert z2 == pytest.approx(1, abs=1e-14)

    def test_count(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 13))
            assert critical_points(random_configuration(rng, n)).total == n - 1

    def test_needs_two_charges(self):
        with pytest.raises(ValueError):
            critical_points(charges(0))


class TestReport:
    def test_pair(self):
        rep = gauss_lucas_report(charges(1, -1))
        assert rep.contained and not rep.witnesses
        assert rep.max_field_at_critical == 0

    def test_triangle(self):
        cfg = charges(0, 1, 1j)
        rep = gauss_lucas_report(cfg)
        assert rep.contained
        assert rep.critical.total == 2
        assert rep.max_field_at_critical <= 1e-8 * field_magnitude_scale(cfg)
        # by hand: each critical point on the inner side of x=0, y=0 and x+y=1
        for z, _ in rep.critical:
            assert z.real > 0 and z.imag > 0 and z.real + z.imag < 1

    def test_repeated_root_obviously_inside(self):
        rep = gauss_lucas_report(charges(0, 1, mults=[1, 2]))
        assert rep.contained
        (z1, _), (z2, _) = sorted_entries(rep.critical)
        assert z1 == pytest.approx(1 / 3, abs=1e-14) and z2 == pytest.approx(1, abs=1e-14)
        assert rep.at_charge == (False, True)

    def test_json_shape(self):
        data = gauss_lucas_report(charges(0, 1, 1j)).to_json()
        assert {"critical", "hull", "contained", "max_field_at_critical", "witnesses"} <= set(data)
        assert data["hull"] == [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]

    def test_collinear(self):
        rep = gauss_lucas_report(charges(0, 1, 2))
        assert rep.contained
        got = sorted(z.real for z, _ in rep.critical)
        assert got == pytest.approx([1 - 1 / math.sqrt(3), 1 + 1 / math.sqrt(3)], abs=1e-14)

    def test_centroid_preserved(self, rng):
        for _ in range(200):
            cfg = random_configuration(rng, int(rng.integers(2, 13)))
            rep = gauss_lucas_report(cfg)
            d = tolerance_scale(rep.hull)
            assert abs(rep.critical.expanded().mean() - cfg.charges.expanded().mean()) <= 1e-9 * d
            assert rep.max_field_at_critical <= 1e-8 * field_magnitude_scale(cfg)

    def test_eps_zero_still_reports(self):
        rep = gauss_lucas_report(charges(1, -1), eps=0.0)
        assert rep.contained and rep.eps == 0.0
