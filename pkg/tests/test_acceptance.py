"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

The lines are printed in the terminal summary under "acceptance criteria".
"""

import json
import math
import time
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from conftest import ACCEPTANCE_LINES
from gausslucas.cli import main
from gausslucas.electrostatics import (
    ChargeConfiguration,
    critical_points,
    field,
    field_via_log_derivative,
    gauss_lucas_report,
    potential,
)
from gausslucas.fieldmap import harmonicity_residual, sample_potential
from gausslucas.geometry import separating_direction, tolerance_scale
from gausslucas.marden import ellipse_area, steiner_inellipse, tangency_check, triangle_area, triangle_scale
from gausslucas.poly import RootSet, from_roots
from gausslucas.roots import SolverConfig, find_roots, residual_scale
from gausslucas.sampling import (
    quintic_with_double_critical_point,
    random_configuration,
    random_outside_point,
    random_points_away,
    random_roots,
)

SEED = 20240611
SVG = "{http://www.w3.org/2000/svg}"
GL = "{urn:gausslucas}"


def record(number: int, name: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def matched_error(got, want):
    cost = np.abs(np.asarray(got)[:, None] - np.asarray(want)[None, :])
    r, c = linear_sum_assignment(cost)
    return cost[r, c].max()


@pytest.fixture(scope="module")
def hull_suite():
    """10^4 configurations of degree 2..12, shared by criteria 1 and 5."""
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    rows = []
    for _ in range(10_000):
        cfg = random_configuration(rng, int(rng.integers(2, 13)))
        d = tolerance_scale(cfg.hull())
        rep = gauss_lucas_report(cfg, eps=1e-9 * d)
        centroid_gap = abs(rep.critical.expanded().mean() - cfg.charges.expanded().mean())
        rows.append((rep.contained, rep.worst_distance / d, centroid_gap / d))
    return rows, time.perf_counter() - start


def test_criterion_1_gauss_lucas_suite(hull_suite):
    rows, seconds = hull_suite
    failures = sum(not contained for contained, _, _ in rows)
    worst = max(w for _, w, _ in rows)
    ok = failures == 0 and seconds < 60
    record(1, "Gauss-Lucas containment", ok, f"{len(rows)} configs, {failures} failures, worst rel distance {worst:.2e}, {seconds:.1f}s")
    assert ok


def test_criterion_2_field_identity():
    rng = np.random.default_rng(SEED + 2)
    worst, failures, count = 0.0, 0, 0
    for _ in range(100):
        cfg = random_configuration(rng, int(rng.integers(2, 13)))
        for z in random_points_away(rng, cfg, 1000, clearance=0.05):
            a = field(cfg, z).as_complex()
            b = field_via_log_derivative(cfg, z).as_complex()
            rel = abs(a - b) / abs(b)
            worst = max(worst, rel)
            failures += not rel <= 1e-11
            count += 1
    ok = failures == 0
    record(2, "field identity", ok, f"{count} points, {failures} failures, worst relative {worst:.2e}")
    assert ok


def test_criterion_3_gradient_check():
    rng = np.random.default_rng(SEED + 3)
    worst_ratio, failures, count = 0.0, 0, 0
    while count < 1000:
        cfg = random_configuration(rng, int(rng.integers(2, 13)))
        h = 1e-6 * tolerance_scale(cfg.hull())
        tol = max(1e-6, 100 * h * h)
        for z in random_points_away(rng, cfg, 10):
            gx = (potential(cfg, z + h) - potential(cfg, z - h)) / (2 * h)
            gy = (potential(cfg, z + 1j * h) - potential(cfg, z - 1j * h)) / (2 * h)
            e = field(cfg, z)
            err = max(abs(e.ex + gx), abs(e.ey + gy))
            worst_ratio = max(worst_ratio, err / tol)
            failures += not err <= tol
            count += 1
    ok = failures == 0
    record(3, "gradient check", ok, f"{count} samples, {failures} failures, worst error/tol {worst_ratio:.2e}")
    assert ok


def test_criterion_4_root_solver_oracle():
    rng = np.random.default_rng(SEED + 4)
    cfg = SolverConfig()
    worst, bad_match, bad_residual, bad_count, trials = 0.0, 0, 0, 0, 10_000
    for _ in range(trials):
        n = int(rng.integers(2, 13))
        r = random_roots(rng, n)
        charges = ChargeConfiguration.from_points(r)
        p = from_roots(RootSet.from_points(r))
        rep = find_roots(p, cfg)
        err = matched_error(rep.roots.expanded(), r)
        worst = max(worst, err)
        bad_match += not err <= 1e-8
        bad_residual += not rep.max_residual <= cfg.tol * residual_scale(p)
        bad_count += critical_points(charges, cfg).total != n - 1
    ok = bad_match == bad_residual == bad_count == 0
    record(
        4,
        "root-solver oracle",
        ok,
        f"{trials} polynomials, worst matched error {worst:.2e}, "
        f"{bad_match} match / {bad_residual} residual / {bad_count} count failures",
    )
    assert ok


def test_criterion_5_centroid_preservation(hull_suite):
    rows, _ = hull_suite
    worst = max(g for _, _, g in rows)
    failures = sum(not g <= 1e-9 for _, _, g in rows)
    ok = failures == 0
    record(5, "centroid preservation", ok, f"{len(rows)} configs, {failures} failures, worst gap/diameter {worst:.2e}")
    assert ok


def test_criterion_6_witness_soundness():
    rng = np.random.default_rng(SEED + 6)
    failures, min_dot = 0, math.inf
    for _ in range(1000):
        cfg = random_configuration(rng, int(rng.integers(2, 13)))
        h = cfg.hull()
        z = random_outside_point(rng, h)
        w = separating_direction(h, z)
        proj = field(cfg, z).dot(w.direction)
        min_dot = min(min_dot, proj)
        failures += not (w.margin > 0 and proj > 0)
    ok = failures == 0
    record(6, "witness soundness", ok, f"1000 pairs, {failures} failures, smallest E.v {min_dot:.2e}")
    assert ok


def equilateral_ratio() -> float:
    """Incircle area over area for the triangle inscribed in the unit circle."""
    side = math.sqrt(3)
    area = math.sqrt(3) / 4 * side**2
    inradius = area / (3 * side / 2)
    return math.pi * inradius**2 / area


def test_criterion_7_marden_suite():
    rng = np.random.default_rng(SEED + 7)
    ratio = equilateral_ratio()
    worst_focus = worst_ratio = 0.0
    failures, n = 0, 0
    while n < 1000:
        a, b, c = (complex(v) for v in rng.uniform(-2, 2, 3) + 1j * rng.uniform(-2, 2, 3))
        scale = triangle_scale(a, b, c)
        if triangle_area(a, b, c) <= 1e-3 * scale * scale:
            continue
        n += 1
        e = steiner_inellipse(a, b, c)
        crit = critical_points(ChargeConfiguration.from_points([a, b, c])).expanded()
        focus_err = matched_error([e.focus1, e.focus2], crit) / scale
        tangent = all(tangency_check(e, p, q, 1e-8 * scale) for p, q in ((a, b), (b, c), (c, a)))
        rel = abs(ellipse_area(e) / triangle_area(a, b, c) - ratio) / ratio
        worst_focus, worst_ratio = max(worst_focus, focus_err), max(worst_ratio, rel)
        failures += not (focus_err <= 1e-9 and tangent and rel <= 1e-9)
    ok = failures == 0 and abs(ratio - math.pi / (3 * math.sqrt(3))) <= 1e-15
    record(
        7,
        "Marden suite",
        ok,
        f"{n} triangles, {failures} failures, worst focus/scale {worst_focus:.2e}, worst ratio rel {worst_ratio:.2e}",
    )
    assert ok


def test_criterion_8_harmonicity():
    cfg = ChargeConfiguration.from_points([0])
    box = (1.0, 1.0, 3.0, 3.0)
    coarse = harmonicity_residual(sample_potential(cfg, box, 256, 256))
    fine = harmonicity_residual(sample_potential(cfg, box, 512, 512))
    ratio = coarse / fine
    ok = fine <= 1e-4 and 3.5 <= ratio <= 4.5
    record(8, "harmonicity", ok, f"512^2 residual {fine:.2e}, 256->512 ratio {ratio:.2f}")
    assert ok


def test_criterion_9_figure(tmp_path, capsys):
    cfg = quintic_with_double_critical_point()
    roots = json.dumps(cfg.charges.to_json())
    paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
    codes = [main(["render", roots, "--out", str(p)]) for p in paths]
    capsys.readouterr()
    root = ET.parse(paths[0]).getroot()
    circles = list(root.iter(SVG + "circle"))
    red = [c for c in circles if c.get("fill") == "red"]
    blue = [c for c in circles if c.get("fill") == "blue"]
    blue_total = sum(int(c.get(GL + "multiplicity")) for c in blue)
    identical = paths[0].read_bytes() == paths[1].read_bytes()
    ok = codes == [0, 0] and len(red) == 5 and blue_total == 4 and identical
    record(
        9,
        "figure reproduction",
        ok,
        f"{len(red)} red, {len(blue)} blue marks totaling {blue_total}, well-formed XML, byte-identical={identical}",
    )
    assert ok
