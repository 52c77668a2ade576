"""Command-line interface: ``critical``, ``verify``, ``inellipse``, ``render``.

Exit codes: 0 success, 1 a verification check failed, 2 bad input (including a
degenerate triangle), 3 root iteration did not converge, 4 output not writable.
Set ``GLL_LOG`` to ``off``, ``info`` or ``debug`` for diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from .electrostatics import ChargeConfiguration, critical_report, gauss_lucas_report
from .errors import DegenerateTriangle, IoFailure, NonConvergence
from .fieldmap import DEFAULT_GRID, DEFAULT_LEVELS, build_scene, harmonicity_residual, render_svg
from .geometry import tolerance_scale
from .marden import steiner_inellipse, tangency_check, triangle_scale
from .poly import RootSet
from .roots import SolverConfig
from .sampling import random_configuration

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_NONCONVERGENCE, EXIT_IO = 0, 1, 2, 3, 4

log = logging.getLogger("gausslucas")


class InputError(Exception):
    pass


def _setup_logging() -> None:
    level = os.environ.get("GLL_LOG", "off").strip().lower()
    levels = {"info": logging.INFO, "debug": logging.DEBUG}
    if level in levels:
        logging.basicConfig(stream=sys.stderr, level=levels[level], format="%(levelname)s %(name)s: %(message)s")
    else:
        logging.getLogger("gausslucas").addHandler(logging.NullHandler())


def _read_json(source: str):
    """Inline JSON, ``-`` for stdin, or a file path."""
    try:
        if source == "-":
            text = sys.stdin.read()
        elif source.lstrip()[:1] in ("[", "{"):
            text = source
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {source!r}: {exc}") from exc


def _parse_roots(source: str) -> RootSet:
    data = _read_json(source)
    if isinstance(data, dict):
        # accept solver / critical output as input
        data = data.get("roots", data.get("critical"))
    try:
        roots = RootSet.from_json(data)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    if roots.total < 1:
        raise InputError("no roots given")
    return roots


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        nx, ny = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NxN, got {text!r}") from None
    if nx < 3 or ny < 3:
        raise argparse.ArgumentTypeError("grid needs at least 3x3 cells")
    return nx, ny


def _parse_bbox(text: str) -> tuple[float, float, float, float]:
    try:
        x0, y0, x1, y1 = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x0,y0,x1,y1, got {text!r}") from None
    if not (x1 > x0 and y1 > y0):
        raise argparse.ArgumentTypeError("bbox must have x1 > x0 and y1 > y0")
    return x0, y0, x1, y1


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _solver(args) -> SolverConfig:
    return SolverConfig(tol=args.tol)


def cmd_critical(args) -> int:
    cfg = ChargeConfiguration(_parse_roots(args.roots))
    if cfg.total_charge < 2:
        raise InputError("critical points need at least two roots counted with multiplicity")
    report = critical_report(cfg, _solver(args))
    _emit(report.to_json())
    return EXIT_OK


def _verify_one(cfg: ChargeConfiguration, args):
    scale = tolerance_scale(cfg.hull())
    return gauss_lucas_report(cfg, _solver(args), args.eps * scale)


def cmd_verify(args) -> int:
    if (args.roots is None) == (args.random is None):
        raise InputError("give either a roots argument or --random N (not both)")
    if args.roots is not None:
        cfg = ChargeConfiguration(_parse_roots(args.roots))
        if cfg.total_charge < 2:
            raise InputError("verification needs at least two roots counted with multiplicity")
        report = _verify_one(cfg, args)
        _emit(report.to_json())
        return EXIT_OK if report.contained else EXIT_CHECK_FAILED

    if args.degree < 2 or args.random < 1:
        raise InputError("--random needs N >= 1 and --degree >= 2")
    rng = np.random.default_rng(args.seed)
    failures, nonconverged = [], []
    worst = -np.inf
    for trial in range(args.random):
        cfg = random_configuration(rng, args.degree)
        try:
            report = _verify_one(cfg, args)
        except NonConvergence:
            nonconverged.append(trial)
            log.info("trial %d: no convergence", trial)
            continue
        worst = max(worst, report.worst_distance / tolerance_scale(report.hull))
        if not report.contained:
            failures.append(trial)
    _emit(
        {
            "trials": args.random,
            "degree": args.degree,
            "seed": args.seed,
            "failures": failures,
            "nonconverged": nonconverged,
            "worst_margin": None if worst == -np.inf else -float(worst),
            "contained": not failures,
        }
    )
    if nonconverged:
        return EXIT_NONCONVERGENCE
    return EXIT_OK if not failures else EXIT_CHECK_FAILED


def cmd_inellipse(args) -> int:
    data = _read_json(args.vertices)
    try:
        a, b, c = (complex(float(x), float(y)) for x, y in data)
    except (ValueError, TypeError) as exc:
        raise InputError("expected three vertices [[x, y], [x, y], [x, y]]") from exc
    e = steiner_inellipse(a, b, c)
    scale = triangle_scale(a, b, c)
    tol = args.tangency_tol * scale
    tangent = [tangency_check(e, p, q, tol) for p, q in ((a, b), (b, c), (c, a))]
    crit = critical_report(ChargeConfiguration.from_points([a, b, c]), _solver(args)).roots.expanded()
    foci = np.array([e.focus1, e.focus2])
    mismatch = min(
        max(abs(crit[0] - foci[0]), abs(crit[1] - foci[1])),
        max(abs(crit[0] - foci[1]), abs(crit[1] - foci[0])),
    )
    _emit(
        {
            "ellipse": e.to_json(),
            "center": [e.center.real, e.center.imag],
            "semi_minor": e.semi_minor,
            "tangency": tangent,
            "foci_vs_critical": float(mismatch),
        }
    )
    return EXIT_OK if all(tangent) else EXIT_CHECK_FAILED


def cmd_render(args) -> int:
    if (args.roots is None) == (args.degree is None):
        raise InputError("give either a roots argument or --degree D for random roots (not both)")
    if args.roots is not None:
        cfg = ChargeConfiguration(_parse_roots(args.roots))
    else:
        if args.degree < 1:
            raise InputError("--degree must be positive")
        cfg = random_configuration(np.random.default_rng(args.seed), args.degree)
    nx, ny = args.grid
    scene, grid = build_scene(cfg, args.bbox, nx, ny, args.levels, _solver(args))
    render_svg(scene, args.out)
    if args.grid_csv:
        try:
            with open(args.grid_csv, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(grid.to_csv())
        except OSError as exc:
            raise IoFailure(f"cannot write {args.grid_csv}: {exc}") from exc
    sys.stdout.write(f"harmonicity_residual {harmonicity_residual(grid):.6e}\n")
    _emit(
        {
            "out": args.out,
            "charges": scene.charge_marks.to_json(),
            "critical": scene.critical_marks.to_json(),
            "contours": len(scene.contours),
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gausslucas", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-12, help="solver residual target (default 1e-12)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("critical", parents=[common], help="critical points of the polynomial with these roots")
    p.add_argument("roots", help="roots JSON [[re, im, mult?], ...], inline, a file path, or - for stdin")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("verify", parents=[common], help="check critical points lie in the hull of the roots")
    p.add_argument("roots", nargs="?", help="roots JSON (omit when using --random)")
    p.add_argument("--eps", type=float, default=1e-9, help="hull inflation relative to its diameter")
    p.add_argument("--random", type=int, metavar="N", help="run N random configurations instead")
    p.add_argument("--degree", type=int, default=7, help="degree of random configurations")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("inellipse", parents=[common], help="Steiner inellipse of a triangle")
    p.add_argument("vertices", help="JSON [[x, y], [x, y], [x, y]]")
    p.add_argument("--tangency-tol", type=float, default=1e-8, help="relative to the longest side")
    p.set_defaults(func=cmd_inellipse)

    p = sub.add_parser("render", parents=[common], help="SVG map of potential level curves")
    p.add_argument("roots", nargs="?", help="roots JSON (omit when using --degree)")
    p.add_argument("--degree", type=int, help="render this many random roots instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="gauss_lucas.svg")
    p.add_argument("--grid", type=_parse_grid, default=(DEFAULT_GRID, DEFAULT_GRID), metavar="NxN")
    p.add_argument("--levels", type=int, default=DEFAULT_LEVELS)
    p.add_argument("--bbox", type=_parse_bbox, metavar="x0,y0,x1,y1")
    p.add_argument("--grid-csv", metavar="PATH", help="also write the sampled grid as x,y,value CSV")
    p.set_defaults(func=cmd_render)
    return parser


def _join_bbox(argv: list[str]) -> list[str]:
    # "--bbox -1,-1,1,1" would otherwise read the value as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--bbox" and i + 1 < len(argv):
            out.append(f"--bbox={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    _setup_logging()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_bbox(argv))
    try:
        return args.func(args)
    except (InputError, DegenerateTriangle, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except NonConvergence as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NONCONVERGENCE
    except (IoFailure, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO
