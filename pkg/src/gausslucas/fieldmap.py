"""Sampled potential maps, level curves, and SVG figures of charges and critical points."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import kernels
from .electrostatics import ChargeConfiguration, critical_points
from .errors import IoFailure, TooFewSamples
from .poly import RootSet
from .roots import SolverConfig

Bbox = tuple[float, float, float, float]

DEFAULT_GRID = 512
DEFAULT_LEVELS = 24
DEFAULT_INFLATE = 0.4
SVG_WIDTH_PX = 800
MARK_RADIUS_REL = 0.008


@dataclass(frozen=True, eq=False)
class Grid:
    """Potential samples at cell centers; ``values[j, i]`` is row ``j`` (y), column ``i`` (x).

    Masked cells hold NaN.
    """

    x0: float
    y0: float
    x1: float
    y1: float
    nx: int
    ny: int
    values: np.ndarray
    charges: tuple[complex, ...] = ()

    def __post_init__(self):
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("grid bounding box is degenerate")
        if self.values.shape != (self.ny, self.nx):
            raise ValueError(f"values shape {self.values.shape} != ({self.ny}, {self.nx})")
        self.values.setflags(write=False)

    @property
    def bbox(self) -> Bbox:
        return (self.x0, self.y0, self.x1, self.y1)

    @property
    def dx(self) -> float:
        return (self.x1 - self.x0) / self.nx

    @property
    def dy(self) -> float:
        return (self.y1 - self.y0) / self.ny

    @property
    def xs(self) -> np.ndarray:
        return cell_centers(self.x0, self.x1, self.nx)

    @property
    def ys(self) -> np.ndarray:
        return cell_centers(self.y0, self.y1, self.ny)

    @property
    def mask(self) -> np.ndarray:
        return ~np.isfinite(self.values)

    def to_csv(self) -> str:
        """``x,y,value`` rows for unmasked cells, y outer."""
        out = io.StringIO()
        out.write("x,y,value\n")
        xs, ys = self.xs, self.ys
        for j in range(self.ny):
            for i in range(self.nx):
                v = self.values[j, i]
                if np.isfinite(v):
                    out.write(f"{float(xs[i])!r},{float(ys[j])!r},{float(v)!r}\n")
        return out.getvalue()


def cell_centers(lo: float, hi: float, n: int) -> np.ndarray:
    # (lo + hi)/2 + offset keeps symmetric boxes exactly symmetric
    k = np.arange(n)
    return (lo + hi) / 2 + (hi - lo) * ((k + 0.5) / n - 0.5)


def default_bbox(cfg: ChargeConfiguration, inflate: float = DEFAULT_INFLATE) -> Bbox:
    """Bounding box of the charges, widened by ``inflate`` of its size on each side."""
    locs = cfg.locations
    x0, x1 = float(locs.real.min()), float(locs.real.max())
    y0, y1 = float(locs.imag.min()), float(locs.imag.max())
    size = max(x1 - x0, y1 - y0)
    if size == 0:
        size = 1.0
    w = max(x1 - x0, 0.25 * size)
    h = max(y1 - y0, 0.25 * size)
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    return (
        cx - w / 2 - inflate * w,
        cy - h / 2 - inflate * h,
        cx + w / 2 + inflate * w,
        cy + h / 2 + inflate * h,
    )


def sample_potential(cfg: ChargeConfiguration, bbox: Bbox, nx: int, ny: int) -> Grid:
    """Potential at every cell center; cells within half a cell diagonal of a charge are masked."""
    x0, y0, x1, y1 = map(float, bbox)
    if nx < 2 or ny < 2:
        raise ValueError("grid needs at least 2 cells per axis")
    if not (x1 > x0 and y1 > y0):
        raise ValueError("bounding box is degenerate")
    xs = cell_centers(x0, x1, nx)
    ys = cell_centers(y0, y1, ny)
    radius = 0.5 * math.hypot((x1 - x0) / nx, (y1 - y0) / ny)
    values = kernels.get_backend().potential_grid(xs, ys, cfg.locations, cfg.multiplicities, radius)
    return Grid(x0, y0, x1, y1, nx, ny, np.asarray(values), tuple(complex(a) for a in cfg.locations))


def auto_levels(g: Grid, n: int) -> list[float]:
    """``n`` levels at the quantiles k/(n+1) of the unmasked samples."""
    if n < 1:
        raise ValueError("need at least one level")
    vals = g.values[np.isfinite(g.values)]
    if vals.size < n:
        raise TooFewSamples(f"{vals.size} unmasked samples for {n} levels")
    levels = np.quantile(vals, np.arange(1, n + 1) / (n + 1))
    if np.any(np.diff(levels) <= 0):
        raise TooFewSamples("sample distribution too concentrated for strictly increasing levels")
    return [float(v) for v in levels]


def _edge_points(ids: np.ndarray, g: Grid, level: float) -> np.ndarray:
    """Linear-interpolated crossing on each edge id, as complex points."""
    nx, ny = g.nx, g.ny
    xs, ys, v = g.xs, g.ys, g.values
    h = ny * (nx - 1)
    out = np.empty(ids.shape, dtype=np.complex128)
    horiz = ids < h
    j, i = np.divmod(ids[horiz], nx - 1)
    t = (level - v[j, i]) / (v[j, i + 1] - v[j, i])
    out[horiz] = (xs[i] + t * (xs[i + 1] - xs[i])) + 1j * ys[j]
    j, i = np.divmod(ids[~horiz] - h, nx)
    t = (level - v[j, i]) / (v[j + 1, i] - v[j, i])
    out[~horiz] = xs[i] + 1j * (ys[j] + t * (ys[j + 1] - ys[j]))
    return out


def _stitch(segs: np.ndarray) -> list[list[int]]:
    """Chain segments sharing edge ids; closed chains repeat their first id."""
    pairs = segs.tolist()
    touching: dict[int, list[int]] = {}
    for k, (a, b) in enumerate(pairs):
        touching.setdefault(a, []).append(k)
        touching.setdefault(b, []).append(k)
    used = np.zeros(len(segs), dtype=bool)

    def walk(k, start):
        chain = [start]
        edge = start
        while True:
            used[k] = True
            a, b = pairs[k]
            edge = b if a == edge else a
            chain.append(edge)
            nxt = [s for s in touching[edge] if not used[s]]
            if not nxt:
                return chain
            k = nxt[0]

    chains = []
    for k in range(len(segs)):
        if used[k]:
            continue
        for end in pairs[k]:
            if len(touching[end]) == 1:
                chains.append(walk(k, end))
                break
    for k in range(len(segs)):
        if not used[k]:
            chains.append(walk(k, pairs[k][0]))
    return chains


def contour_lines(g: Grid, levels: Sequence[float]) -> list[np.ndarray]:
    """Marching-squares polylines (complex arrays); closed ones end where they start."""
    levels = list(levels)
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError("levels must be strictly increasing")
    march = kernels.get_backend().march_segments
    lines = []
    for level in levels:
        segs = march(g.values, level)
        if len(segs) == 0:
            continue
        for chain in _stitch(segs):
            lines.append(_edge_points(np.asarray(chain, dtype=np.int64), g, level))
    return lines


def harmonicity_residual(g: Grid, min_cells: float = 3.0) -> float:
    """Largest |5-point Laplacian| over interior cells clear of charges and masks.

    Cells need an unmasked 4-neighborhood and must sit at least ``min_cells``
    cells from every charge. NaN when no cell qualifies.
    """
    if g.nx < 3 or g.ny < 3:
        raise ValueError("harmonicity needs at least 3 cells per axis")
    v = g.values
    c = v[1:-1, 1:-1]
    lap = (v[1:-1, 2:] + v[1:-1, :-2] - 2 * c) / g.dx**2 + (v[2:, 1:-1] + v[:-2, 1:-1] - 2 * c) / g.dy**2
    ok = np.isfinite(lap)
    if g.charges:
        zz = g.xs[None, 1:-1] + 1j * g.ys[1:-1, None]
        clear = min_cells * max(g.dx, g.dy)
        for a in g.charges:
            ok &= np.abs(zz - a) >= clear
    if not ok.any():
        return math.nan
    return float(np.max(np.abs(lap[ok])))


@dataclass(frozen=True, eq=False)
class Scene:
    contours: tuple[np.ndarray, ...]
    charge_marks: RootSet
    critical_marks: RootSet
    bbox: Bbox
    levels: tuple[float, ...] = dc_field(default=())


def _in_bbox(z: complex, bbox: Bbox) -> bool:
    x0, y0, x1, y1 = bbox
    return x0 <= z.real <= x1 and y0 <= z.imag <= y1


def build_scene(
    cfg: ChargeConfiguration,
    bbox: Bbox | None = None,
    nx: int = DEFAULT_GRID,
    ny: int = DEFAULT_GRID,
    n_levels: int = DEFAULT_LEVELS,
    solver: SolverConfig | None = None,
) -> tuple[Scene, Grid]:
    """Everything a figure needs: potential contours, charges, critical points."""
    bbox = tuple(map(float, bbox)) if bbox is not None else default_bbox(cfg)
    grid = sample_potential(cfg, bbox, nx, ny)
    levels = auto_levels(grid, n_levels)
    lines = contour_lines(grid, levels)
    crit = critical_points(cfg, solver) if cfg.total_charge >= 2 else RootSet()
    scene = Scene(
        contours=tuple(lines),
        charge_marks=RootSet(tuple(e for e in cfg.charges if _in_bbox(e[0], bbox))),
        critical_marks=RootSet(tuple(e for e in crit if _in_bbox(e[0], bbox))),
        bbox=bbox,
        levels=tuple(levels),
    )
    return scene, grid


def _num(v: float, zero: float = 0.0) -> str:
    # ``zero`` flushes rounding noise (e.g. 1e-17 for an on-axis point) so output is stable
    if abs(v) <= zero:
        return "0"
    s = f"{v:.7g}"
    return "0" if s == "-0" else s


def _path_data(line: np.ndarray, zero: float) -> str:
    closed = len(line) > 2 and line[0] == line[-1]
    pts = line[:-1] if closed else line
    parts = [f"{_num(p.real, zero)} {_num(-p.imag, zero)}" for p in pts]
    return "M" + " L".join(parts) + (" Z" if closed else "")


def svg_text(scene: Scene) -> str:
    """Standalone SVG 1.1; world y is flipped to screen y by negating it."""
    x0, y0, x1, y1 = scene.bbox
    w, h = x1 - x0, y1 - y0
    px_w = SVG_WIDTH_PX
    px_h = max(1, round(SVG_WIDTH_PX * h / w))
    stroke = w / px_w
    r = MARK_RADIUS_REL * w
    zero = 1e-9 * max(w, h)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" xmlns:gl="urn:gausslucas" version="1.1" '
        f'width="{px_w}" height="{px_h}" viewBox="{_num(x0)} {_num(-y1)} {_num(w)} {_num(h)}">',
        f'<rect x="{_num(x0)}" y="{_num(-y1)}" width="{_num(w)}" height="{_num(h)}" fill="white"/>',
    ]
    if scene.contours:
        out.append(f'<g id="contours" fill="none" stroke="black" stroke-width="{_num(stroke)}">')
        out.extend(f'<path d="{_path_data(line, zero)}"/>' for line in scene.contours if len(line) > 1)
        out.append("</g>")
    for group, color, marks in (
        ("charges", "red", scene.charge_marks),
        ("critical", "blue", scene.critical_marks),
    ):
        if len(marks) == 0:
            continue
        out.append(f'<g id="{group}" fill="{color}" stroke="none">')
        out.extend(
            f'<circle cx="{_num(z.real, zero)}" cy="{_num(-z.imag, zero)}" r="{_num(r)}" fill="{color}" gl:multiplicity="{m}"/>'
            for z, m in marks
        )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(scene: Scene, path: str) -> None:
    text = svg_text(scene)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
