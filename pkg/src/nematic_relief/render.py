"""Deterministic scene building and SVG/CSV export."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from skimage import measure

from .errors import CoverageError, DomainError
from .fields import FieldSampler
from .roots import map_chunks

LAYER_ORDER = ("regions", "contours", "characteristics", "streamlines", "glyphs", "boundary")
DEFAULT_STYLES = {
    "regions": {"fill": "#dddddd", "stroke": "none", "fill-opacity": "0.6"},
    "contours": {"fill": "none", "stroke": "#1f4fbf", "stroke-width": "1"},
    "characteristics": {"fill": "none", "stroke": "#222222", "stroke-width": "0.6"},
    "streamlines": {"fill": "none", "stroke": "#1a9641", "stroke-width": "1"},
    "glyphs": {"fill": "none", "stroke": "#d7191c", "stroke-width": "1.2"},
    "boundary": {"fill": "none", "stroke": "#000000", "stroke-width": "1.5"},
}
CSV_HEADER = ("x", "y", "phi", "S", "T", "b1", "b2", "q", "f")
GLYPH_FRACTION = 0.06
SVG_WIDTH = 800.0


@dataclass
class Scene:
    """Polylines grouped by layer role over a viewport ``(xmin, xmax, ymin, ymax)``.

    Region polygons are closed implicitly; every other layer holds open polylines.
    """

    viewport: tuple[float, float, float, float]
    layers: dict[str, list[np.ndarray]] = field(default_factory=lambda: {k: [] for k in LAYER_ORDER})
    styles: dict[str, dict[str, str]] = field(default_factory=lambda: {k: dict(v) for k, v in DEFAULT_STYLES.items()})
    title: str = ""

    def __post_init__(self):
        xmin, xmax, ymin, ymax = (float(v) for v in self.viewport)
        if not all(math.isfinite(v) for v in (xmin, xmax, ymin, ymax)):
            raise ValueError("viewport must be finite")
        if not (xmax > xmin and ymax > ymin):
            raise ValueError("viewport is degenerate")
        self.viewport = (xmin, xmax, ymin, ymax)
        for k in LAYER_ORDER:
            self.layers.setdefault(k, [])

    @property
    def diagonal(self) -> float:
        xmin, xmax, ymin, ymax = self.viewport
        return math.hypot(xmax - xmin, ymax - ymin)

    def add(self, role: str, polyline) -> None:
        """Append a polyline; non-finite vertices split it into pieces."""
        if role not in self.layers:
            raise KeyError(f"unknown layer {role!r}")
        pts = np.asarray(polyline, dtype=float).reshape(-1, 2)
        good = np.all(np.isfinite(pts), axis=1)
        # break at NaN gaps so only finite runs are kept
        idx = np.flatnonzero(np.diff(np.concatenate([[0], good.astype(int), [0]])))
        for a, b in zip(idx[::2], idx[1::2]):
            if b - a >= (1 if role == "glyphs" else 2):
                self.layers[role].append(pts[a:b].copy())

    def add_glyphs(self, points, angles) -> None:
        """Short director segments centred at ``points``."""
        half = 0.5 * GLYPH_FRACTION * self.diagonal
        for (x, y), phi in zip(np.asarray(points, float).reshape(-1, 2), np.asarray(angles, float).ravel()):
            if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(phi)):
                continue
            d = half * np.array([math.cos(phi), math.sin(phi)])
            self.layers["glyphs"].append(np.array([[x, y] - d, [x, y] + d]))


def _director2(field: FieldSampler, p) -> np.ndarray | None:
    try:
        n = field(p)
    except (DomainError, LookupError, ValueError):
        return None
    return n[:2]


def _trace_one_way(field: FieldSampler, seed, direction, step: float, length: float) -> list[np.ndarray]:
    pts = [np.asarray(seed, float)]
    ref = direction
    done = 0.0
    while done < length - 1e-12:
        h = min(step, length - done)
        p = pts[-1]
        ks = []
        for off in (0.0, 0.5, 0.5, 1.0):
            q = p + off * h * (ks[-1] if ks else 0.0)
            v = _director2(field, q)
            if v is None:
                return pts
            if v @ ref < 0.0:
                v = -v
            ks.append(v)
        k1, k2, k3, k4 = ks
        nxt = p + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0
        if not field.inside(nxt) or _director2(field, nxt) is None:
            return pts
        ref = (nxt - p) / max(np.linalg.norm(nxt - p), 1e-300)
        pts.append(nxt)
        done += h
    return pts


def integrate_streamline(field: FieldSampler, seed, step: float, max_len: float) -> np.ndarray:
    """Field line through ``seed`` traced by fixed-step RK4 in both senses.

    Each sense covers ``max_len / 2`` unless the domain ends first. Stage
    directions are flipped to agree with the previous step, so the head-tail
    symmetry of the director never reverses the path.

    Raises:
        DomainError: ``seed`` is outside the domain.
        ValueError: ``step`` or ``max_len`` is not positive.
    """
    if not step > 0.0 or not max_len > 0.0:
        raise ValueError("step and max_len must be positive")
    seed = np.asarray(seed, dtype=float)[:2]
    n0 = _director2(field, seed)
    if n0 is None:
        raise DomainError(f"seed {seed.tolist()} is outside the field domain")
    fwd = _trace_one_way(field, seed, n0, step, 0.5 * max_len)
    bwd = _trace_one_way(field, seed, -n0, step, 0.5 * max_len)
    return np.array(bwd[::-1] + fwd[1:])


def contour_f(
    f_sampler: Callable,
    window,
    grid=(200, 200),
    levels: Sequence[float] = (0.0,),
    vectorized: bool = True,
) -> dict[float, list[np.ndarray]]:
    """Level-set polylines of a scalar map by marching squares.

    Args:
        f_sampler: ``f(xs, ys)`` on arrays when ``vectorized``, otherwise
            ``f(point)`` on one point. NaN marks points outside the domain.
        window: ``(xmin, xmax, ymin, ymax)``.
        grid: ``(nx, ny)`` vertex counts, each at least 2.
        levels: level values.

    Returns:
        Mapping from level to polylines of ``(x, y)`` vertices, in a fixed order.
    """
    nx, ny = (grid, grid) if np.isscalar(grid) else grid
    nx, ny = int(nx), int(ny)
    if nx < 2 or ny < 2:
        raise ValueError("grid must be at least 2 x 2")
    xmin, xmax, ymin, ymax = (float(v) for v in window)
    xs = np.linspace(xmin, xmax, nx)
    ys = np.linspace(ymin, ymax, ny)
    X, Y = np.meshgrid(xs, ys)
    if vectorized:
        Z = np.asarray(f_sampler(X, Y), dtype=float).reshape(X.shape)
    else:
        Z = np.array([[float(f_sampler(np.array([x, y]))) for x in xs] for y in ys])
    finite = np.isfinite(Z)
    Zc = np.where(finite, Z, 0.0)
    out: dict[float, list[np.ndarray]] = {}
    for lev in levels:
        lines = measure.find_contours(Zc, float(lev), mask=finite if not finite.all() else None)
        polys = []
        for c in lines:
            # skimage returns (row, col) = (y index, x index)
            px = np.interp(c[:, 1], np.arange(nx), xs)
            py = np.interp(c[:, 0], np.arange(ny), ys)
            polys.append(np.column_stack([px, py]))
        polys.sort(key=lambda p: (round(float(p[0, 0]), 12), round(float(p[0, 1]), 12), len(p)))
        out[float(lev)] = polys
    return out


def planar_characteristics(phi, phi_x, phi_y):
    """Vectorized ``(S, T, b1, b2, q)`` of a planar field in the splay-sign frame."""
    c, s = np.cos(phi), np.sin(phi)
    S = phi_y * c - phi_x * s
    curl_z = phi_x * c + phi_y * s
    pos = S >= 0.0
    b1 = np.where(pos, -curl_z, 0.0) + 0.0
    b2 = np.where(pos, 0.0, curl_z) + 0.0
    return S, np.zeros_like(S), b1, b2, 0.5 * np.abs(S)


def sample_grid(solver, window, grid=(50, 50)) -> np.ndarray:
    """Rows ``x, y, phi, S, T, b1, b2, q, f`` of a field solver on a regular grid.

    ``solver`` needs an ``angle_gradient(xs, ys)`` method; points outside the
    domain are kept with NaN entries.
    """
    nx, ny = (grid, grid) if np.isscalar(grid) else grid
    xmin, xmax, ymin, ymax = window
    X, Y = np.meshgrid(np.linspace(xmin, xmax, int(nx)), np.linspace(ymin, ymax, int(ny)))
    x, y = X.ravel(), Y.ravel()
    phi, px, py, _ = solver.angle_gradient(x, y)
    S, T, b1, b2, q = planar_characteristics(phi, px, py)
    return np.column_stack([x, y, phi, S, T, b1, b2, q, 0.5 * S])


def emit_csv(samples, path) -> None:
    """Write rows in the nine-column layout with ``%.12g`` numbers and LF endings."""
    arr = np.asarray(samples, dtype=float).reshape(-1, len(CSV_HEADER))
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for row in arr:
        buf.write(",".join("%.12g" % v for v in row) + "\n")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(buf.getvalue())


def read_csv(path) -> np.ndarray:
    """Parse a file written by :func:`emit_csv`."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        if tuple(header) != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        rows = [[float(v) for v in line.split(",")] for line in fh if line.strip()]
    return np.array(rows, dtype=float).reshape(-1, len(CSV_HEADER))


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def emit_svg(scene: Scene, path) -> None:
    """Write ``scene`` as SVG 1.1, one ``<g>`` per layer in a fixed order."""
    xmin, xmax, ymin, ymax = scene.viewport
    scale = SVG_WIDTH / (xmax - xmin)
    height = (ymax - ymin) * scale

    def pt(p):
        return f"{_fmt((p[0] - xmin) * scale)},{_fmt((ymax - p[1]) * scale)}"

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(SVG_WIDTH)}" height="{_fmt(height)}" viewBox="0 0 {_fmt(SVG_WIDTH)} {_fmt(height)}">',
    ]
    if scene.title:
        out.append(f"<title>{_escape(scene.title)}</title>")
    out.append(f'<rect x="0" y="0" width="{_fmt(SVG_WIDTH)}" height="{_fmt(height)}" fill="#ffffff"/>')
    for role in LAYER_ORDER:
        style = " ".join(f'{k}="{v}"' for k, v in sorted(scene.styles.get(role, {}).items()))
        polys = scene.layers.get(role, [])
        if not polys:
            out.append(f'<g id="{role}" {style}/>' if style else f'<g id="{role}"/>')
            continue
        out.append(f'<g id="{role}" {style}>' if style else f'<g id="{role}">')
        tag = "polygon" if role == "regions" else "polyline"
        for poly in polys:
            out.append(f'<{tag} points="{" ".join(pt(p) for p in poly)}"/>')
        out.append("</g>")
    out.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def trace_streamlines(solver, seeds, step: float, max_len: float, window=None) -> list[np.ndarray]:
    """Streamlines of a field solver, traced in parallel chunks.

    Seeds outside the domain are skipped. ``window`` clips tracing to the viewport.
    """
    def make():
        base = solver.sampler()
        if window is None:
            return base
        xmin, xmax, ymin, ymax = window
        inner = base.contains

        def contains(p):
            return xmin <= p[0] <= xmax and ymin <= p[1] <= ymax and (inner is None or inner(p))

        return FieldSampler(base.director, base.dim, contains, base.singularities, base.angle, base.name)

    seeds = [np.asarray(s, float) for s in seeds]

    def work(sl):
        res = []
        for s in seeds[sl]:
            # a fresh sampler per seed keeps warm-start state out of other threads
            try:
                res.append(integrate_streamline(make(), s, step, max_len))
            except (DomainError, CoverageError):
                continue
        return res

    out = []
    for chunk in map_chunks(work, len(seeds), 4):
        out.extend(chunk)
    return out
