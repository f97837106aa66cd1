"""Built-in figure scenarios and the scene builders behind them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .circle import (
    CircleField,
    CircleFrustration,
    auto_c0,
    characteristic_ray,
    circle_slope,
    tangency_set,
)
from .halfplane import HalfPlaneField, LineFrustration, characteristic_through, coverage_map, line_slope
from .quasiuniform import asymptotic_angle
from .render import Scene, contour_f, emit_svg, trace_streamlines

TWO_PI = 2.0 * math.pi
B_DEFAULT = 2.0


def clip_line(anchor, direction, s_range, viewport):
    """Part of ``anchor + s direction`` (``s`` in ``s_range``) inside the viewport, or None."""
    xmin, xmax, ymin, ymax = viewport
    lo, hi = s_range
    for p, d, a, b in ((anchor[0], direction[0], xmin, xmax), (anchor[1], direction[1], ymin, ymax)):
        if abs(d) < 1e-15:
            if p < a or p > b:
                return None
            continue
        t1, t2 = (a - p) / d, (b - p) / d
        lo, hi = max(lo, min(t1, t2)), min(hi, max(t1, t2))
    if not hi > lo:
        return None
    return np.array([anchor + lo * direction, anchor + hi * direction])


def unit_circle(samples: int = 361) -> np.ndarray:
    t = np.linspace(0.0, TWO_PI, samples)
    return np.column_stack([np.cos(t), np.sin(t)])


def compose(scenes: list[Scene], cols: int, gap: float = 0.15, title: str = "") -> Scene:
    """Tile panels left to right, top to bottom, each in a cell of the largest panel size."""
    w = max(s.viewport[1] - s.viewport[0] for s in scenes)
    h = max(s.viewport[3] - s.viewport[2] for s in scenes)
    pad_w, pad_h = gap * w, gap * h
    rows = math.ceil(len(scenes) / cols)
    out = Scene((0.0, cols * (w + pad_w) - pad_w, -(rows * (h + pad_h) - pad_h), 0.0), title=title)
    for i, s in enumerate(scenes):
        r, c = divmod(i, cols)
        ox = c * (w + pad_w) - s.viewport[0]
        oy = -r * (h + pad_h) - h - s.viewport[2]
        shift = np.array([ox, oy])
        for role, polys in s.layers.items():
            out.layers[role].extend(p + shift for p in polys)
        frame = np.array([[0, 0], [w, 0], [w, h], [0, h], [0, 0]], dtype=float) + [c * (w + pad_w), -r * (h + pad_h) - h]
        out.layers["boundary"].append(frame)
    return out


def glyph_grid(viewport, n: int = 15, margin: float = 0.04):
    xmin, xmax, ymin, ymax = viewport
    dx, dy = margin * (xmax - xmin), margin * (ymax - ymin)
    X, Y = np.meshgrid(np.linspace(xmin + dx, xmax - dx, n), np.linspace(ymin + dy, ymax - dy, n))
    return X.ravel(), Y.ravel()


def add_solver_glyphs(scene: Scene, solver, n: int = 15) -> None:
    xs, ys = glyph_grid(scene.viewport, n)
    phi = solver.angle(xs, ys)
    scene.add_glyphs(np.column_stack([xs, ys]), phi)


# half-plane scenes ------------------------------------------------------------


def halfplane_scene(
    fr: LineFrustration,
    b_star: float,
    viewport,
    x0s,
    seeds=(),
    glyphs: int = 15,
    step: float = 0.05,
    max_len: float = 12.0,
    side: str | None = None,
    title: str = "",
) -> tuple[Scene, HalfPlaneField]:
    solver = HalfPlaneField(fr, b_star, side)
    scene = Scene(viewport, title=title)
    for x0 in x0s:
        ch = characteristic_through(float(x0), fr, b_star, solver.side)
        seg = clip_line(ch.anchor, ch.direction, ch.s_range, viewport)
        if seg is not None:
            scene.add("characteristics", seg)
    xmin, xmax = viewport[0], viewport[1]
    scene.add("boundary", [[xmin, 0.0], [xmax, 0.0]])
    if glyphs:
        add_solver_glyphs(scene, solver, glyphs)
    for line in trace_streamlines(solver, seeds, step, max_len, viewport):
        scene.add("streamlines", line)
    return scene, solver


def fig02_lozenges() -> Scene:
    fr = LineFrustration.sinusoidal()
    vp = (-2.0, 2.0, -1.5, 1.5)
    scene = Scene(vp, title="sinusoidal profile, b*=1: multi-covered region")
    cov = coverage_map(vp, fr, 1.0, grid=(160, 120), x0_window=(-6.0, 6.0))
    multi = (cov.counts >= 2).astype(float)
    xs, ys = cov.x_centers, cov.y_centers
    for poly in contour_f(lambda X, Y: multi, (xs[0], xs[-1], ys[0], ys[-1]), (xs.size, ys.size), [0.5])[0.5]:
        scene.add("regions", poly)
    for x0 in np.linspace(-4.0, 4.0, 81):
        ch = characteristic_through(float(x0), fr, 1.0, None)
        seg = clip_line(ch.anchor, ch.direction, ch.s_range, vp)
        if seg is not None:
            scene.add("characteristics", seg)
    scene.add("boundary", [[vp[0], 0.0], [vp[1], 0.0]])
    return scene


def fig03a_tanh() -> Scene:
    vp = (-3.0, 3.0, 0.0, 4.0)
    seeds = [(x, 0.02) for x in np.linspace(-2.75, 2.75, 12)]
    scene, _ = halfplane_scene(
        LineFrustration.tanh(B_DEFAULT), B_DEFAULT, vp, np.linspace(-3.0, 3.0, 25), seeds, title="tanh profile, b*=2"
    )
    return scene


def fig03b_quintic() -> Scene:
    vp = (-1.5, 1.5, 0.0, 2.0)
    seeds = [(x, 0.01) for x in np.linspace(-0.95, 0.95, 10)]
    scene, _ = halfplane_scene(
        LineFrustration.quintic(B_DEFAULT),
        B_DEFAULT,
        vp,
        np.linspace(-1.0, 1.0, 25),
        seeds,
        step=0.02,
        max_len=6.0,
        title="quintic profile, b*=2",
    )
    return scene


def _graph(xs, ys, cap: float) -> list[np.ndarray]:
    """Split a sampled graph where it leaves ``|y| <= cap`` or jumps."""
    ys = np.asarray(ys, float).copy()
    ys[~np.isfinite(ys) | (np.abs(ys) > cap)] = np.nan
    jump = np.nonzero(np.abs(np.diff(ys)) > cap)[0]
    ys[jump] = np.nan
    return [np.column_stack([xs, ys])]


def fig04_line_slope() -> Scene:
    b = B_DEFAULT
    a = math.atan(b)
    phis = np.linspace(-math.pi, math.pi, 2001)
    slopes = np.array([line_slope(float(p), b) for p in phis])
    left = Scene((-math.pi, math.pi, -10.0, 10.0), title="slope of half-plane characteristics")
    for poly in _graph(phis, slopes, 10.0):
        left.add("streamlines", poly)
    left.add("boundary", [[-math.pi, 0.0], [math.pi, 0.0]])
    right = Scene((-1.0, 1.0, 0.0, 1.0))
    for p in np.linspace(-math.pi + 0.05, -0.05, 24):
        u = p + a
        d = np.array([math.cos(u), math.sin(u)])
        d = d if d[1] >= 0 else -d
        right.add("characteristics", clip_line(np.zeros(2), d, (0.0, math.inf), right.viewport))
    right.add("glyphs", [[0.0, 0.0], [0.0, 1.0]])
    right.add("boundary", [[-1.0, 0.0], [1.0, 0.0]])
    # scale the slope panel to share the tile size
    return compose([_rescale(left, (0.0, 2.0, 0.0, 1.0)), _rescale(right, (0.0, 2.0, 0.0, 1.0))], 2, title=left.title)


def _rescale(scene: Scene, target) -> Scene:
    xmin, xmax, ymin, ymax = scene.viewport
    tx0, tx1, ty0, ty1 = target
    sx, sy = (tx1 - tx0) / (xmax - xmin), (ty1 - ty0) / (ymax - ymin)
    out = Scene(target, title=scene.title)
    for role, polys in scene.layers.items():
        for p in polys:
            q = np.column_stack([tx0 + (p[:, 0] - xmin) * sx, ty0 + (p[:, 1] - ymin) * sy])
            out.layers[role].append(q)
    return out


def fig04b_circle_slope() -> Scene:
    panels = []
    t = np.linspace(0.0, TWO_PI, 2001)
    for m, auto in ((0.5, True), (1.0, False), (1.5, True)):
        sc = Scene((0.0, TWO_PI, -10.0, 10.0), title=f"m={m:g}")
        for b in (0.5, 1.0, 2.0, 5.0):
            fr = CircleFrustration.frank(m, auto_c0(m, b) if auto else 0.0)
            phi = fr.phi0(t)
            sl = np.array([circle_slope(float(p), b) for p in phi])
            for poly in _graph(t, sl, 10.0):
                sc.add("streamlines", poly)
        sc.add("boundary", [[0.0, 0.0], [TWO_PI, 0.0]])
        panels.append(_rescale(sc, (0.0, 2.0, 0.0, 1.0)))
    return compose(panels, 3, title="slope of circle characteristics for several b*")


# circle scenes ----------------------------------------------------------------


def circle_scene(
    fr: CircleFrustration,
    b_star: float,
    viewport=(-4.0, 4.0, -4.0, 4.0),
    n_chars: int = 48,
    extend_chars: bool = False,
    seeds=(),
    glyphs: int = 15,
    region: bool = False,
    step: float = 0.05,
    max_len: float = 12.0,
    title: str = "",
) -> tuple[Scene, CircleField]:
    solver = CircleField(fr, b_star)
    scene = Scene(viewport, title=title)
    if region:
        mask_fn = lambda X, Y: solver.domain.contains(X, Y).astype(float)  # noqa: E731
        for poly in contour_f(mask_fn, viewport, (161, 161), [0.5])[0.5]:
            scene.add("regions", poly)
    for t0 in np.linspace(0.0, TWO_PI, n_chars, endpoint=False):
        ray = characteristic_ray(float(t0), fr, b_star)
        rng = (-math.inf, math.inf) if extend_chars else ray.s_range
        seg = clip_line(ray.anchor, ray.direction, rng, viewport)
        if seg is not None:
            scene.add("characteristics", seg)
    for t0 in tangency_set(fr, b_star) if not solver.whole else ():
        p = np.array([math.cos(t0), math.sin(t0)])
        seg = clip_line(p, np.array([-p[1], p[0]]), (-math.inf, math.inf), viewport)
        if seg is not None:
            scene.add("boundary", seg)
    scene.add("boundary", unit_circle())
    if glyphs:
        add_solver_glyphs(scene, solver, glyphs)
    for line in trace_streamlines(solver, seeds, step, max_len, viewport):
        scene.add("streamlines", line)
    return scene, solver


def fig05_domains() -> Scene:
    panels = []
    for m in (-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0):
        sc, _ = circle_scene(CircleFrustration.frank(m, 0.0), B_DEFAULT, n_chars=36, glyphs=11, region=True, title=f"m={m:g}")
        panels.append(sc)
    return compose(panels, 3, title="admissible domains, c0=0, b*=2")


def _ring_seeds(radius: float, count: int, lo: float = 0.0, hi: float = TWO_PI):
    t = np.linspace(lo, hi, count, endpoint=False)
    return [(radius * math.cos(a), radius * math.sin(a)) for a in t]


def _pair(fr: CircleFrustration, title: str, seeds) -> Scene:
    left, _ = circle_scene(fr, B_DEFAULT, n_chars=48, extend_chars=True, glyphs=0)
    right, _ = circle_scene(fr, B_DEFAULT, n_chars=0, seeds=seeds, glyphs=15)
    return compose([left, right], 2, title=title)


def fig06_m_half() -> Scene:
    m = 0.5
    return _pair(CircleFrustration.frank(m, auto_c0(m, B_DEFAULT)), "m=1/2, tangency at 3pi/2", _ring_seeds(1.05, 10))


def fig07_m_three_halves() -> Scene:
    m = 1.5
    return _pair(CircleFrustration.frank(m, auto_c0(m, B_DEFAULT)), "m=3/2, tangency at 3pi/2", _ring_seeds(1.05, 10))


def fig07b_m_one() -> Scene:
    return _pair(CircleFrustration.frank(1.0, 0.0), "m=1, c0=0", _ring_seeds(1.05, 10))


def perturbed_c0(m: float, b_star: float) -> float:
    """Offset that puts a tangency of the perturbed profile at ``3 pi / 2``."""
    return -1.5 * math.pi * (m - 1.0) + m / 3.0 - math.atan(1.0 / b_star)


def perturbed_profile(m: float, b_star: float = B_DEFAULT) -> CircleFrustration:
    c0 = 0.0 if m == 1.0 else perturbed_c0(m, b_star)
    return CircleFrustration.perturbed(m, c0)


def fig08_perturbed() -> Scene:
    panels = []
    for m in (0.5, 1.0, 1.5):
        sc, _ = circle_scene(
            perturbed_profile(m), B_DEFAULT, n_chars=48, extend_chars=True, seeds=_ring_seeds(1.05, 8), glyphs=11
        )
        panels.append(sc)
    return compose(panels, 3, title="perturbed profiles, b*=2")


RAY_ANGLES = tuple(k * math.pi / 3.0 + math.pi / 6.0 for k in range(6))


def ray_curves(sampler, radii, angles=RAY_ANGLES):
    return [asymptotic_angle(sampler, th, radii) for th in angles]


def fig09_rays() -> Scene:
    radii = np.geomspace(1.01, 100.0, 200)
    panels = []
    for kind in ("frank", "perturbed"):
        for m in (0.5, 1.0, 1.5):
            if kind == "frank":
                fr = CircleFrustration.frank(m, 0.0 if m == 1.0 else auto_c0(m, B_DEFAULT))
            else:
                fr = perturbed_profile(m)
            sampler = CircleField(fr, B_DEFAULT).sampler()
            sc = Scene((0.0, math.log10(100.0), -math.pi, math.pi), title=f"{kind} m={m:g}")
            for curve in ray_curves(sampler, radii):
                if curve.radii.size > 1:
                    sc.add("streamlines", np.column_stack([np.log10(curve.radii), curve.alphas]))
            sc.add("boundary", [[0.0, math.atan(B_DEFAULT)], [2.0, math.atan(B_DEFAULT)]])
            panels.append(_rescale(sc, (0.0, 2.0, 0.0, 1.5)))
    return compose(panels, 3, title="local angle along rays, b*=2")


def fig10_hybrid() -> Scene:
    vp = (-3.0, 3.0, 0.0, 4.0)
    seeds = [(x, 0.02) for x in np.linspace(-2.75, 2.75, 12)]
    left, solver = halfplane_scene(
        LineFrustration.hybrid(B_DEFAULT), B_DEFAULT, vp, np.linspace(-3.0, 3.0, 31), seeds, title="hybrid profile"
    )
    radii = np.geomspace(0.05, 50.0, 160)
    sampler = solver.sampler(margin=0.0)
    right = Scene((math.log10(0.05), math.log10(50.0), -math.pi, math.pi))
    for th in (math.pi / 6, math.pi / 3, math.pi / 2, 2 * math.pi / 3, 5 * math.pi / 6):
        c = asymptotic_angle(sampler, th, radii)
        if c.radii.size > 1:
            right.add("streamlines", np.column_stack([np.log10(c.radii), c.alphas]))
    return compose([_rescale(left, (0.0, 1.5, 0.0, 1.0)), _rescale(right, (0.0, 1.5, 0.0, 1.0))], 2, title=left.title)


STRIP_LEVELS = (0.05, 0.1, 0.15, 0.2, 0.25)


def strip_scene(b_star: float) -> Scene:
    fr = LineFrustration.linear()
    vp = (-1.0, 2.0, 0.0, 2.5)
    scene, solver = halfplane_scene(fr, b_star, vp, np.linspace(0.0, 1.0, 11), (), glyphs=13, title=f"strip, b*={b_star:g}")
    for lev, polys in contour_f(solver.f, vp, (151, 126), STRIP_LEVELS).items():
        for p in polys:
            scene.add("contours", p)
    return scene


def fig11_strip() -> Scene:
    return compose([strip_scene(2.0), strip_scene(4.0)], 2, title="one-dimensional uniformity on a segment")


@dataclass(frozen=True)
class FigureScenario:
    name: str
    description: str
    build: Callable[[], Scene]


SCENARIOS: tuple[FigureScenario, ...] = (
    FigureScenario("fig02_lozenges", "sinusoidal profile, b*=1, not relievable", fig02_lozenges),
    FigureScenario("fig03a_tanh", "tanh profile relieved in y>0, b*=2", fig03a_tanh),
    FigureScenario("fig03b_quintic", "quintic profile relieved in y>0, b*=2", fig03b_quintic),
    FigureScenario("fig04a_line_slope", "slope of half-plane characteristics", fig04_line_slope),
    FigureScenario("fig04b_circle_slope", "slope of circle characteristics", fig04b_circle_slope),
    FigureScenario("fig05_domains", "admissible domains for nine charges", fig05_domains),
    FigureScenario("fig06_m_half", "m=1/2 relieved field", fig06_m_half),
    FigureScenario("fig07a_m_three_halves", "m=3/2 relieved field", fig07_m_three_halves),
    FigureScenario("fig07b_m_one", "m=1, c0=0 relieved field", fig07b_m_one),
    FigureScenario("fig08_perturbed", "perturbed circle profiles", fig08_perturbed),
    FigureScenario("fig09_rays", "local angle along rays", fig09_rays),
    FigureScenario("fig10_hybrid", "hybrid half-plane field", fig10_hybrid),
    FigureScenario("fig11_strip", "level sets of f on a relieved segment", fig11_strip),
)


def build_figures(outdir, names=None) -> list[Path]:
    """Render the chosen scenarios (all by default) to ``outdir/<name>.svg``."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    chosen = [s for s in SCENARIOS if names is None or s.name in names]
    paths = []
    for sc in chosen:
        path = out / f"{sc.name}.svg"
        emit_svg(sc.build(), path)
        paths.append(path)
    return paths
