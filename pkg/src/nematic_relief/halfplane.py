"""Quasi-uniform relief of a director prescribed on the line ``y = 0``.

A boundary angle ``phi0(x0)`` propagates unchanged along the straight
characteristic through ``(x0, 0)`` that makes the angle ``u = phi0 + arctan b*``
with the x-axis. The field at ``(x, y)`` is found by solving

    g(x0) = (x - x0) sin u(x0) - y cos u(x0) = 0

for ``x0``. With ``sigma`` the signed arc length from ``(x0, 0)`` along
``(cos u, sin u)``, the factor is ``f = phi0' / (2 sqrt(1+b*^2) (sigma phi0' - sin u))``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator

from .core import DistortionState, planar_state_from_angle
from .errors import CoverageError, DomainError, SingularFactorError
from .fields import FieldSampler
from .roots import bisect, bracket_mask, map_chunks

VERTICAL_TOL = 1e-14
MONOTONE_TOL = 1e-10
DEFAULT_WINDOW = (-50.0, 50.0)


class Verdict(str, Enum):
    RELIEVABLE_UPPER = "relievable_upper"
    RELIEVABLE_LOWER = "relievable_lower"
    CONSTANT = "constant"
    NOT_RELIEVABLE = "not_relievable"


@dataclass(frozen=True)
class LineFrustration:
    """Boundary angle ``phi0`` on the x-axis.

    ``phi0`` and ``dphi0`` must accept numpy arrays. ``support`` is the interval
    of ``x0`` where the profile is prescribed.
    """

    phi0: Callable[[np.ndarray], np.ndarray]
    dphi0: Callable[[np.ndarray], np.ndarray]
    tag: str = "custom"
    support: tuple[float, float] = (-math.inf, math.inf)
    params: dict = field(default_factory=dict, compare=False)

    def window(self, window=None) -> tuple[float, float]:
        lo, hi = DEFAULT_WINDOW if window is None else window
        return max(lo, self.support[0]), min(hi, self.support[1])

    def consistency_error(self, xs, h: float = 1e-6) -> float:
        """Largest gap between a central difference of ``phi0`` and ``dphi0``."""
        xs = np.asarray(xs, dtype=float)
        fd = (self.phi0(xs + h) - self.phi0(xs - h)) / (2 * h)
        return float(np.max(np.abs(fd - self.dphi0(xs))))

    @classmethod
    def constant(cls, value: float) -> LineFrustration:
        return cls(
            lambda x: np.full(np.shape(x), float(value)),
            lambda x: np.zeros(np.shape(x)),
            "constant",
            params={"value": value},
        )

    @classmethod
    def linear(cls, slope: float = -math.pi / 4, intercept: float = 0.0, support=(0.0, 1.0)) -> LineFrustration:
        return cls(
            lambda x: intercept + slope * np.asarray(x, dtype=float),
            lambda x: np.full(np.shape(x), float(slope)),
            "linear",
            tuple(support),
            {"slope": slope, "intercept": intercept},
        )

    @classmethod
    def tanh(cls, b_star: float) -> LineFrustration:
        a = math.atan(b_star)
        return cls(
            lambda x: -0.5 * math.pi * (np.tanh(x) + 1.0) - a,
            lambda x: -0.5 * math.pi / np.cosh(x) ** 2,
            "tanh",
            params={"b_star": b_star},
        )

    @classmethod
    def quintic(cls, b_star: float) -> LineFrustration:
        a = math.atan(b_star)
        return cls(
            lambda x: -0.5 * math.pi * (np.asarray(x, dtype=float) ** 5 + 1.0) - a,
            lambda x: -2.5 * math.pi * np.asarray(x, dtype=float) ** 4,
            "quintic",
            (-1.0, 1.0),
            {"b_star": b_star},
        )

    @classmethod
    def hybrid(cls, b_star: float) -> LineFrustration:
        a = math.atan(b_star)
        k = 0.75 * math.pi

        def bump(x):
            x = np.asarray(x, dtype=float)
            with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
                return np.where(x > 0.0, np.exp(-1.0 / np.where(x > 0, x, 1.0) ** 2), 0.0)

        def dbump(x):
            x = np.asarray(x, dtype=float)
            xs = np.where(x > 0, x, 1.0)
            with np.errstate(over="ignore", under="ignore"):
                return np.where(x > 0.0, 2.0 * np.exp(-1.0 / xs**2) / xs**3, 0.0)

        return cls(
            lambda x: k - a - k * bump(x),
            lambda x: -k * dbump(x),
            "hybrid",
            params={"b_star": b_star},
        )

    @classmethod
    def sinusoidal(cls, amplitude: float = math.pi / 10, period: float = 2.0) -> LineFrustration:
        w = 2.0 * math.pi / period
        return cls(
            lambda x: amplitude * np.sin(w * np.asarray(x, dtype=float)),
            lambda x: amplitude * w * np.cos(w * np.asarray(x, dtype=float)),
            "sinusoidal",
            params={"amplitude": amplitude, "period": period},
        )

    @classmethod
    def from_table(cls, x0, phi0, tag: str = "table") -> LineFrustration:
        """Monotone-cubic interpolant of sampled ``(x0, phi0)`` pairs."""
        x0 = np.asarray(x0, dtype=float)
        phi0 = np.asarray(phi0, dtype=float)
        order = np.argsort(x0)
        x0, phi0 = x0[order], phi0[order]
        if x0.size < 2 or np.any(np.diff(x0) <= 0):
            raise ValueError("table needs at least two distinct x0 values")
        interp = PchipInterpolator(x0, phi0, extrapolate=False)
        deriv = interp.derivative()
        return cls(
            lambda x: interp(np.asarray(x, dtype=float)),
            lambda x: deriv(np.asarray(x, dtype=float)),
            tag,
            (float(x0[0]), float(x0[-1])),
        )

    @classmethod
    def from_csv(cls, path) -> LineFrustration:
        """Read a two-column table with header ``x0,phi0`` (radians)."""
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        if not rows or set(rows[0]) != {"x0", "phi0"}:
            raise ValueError("profile table must have header x0,phi0")
        return cls.from_table([float(r["x0"]) for r in rows], [float(r["phi0"]) for r in rows], tag=str(path))


def line_slope(phi0: float, b_star: float) -> float:
    """Slope of the characteristic leaving the boundary with angle ``phi0``.

    Returns ``math.inf`` for a vertical characteristic.
    """
    num = math.sin(phi0) + b_star * math.cos(phi0)
    den = math.cos(phi0) - b_star * math.sin(phi0)
    if abs(den) < VERTICAL_TOL:
        return math.inf
    return num / den


@dataclass(frozen=True)
class Relievability:
    """Outcome of the range and monotonicity checks.

    Attributes:
        verdict: classification.
        phi_range: smallest and largest sampled ``phi0``.
        k: window index, ``phi0 + arctan b*`` lies in ``[(k-1) pi, k pi]``.
        range_ok: whether the sampled range fits in one window.
        touches_boundary: the range reaches a window endpoint.
        monotone: ``"decreasing"``, ``"increasing"``, ``"constant"`` or ``"none"``.
        first_violation: ``x0`` where monotonicity first fails, if any.
        window: sampled interval.
    """

    verdict: Verdict
    phi_range: tuple[float, float]
    k: int | None
    range_ok: bool
    touches_boundary: bool
    monotone: str
    first_violation: float | None
    window: tuple[float, float]

    @property
    def side(self) -> str | None:
        return {
            Verdict.RELIEVABLE_UPPER: "upper",
            Verdict.RELIEVABLE_LOWER: "lower",
            Verdict.CONSTANT: "both",
        }.get(self.verdict)


def assess_relievability(fr: LineFrustration, b_star: float, window=None, n_samples: int = 4001) -> Relievability:
    """Check whether ``fr`` can be relieved in a half-plane for this ``b*``."""
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    lo, hi = fr.window(window)
    xs = np.linspace(lo, hi, n_samples)
    phi = np.asarray(fr.phi0(xs), dtype=float)
    pmin, pmax = float(phi.min()), float(phi.max())
    if pmax - pmin <= 1e-12:
        return Relievability(Verdict.CONSTANT, (pmin, pmax), None, True, False, "constant", None, (lo, hi))

    u = phi + math.atan(b_star)
    k = math.ceil(float(u.max()) / math.pi - 1e-12)
    range_ok = float(u.min()) >= (k - 1) * math.pi - 1e-12
    touches = range_ok and (
        abs(float(u.max()) - k * math.pi) <= 1e-12 or abs(float(u.min()) - (k - 1) * math.pi) <= 1e-12
    )

    d = np.diff(phi)
    if np.all(d <= MONOTONE_TOL):
        monotone, violation = "decreasing", None
    elif np.all(d >= -MONOTONE_TOL):
        monotone, violation = "increasing", None
    else:
        # the first sample where the trend set by the opening steps reverses
        first = d[np.nonzero(np.abs(d) > MONOTONE_TOL)[0][0]]
        bad = np.nonzero(d * np.sign(first) < -MONOTONE_TOL)[0]
        monotone, violation = "none", float(xs[bad[0]])

    if not range_ok or monotone == "none":
        verdict = Verdict.NOT_RELIEVABLE
    elif monotone == "decreasing":
        verdict = Verdict.RELIEVABLE_UPPER
    else:
        verdict = Verdict.RELIEVABLE_LOWER
    return Relievability(verdict, (pmin, pmax), int(k), bool(range_ok), bool(touches), monotone, violation, (lo, hi))


@dataclass(frozen=True)
class Characteristic:
    """Straight characteristic carrying a constant angle.

    Points are ``anchor + s * direction`` with ``s`` the arc length, restricted
    to ``s_range``.
    """

    anchor: np.ndarray
    direction: np.ndarray
    angle: float
    s_range: tuple[float, float]

    def point(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        return self.anchor + s[..., None] * self.direction

    def outward(self) -> np.ndarray:
        """Unit vector pointing from the anchor into the admissible range."""
        return -self.direction if self.s_range[1] <= 0.0 and self.s_range[0] < 0.0 else self.direction

    @property
    def is_vertical(self) -> bool:
        return abs(self.direction[0]) < VERTICAL_TOL


def _side_range(dy: float, side: str | None) -> tuple[float, float]:
    if side in (None, "both") or dy == 0.0:
        return (-math.inf, math.inf)
    up = dy > 0.0
    if side == "lower":
        up = not up
    return (0.0, math.inf) if up else (-math.inf, 0.0)


def characteristic_through(x0: float, fr: LineFrustration, b_star: float, side: str | None = None) -> Characteristic:
    """The characteristic leaving ``(x0, 0)``.

    Its direction has a nonnegative x-component (increasing ``x``); a vertical
    characteristic points into ``side`` (up by default).
    """
    phi = float(fr.phi0(np.array([x0]))[0])
    u = phi + math.atan(b_star)
    cu, su = math.cos(u), math.sin(u)
    if abs(cu) < VERTICAL_TOL:
        d = np.array([0.0, -1.0 if side == "lower" else 1.0])
    else:
        d = math.copysign(1.0, cu) * np.array([cu, su])
    return Characteristic(np.array([float(x0), 0.0]), d, phi, _side_range(float(d[1]), side))


def _f_value(dphi, sigma, u, b_star):
    den = math.sqrt(1.0 + b_star**2) * (sigma * dphi - math.sin(u))
    if den == 0.0 or not math.isfinite(den):
        raise SingularFactorError("factor f is singular on this characteristic")
    return 0.5 * dphi / den


def f_at(x0: float, s: float, fr: LineFrustration, b_star: float) -> float:
    """Factor ``f`` on the characteristic through ``(x0, 0)``, at ``x = x0 + s``.

    Raises:
        SingularFactorError: vanishing denominator, or ``s != 0`` on a vertical
            characteristic (which ``x - x0`` cannot parameterize).
    """
    phi = float(fr.phi0(np.array([x0]))[0])
    dphi = float(fr.dphi0(np.array([x0]))[0])
    u = phi + math.atan(b_star)
    cu = math.cos(u)
    if abs(cu) < VERTICAL_TOL:
        if s != 0.0:
            raise SingularFactorError("x - x0 does not parameterize a vertical characteristic")
        return _f_value(dphi, 0.0, u, b_star)
    return _f_value(dphi, s / cu, u, b_star)


def f_along(x0: float, sigma: float, fr: LineFrustration, b_star: float) -> float:
    """Factor ``f`` at arc length ``sigma`` along ``(cos u, sin u)`` from ``(x0, 0)``."""
    phi = float(fr.phi0(np.array([x0]))[0])
    dphi = float(fr.dphi0(np.array([x0]))[0])
    return _f_value(dphi, sigma, phi + math.atan(b_star), b_star)


@dataclass
class HalfPlaneField:
    """Field relieving ``fr`` in a half-plane, evaluated by characteristic inversion.

    Attributes:
        fr: boundary profile.
        b_star: bend-to-splay ratio.
        side: ``"upper"``, ``"lower"``, ``"both"`` (constant profile) or ``None``
            to take it from :func:`assess_relievability`.
        window: search interval for ``x0``; defaults to the profile support
            clipped to ``[-50, 50]``.
        n_scan: samples of ``x0`` used to bracket roots.
    """

    fr: LineFrustration
    b_star: float
    side: str | None = None
    window: tuple[float, float] | None = None
    n_scan: int = 4001
    relievability: Relievability = field(init=False)

    def __post_init__(self):
        self.window = self.fr.window(self.window)
        self.relievability = assess_relievability(self.fr, self.b_star, self.window)
        if self.side is None:
            self.side = self.relievability.side
        self._a = math.atan(self.b_star)
        self._grid = np.linspace(self.window[0], self.window[1], self.n_scan)
        u = self.fr.phi0(self._grid) + self._a
        self._su, self._cu = np.sin(u), np.cos(u)

    def _g(self, x0, x, y):
        u = self.fr.phi0(x0) + self._a
        return (x - x0) * np.sin(u) - y * np.cos(u)

    def in_domain(self, xs, ys) -> np.ndarray:
        ys = np.asarray(ys, dtype=float)
        if self.side == "upper":
            return ys >= 0.0
        if self.side == "lower":
            return ys <= 0.0
        if self.side == "both":
            return np.ones(ys.shape, dtype=bool)
        return np.zeros(ys.shape, dtype=bool)

    def count(self, xs, ys) -> np.ndarray:
        """Number of characteristics through each point (any side)."""
        xs, ys = np.broadcast_arrays(np.asarray(xs, float), np.asarray(ys, float))
        flat_x, flat_y = xs.ravel(), ys.ravel()
        chunk = max(1, 2_000_000 // self.n_scan)

        def work(sl):
            G = (flat_x[sl, None] - self._grid) * self._su - flat_y[sl, None] * self._cu
            return bracket_mask(G).sum(axis=1)

        return np.concatenate(map_chunks(work, flat_x.size, chunk) or [np.zeros(0, int)]).reshape(xs.shape)

    def roots(self, x: float, y: float) -> np.ndarray:
        """Sorted ``x0`` of every characteristic through ``(x, y)``."""
        if y == 0.0 and self.window[0] <= x <= self.window[1]:
            # the boundary carries its own data; saturated tails where sin u -> 0
            # would otherwise add spurious near-axis roots
            return np.array([x])
        G = (x - self._grid) * self._su - y * self._cu
        idx = np.nonzero(bracket_mask(G))[0]
        r = bisect(lambda t: self._g(t, x, y), self._grid[idx], self._grid[idx + 1])
        if self.relievability.verdict == Verdict.CONSTANT:
            return np.array([x - y * self._cu[0] / self._su[0]]) if abs(self._su[0]) > 0 else r
        return np.sort(r)

    def locate(self, xs, ys, guess=None) -> np.ndarray:
        """``x0`` of the unique admissible characteristic through each point, NaN otherwise.

        With ``guess`` a Newton iteration is tried first; points where it fails
        fall back to the full bracketing scan.
        """
        xs, ys = np.broadcast_arrays(np.asarray(xs, float), np.asarray(ys, float))
        shape = xs.shape
        x, y = xs.ravel().copy(), ys.ravel().copy()
        out = np.full(x.shape, np.nan)
        inside = self.in_domain(x, y)
        if self.relievability.verdict == Verdict.CONSTANT:
            su, cu = self._su[0], self._cu[0]
            if abs(su) > 0.0:
                out[inside] = x[inside] - y[inside] * cu / su
            return out.reshape(shape)
        on_axis = inside & (y == 0.0) & (x >= self.window[0]) & (x <= self.window[1])
        out[on_axis] = x[on_axis]
        todo = np.nonzero(inside & ~on_axis)[0]
        if guess is not None and todo.size:
            g0 = np.broadcast_to(np.asarray(guess, float), shape).ravel()[todo]
            ok, val = self._newton(g0, x[todo], y[todo])
            out[todo[ok]] = val[ok]
            todo = todo[~ok]
        if todo.size:
            chunk = max(1, 2_000_000 // self.n_scan)

            def work(sl):
                ii = todo[sl]
                G = (x[ii, None] - self._grid) * self._su - y[ii, None] * self._cu
                mask = bracket_mask(G)
                cnt = mask.sum(axis=1)
                res = np.full(ii.size, np.nan)
                one = cnt == 1
                if one.any():
                    j = np.argmax(mask[one], axis=1)
                    xi, yi = x[ii[one]], y[ii[one]]
                    res[one] = bisect(lambda t: self._g(t, xi, yi), self._grid[j], self._grid[j + 1])
                return res

            out[todo] = np.concatenate(map_chunks(work, todo.size, chunk))
        return out.reshape(shape)

    def _newton(self, x0, x, y, iters: int = 40):
        t = np.clip(x0.astype(float), *self.window)
        for _ in range(iters):
            phi = self.fr.phi0(t)
            dphi = self.fr.dphi0(t)
            u = phi + self._a
            su, cu = np.sin(u), np.cos(u)
            g = (x - t) * su - y * cu
            dg = -su + dphi * ((x - t) * cu + y * su)
            with np.errstate(divide="ignore", invalid="ignore"):
                step = np.where(dg != 0.0, g / dg, np.inf)
            step = np.clip(step, -0.25, 0.25)
            t = np.clip(t - step, *self.window)
            if np.all(np.abs(step) <= 1e-15 * (1.0 + np.abs(t))):
                break
        u = self.fr.phi0(t) + self._a
        resid = (x - t) * np.sin(u) - y * np.cos(u)
        scale = 1.0 + np.abs(x) + np.abs(y)
        # Newton may converge on one of several roots; only trust it where the
        # characteristic map is locally invertible and the residual is tiny
        dphi = self.fr.dphi0(t)
        sigma = (x - t) * np.cos(u) + y * np.sin(u)
        denom = sigma * dphi - np.sin(u)
        ok = np.isfinite(t) & (np.abs(resid) <= 1e-13 * scale) & (np.abs(denom) > 1e-8)
        if self.relievability.verdict in (Verdict.NOT_RELIEVABLE,):
            ok[:] = False
        return ok, t

    def angle(self, xs, ys, guess=None) -> np.ndarray:
        """Field angle at each point (NaN where not uniquely covered)."""
        x0 = self.locate(xs, ys, guess)
        return self.fr.phi0(np.nan_to_num(x0)) + np.where(np.isnan(x0), np.nan, 0.0)

    def angle_gradient(self, xs, ys, guess=None):
        """``(phi, phi_x, phi_y, x0)`` from implicit differentiation of ``g = 0``."""
        x0 = self.locate(xs, ys, guess)
        t = np.nan_to_num(x0)
        phi = self.fr.phi0(t)
        dphi = self.fr.dphi0(t)
        u = phi + self._a
        su, cu = np.sin(u), np.cos(u)
        xs, ys = np.broadcast_arrays(np.asarray(xs, float), np.asarray(ys, float))
        sigma = (xs - t) * cu + ys * su
        with np.errstate(divide="ignore", invalid="ignore"):
            den = sigma * dphi - su
            phi_x = dphi * (-su) / den
            phi_y = dphi * cu / den
        nan = np.where(np.isnan(x0), np.nan, 0.0)
        return phi + nan, phi_x + nan, phi_y + nan, x0

    def f(self, xs, ys, guess=None) -> np.ndarray:
        """Factor ``f`` (half the signed splay) at each point."""
        x0 = self.locate(xs, ys, guess)
        t = np.nan_to_num(x0)
        dphi = self.fr.dphi0(t)
        u = self.fr.phi0(t) + self._a
        xs, ys = np.broadcast_arrays(np.asarray(xs, float), np.asarray(ys, float))
        sigma = (xs - t) * np.cos(u) + ys * np.sin(u)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = 0.5 * dphi / (math.sqrt(1.0 + self.b_star**2) * (sigma * dphi - np.sin(u)))
        return np.where(np.isnan(x0), np.nan, val)

    def state_at(self, x: float, y: float) -> DistortionState:
        phi, px, py, _ = self.angle_gradient(np.array([x]), np.array([y]))
        if np.isnan(phi[0]):
            raise DomainError(f"({x}, {y}) is not uniquely covered")
        st = planar_state_from_angle(float(phi[0]), float(px[0]), float(py[0]))
        return DistortionState(st.S, st.T, st.b1, st.b2, st.q, st.frame, 0.5 * st.S)

    def sampler(self, margin: float = 0.0) -> FieldSampler:
        """Pointwise sampler; ``margin`` keeps points away from the boundary line."""

        last = [None]

        def angle1(x, y):
            # successive calls come from nearby points; reuse the last root as a Newton guess
            x0 = self.locate(np.array([x]), np.array([y]), last[0])[0]
            if not np.isfinite(x0):
                raise CoverageError("not_covered", f"({x}, {y}) is not uniquely covered")
            last[0] = x0
            return float(self.fr.phi0(np.array([x0]))[0])

        def contains(p):
            y = float(p[1])
            if self.side == "upper":
                return y > margin
            if self.side == "lower":
                return y < -margin
            return self.side == "both"

        return FieldSampler.from_angle(angle1, contains=contains, vector_angle=self.angle, name=f"halfplane:{self.fr.tag}")


def field_angle_at(x: float, y: float, fr: LineFrustration, b_star: float, window=None, side: str | None = None) -> float:
    """Angle of the relieved field at ``(x, y)``.

    Raises:
        CoverageError: with status ``"not_covered"`` if no characteristic (or the
            wrong half-plane) reaches the point, ``"multi_covered"`` if several do.
    """
    fld = HalfPlaneField(fr, b_star, side, window)
    if not bool(fld.in_domain(np.array([x]), np.array([y]))):
        raise CoverageError("not_covered", f"({x}, {y}) lies outside the relieved half-plane")
    r = fld.roots(x, y)
    if r.size == 0:
        raise CoverageError("not_covered", f"no characteristic in the window reaches ({x}, {y})")
    if r.size > 1:
        raise CoverageError("multi_covered", f"{r.size} characteristics reach ({x}, {y})", r)
    return float(fr.phi0(np.array([r[0]]))[0])


@dataclass(frozen=True)
class CoverageCell:
    """A grid cell and the number of characteristics through its center."""

    x_range: tuple[float, float]
    y_range: tuple[float, float]
    count: int

    @property
    def kind(self) -> str:
        return "0" if self.count == 0 else ("1" if self.count == 1 else ">=2")


@dataclass(frozen=True)
class CoverageMap:
    """Characteristic counts at cell centers of a regular grid (rows follow ``y``)."""

    x_edges: np.ndarray
    y_edges: np.ndarray
    counts: np.ndarray

    @property
    def x_centers(self) -> np.ndarray:
        return 0.5 * (self.x_edges[1:] + self.x_edges[:-1])

    @property
    def y_centers(self) -> np.ndarray:
        return 0.5 * (self.y_edges[1:] + self.y_edges[:-1])

    def cells(self):
        for j in range(self.counts.shape[0]):
            for i in range(self.counts.shape[1]):
                yield CoverageCell(
                    (float(self.x_edges[i]), float(self.x_edges[i + 1])),
                    (float(self.y_edges[j]), float(self.y_edges[j + 1])),
                    int(self.counts[j, i]),
                )

    def classes(self) -> dict[str, int]:
        c = self.counts
        return {"0": int((c == 0).sum()), "1": int((c == 1).sum()), ">=2": int((c >= 2).sum())}


def coverage_map(window, fr: LineFrustration, b_star: float, grid=(200, 200), x0_window=None, n_sweep: int = 4001) -> CoverageMap:
    """Count characteristics through each cell center of ``window = (xmin, xmax, ymin, ymax)``."""
    nx, ny = grid
    if nx < 1 or ny < 1:
        raise ValueError("grid must be positive")
    xmin, xmax, ymin, ymax = window
    xe = np.linspace(xmin, xmax, nx + 1)
    ye = np.linspace(ymin, ymax, ny + 1)
    fld = HalfPlaneField(fr, b_star, "both", x0_window, n_sweep)
    X, Y = np.meshgrid(0.5 * (xe[1:] + xe[:-1]), 0.5 * (ye[1:] + ye[:-1]))
    if fld.relievability.verdict == Verdict.CONSTANT:
        counts = np.ones(X.shape, dtype=int)
    else:
        counts = fld.count(X, Y).astype(int)
    return CoverageMap(xe, ye, counts)
