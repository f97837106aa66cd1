"""Quasi-uniform relief outside the unit circle with prescribed winding.

The boundary datum is the local angle ``alpha0(theta0)`` between the director
and the radial direction on the unit circle, so the azimuth there is
``phi0 = alpha0 + theta0``. Writing

    A  = b sin(alpha0) + cos(alpha0)      C0 = b cos(alpha0) - sin(alpha0)
    B  = b sin(phi0)   + cos(phi0)        C' = b cos(phi0)   - sin(phi0)

the characteristic from ``(cos theta0, sin theta0)`` is the line
``C' x + B y = C0``. Its unit tangent ``e_t = (B, -C') / sqrt(1+b^2)`` has radial
component ``A / sqrt(1+b^2)`` at the contact point, so the outward half is the
ray along ``sgn(A) e_t``. With ``sigma`` the arc length along ``e_t``,

    f = phi0' / (2 (A + sqrt(1+b^2) sigma phi0')).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .core import DistortionState, planar_state_from_angle
from .errors import CoverageError, DomainError, SingularFactorError
from .fields import FieldSampler
from .roots import bisect, bracket_mask, dedupe_sorted, map_chunks

TWO_PI = 2.0 * math.pi
VERTICAL_TOL = 1e-14
N_SCAN = 4096


@dataclass(frozen=True)
class CircleFrustration:
    """Boundary local angle ``alpha0`` on the unit circle.

    ``alpha0`` and ``dalpha0`` must accept numpy arrays and be smooth on the
    unwrapped interval ``[0, 2 pi]``.
    """

    alpha0: Callable[[np.ndarray], np.ndarray]
    dalpha0: Callable[[np.ndarray], np.ndarray]
    m: float
    c0: float = 0.0
    kind: str = "custom"

    def phi0(self, theta0):
        t = np.asarray(theta0, dtype=float)
        return self.alpha0(t) + t

    def dphi0(self, theta0):
        return self.dalpha0(np.asarray(theta0, dtype=float)) + 1.0

    def winding_error(self) -> float:
        """Gap in ``alpha0(theta0 + 2 pi) - alpha0(theta0) = 2 (m - 1) pi`` over samples."""
        t = np.linspace(0.0, TWO_PI, 64, endpoint=False)
        return float(np.max(np.abs(self.alpha0(t + TWO_PI) - self.alpha0(t) - TWO_PI * (self.m - 1.0))))

    @classmethod
    def frank(cls, m: float, c0: float = 0.0) -> CircleFrustration:
        k = float(m) - 1.0
        return cls(
            lambda t: k * np.asarray(t, dtype=float) + c0,
            lambda t: np.full(np.shape(t), k),
            float(m),
            float(c0),
            "frank",
        )

    @classmethod
    def perturbed(cls, m: float, c0: float = 0.0) -> CircleFrustration:
        k = float(m) - 1.0
        w = float(m) / 3.0
        return cls(
            lambda t: k * np.asarray(t, dtype=float) + w * np.sin(t) + c0,
            lambda t: k + w * np.cos(t),
            float(m),
            float(c0),
            "perturbed",
        )

    @classmethod
    def from_table(cls, theta0, alpha0, kind: str = "custom") -> CircleFrustration:
        """Periodic spline through samples on ``[0, 2 pi]`` with matching endpoints."""
        t = np.asarray(theta0, dtype=float)
        a = np.asarray(alpha0, dtype=float)
        if t.size < 4 or abs(t[0]) > 1e-12 or abs(t[-1] - TWO_PI) > 1e-9:
            raise ValueError("table must span [0, 2 pi] with at least four samples")
        jump = a[-1] - a[0]
        m2 = jump / math.pi
        if abs(m2 - round(m2)) > 1e-10:
            raise ValueError("alpha0(2 pi) - alpha0(0) must be an integer multiple of pi")
        m = 1.0 + round(m2) / 2.0
        slope = m - 1.0
        spline = CubicSpline(t, a - slope * t, bc_type="periodic")
        dspline = spline.derivative()

        def alpha(x):
            x = np.asarray(x, dtype=float)
            return spline(np.mod(x, TWO_PI)) + slope * x

        def dalpha(x):
            return dspline(np.mod(np.asarray(x, dtype=float), TWO_PI)) + slope

        return cls(alpha, dalpha, m, float(a[0]), kind)

    @classmethod
    def from_csv(cls, path) -> CircleFrustration:
        """Read a table with header ``theta0,alpha0`` (radians)."""
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        if not rows or set(rows[0]) != {"theta0", "alpha0"}:
            raise ValueError("profile table must have header theta0,alpha0")
        return cls.from_table([float(r["theta0"]) for r in rows], [float(r["alpha0"]) for r in rows])


def auto_c0(m: float, b_star: float) -> float:
    """Offset placing the single tangency point of a half-integer profile at ``3 pi / 2``."""
    return -1.5 * math.pi * (m - 1.0) - math.atan(1.0 / b_star)


def winding_charge(fr: CircleFrustration) -> float:
    """``1 + (alpha0(2 pi) - alpha0(0)) / (2 pi)``."""
    a = fr.alpha0(np.array([0.0, TWO_PI]))
    return float(1.0 + (a[1] - a[0]) / TWO_PI)


def circle_slope(phi0: float, b_star: float) -> float:
    """Slope of the characteristic carrying azimuth ``phi0``; ``math.inf`` if vertical."""
    den = b_star * math.sin(phi0) + math.cos(phi0)
    if abs(den) < VERTICAL_TOL:
        return math.inf
    return -(b_star * math.cos(phi0) - math.sin(phi0)) / den


def _coeffs(fr: CircleFrustration, b: float, t):
    t = np.asarray(t, dtype=float)
    al = fr.alpha0(t)
    ph = al + t
    sa, ca, sp, cp = np.sin(al), np.cos(al), np.sin(ph), np.cos(ph)
    return b * sa + ca, b * ca - sa, b * sp + cp, b * cp - sp, ph


def _scan_grid(n_scan: int) -> np.ndarray:
    # one extra step below 0 so that roots sitting on the seam are bracketed
    return np.linspace(-TWO_PI / n_scan, TWO_PI, n_scan + 2)


def _periodic_roots(func, n_scan: int) -> np.ndarray:
    grid = _scan_grid(n_scan)
    vals = func(grid)
    idx = np.nonzero(bracket_mask(vals))[0]
    roots = bisect(func, grid[idx], grid[idx + 1])
    roots = np.sort(np.mod(roots, TWO_PI))
    roots = dedupe_sorted(roots, 1e-11)
    if roots.size > 1 and roots[-1] > TWO_PI - 1e-11 and roots[0] < 1e-11:
        roots = roots[:-1]
    return roots


def tangency_set(fr: CircleFrustration, b_star: float, n_scan: int = N_SCAN) -> np.ndarray:
    """Sorted ``theta0`` in ``[0, 2 pi)`` where the characteristic is tangent to the circle."""
    if n_scan < 8:
        raise ValueError("n_scan must be at least 8")
    return _periodic_roots(lambda t: _coeffs(fr, b_star, t)[0], n_scan)


def frank_tangency_closed_form(m: float, c0: float, b_star: float) -> np.ndarray:
    """Tangency points of a Frank profile, ``(n pi - c0 - arctan(1/b)) / (m - 1)`` mod ``2 pi``."""
    if m == 1.0:
        return np.zeros(0)
    k = m - 1.0
    count = int(round(2 * abs(k)))
    base = -c0 - math.atan(1.0 / b_star)
    roots = np.mod([(n * math.pi + base) / k for n in range(1, count + 1)], TWO_PI)
    return np.sort(roots)


def resonant_roots(fr: CircleFrustration, b_star: float, n_scan: int = N_SCAN) -> np.ndarray:
    """``theta0`` where ``b cos(alpha0) = sin(alpha0)`` (radial characteristics)."""
    return _periodic_roots(lambda t: _coeffs(fr, b_star, t)[1], n_scan)


def is_resonant(fr: CircleFrustration, b_star: float, tol: float = 1e-10) -> bool:
    """Frank ``m = 1`` with ``c0 = arctan b*`` modulo ``pi``."""
    if fr.kind != "frank" or abs(fr.m - 1.0) > tol:
        return False
    d = (fr.c0 - math.atan(b_star)) / math.pi
    return abs(d - round(d)) * math.pi <= tol


def is_whole_plane(fr: CircleFrustration) -> bool:
    """Constant boundary azimuth: the uniform field fills the plane."""
    t = np.linspace(0.0, TWO_PI, 257)
    return float(np.max(np.abs(fr.dphi0(t)))) < 1e-12


@dataclass(frozen=True)
class DomainRegion:
    """Region outside the unit circle cut by the tangent half-planes.

    Attributes:
        kind: ``"whole_plane"``, ``"exterior_of_circle"`` or ``"half_plane_intersection"``.
        constraints: tangency angles ``theta*``; each keeps ``x cos theta* + y sin theta* < 1``.
        exterior: whether the closed unit disk is excluded.
    """

    kind: str
    constraints: tuple[float, ...] = ()
    exterior: bool = True

    def contains(self, x, y) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        if self.kind == "whole_plane":
            return np.ones(x.shape, dtype=bool)
        ok = x * x + y * y > 1.0 if self.exterior else np.ones(x.shape, dtype=bool)
        for t in self.constraints:
            ok = ok & (x * math.cos(t) + y * math.sin(t) < 1.0)
        return ok

    @property
    def bounded(self) -> bool:
        """Whether the constraint normals surround the origin."""
        if self.kind != "half_plane_intersection" or len(self.constraints) < 3:
            return False
        t = np.sort(np.mod(self.constraints, TWO_PI))
        gaps = np.diff(np.concatenate([t, [t[0] + TWO_PI]]))
        return bool(np.max(gaps) < math.pi - 1e-12)


def admissible_domain(fr: CircleFrustration, b_star: float, n_scan: int = N_SCAN) -> DomainRegion:
    """Domain where outward characteristics do not cross."""
    if is_whole_plane(fr):
        return DomainRegion("whole_plane", (), False)
    roots = tangency_set(fr, b_star, n_scan)
    if roots.size == 0:
        return DomainRegion("exterior_of_circle")
    return DomainRegion("half_plane_intersection", tuple(float(r) for r in roots))


@dataclass(frozen=True)
class CharacteristicRay:
    """Characteristic leaving ``(cos theta0, sin theta0)``.

    Points are ``anchor + s * direction`` with ``s`` the arc length restricted
    to ``s_range``; ``direction`` follows the arc-length parameterization that
    increases ``x`` (vertical lines point up).
    """

    theta0: float
    anchor: np.ndarray
    direction: np.ndarray
    angle: float
    s_range: tuple[float, float]

    def point(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        return self.anchor + s[..., None] * self.direction

    def outward(self) -> np.ndarray:
        """Unit vector from the anchor into the admissible range (away from the circle)."""
        if self.s_range[0] < 0.0 and self.s_range[1] <= 0.0:
            return -self.direction
        return self.direction

    @property
    def is_vertical(self) -> bool:
        return abs(self.direction[0]) < VERTICAL_TOL


def characteristic_ray(theta0: float, fr: CircleFrustration, b_star: float, tol: float = 1e-12) -> CharacteristicRay:
    """The outward characteristic through the boundary point at ``theta0``."""
    A, _, B, Cp, ph = (float(v) for v in np.ravel(_coeffs(fr, b_star, np.array([theta0]))))
    anchor = np.array([math.cos(theta0), math.sin(theta0)])
    k = math.sqrt(1.0 + b_star**2)
    if abs(B) < VERTICAL_TOL:
        d = np.array([0.0, 1.0])
        # direction (0, 1) has radial component sin(theta0)
        up = math.sin(theta0) > 0.0
    else:
        d = math.copysign(1.0, B) * np.array([B, -Cp]) / k
        up = A * B > 0.0
    if abs(A) <= tol:
        rng = (-math.inf, math.inf)
    elif up:
        rng = (0.0, math.inf)
    else:
        rng = (-math.inf, 0.0)
    return CharacteristicRay(float(theta0), anchor, d, ph, rng)


def f_at_circle(theta0: float, s: float, fr: CircleFrustration, b_star: float) -> float:
    """Factor ``f`` at arc length ``s`` along :func:`characteristic_ray` from its anchor.

    Raises:
        SingularFactorError: tangent characteristic at the anchor or a vanishing
            denominator.
    """
    ray = characteristic_ray(theta0, fr, b_star)
    A, _, B, Cp, _ = (float(v) for v in np.ravel(_coeffs(fr, b_star, np.array([theta0]))))
    if abs(A) <= 1e-12:
        raise SingularFactorError("characteristic is tangent to the circle")
    k = math.sqrt(1.0 + b_star**2)
    e_t = np.array([B, -Cp]) / k
    sigma = s * float(ray.direction @ e_t)
    dphi = float(fr.dphi0(np.array([theta0]))[0])
    den = A + k * sigma * dphi
    if den == 0.0:
        raise SingularFactorError("factor f is singular on this characteristic")
    return 0.5 * dphi / den


@dataclass(frozen=True)
class DegeneracyReport:
    tangency: tuple[float, ...]
    resonant: tuple[float, ...]
    resonant_global: bool


def classify_degeneracies(fr: CircleFrustration, b_star: float, n_scan: int = N_SCAN) -> DegeneracyReport:
    """Tangency roots, radial-characteristic roots and the global resonance flag."""
    glob = is_resonant(fr, b_star)
    if glob:
        # A is a nonzero constant and C0 vanishes identically
        return DegeneracyReport((), (), True)
    return DegeneracyReport(
        tuple(float(t) for t in tangency_set(fr, b_star, n_scan)),
        tuple(float(t) for t in resonant_roots(fr, b_star, n_scan)),
        False,
    )


@dataclass
class CircleField:
    """Field relieving ``fr`` outside the unit circle.

    Attributes:
        fr: boundary profile.
        b_star: bend-to-splay ratio.
        extend: also evaluate inside the circle by continuing characteristics as
            full lines; interior points reached by several lines are not covered.
        n_scan: samples of ``theta0`` used to bracket roots.
    """

    fr: CircleFrustration
    b_star: float
    extend: bool = False
    n_scan: int = N_SCAN
    domain: DomainRegion = field(init=False)
    resonant: bool = field(init=False)

    def __post_init__(self):
        self.resonant = is_resonant(self.fr, self.b_star)
        self.whole = is_whole_plane(self.fr)
        self.domain = admissible_domain(self.fr, self.b_star, self.n_scan)
        self._k = math.sqrt(1.0 + self.b_star**2)
        self._grid = _scan_grid(self.n_scan)
        A, C0, B, Cp, _ = _coeffs(self.fr, self.b_star, self._grid)
        self._A, self._C0, self._B, self._Cp = A, C0, B, Cp

    def in_domain(self, xs, ys) -> np.ndarray:
        xs, ys = np.broadcast_arrays(np.asarray(xs, float), np.asarray(ys, float))
        ok = self.domain.contains(xs, ys)
        if self.extend and not self.whole:
            ok = ok | (xs * xs + ys * ys < 1.0)
        if self.resonant:
            ok = ok & (xs * xs + ys * ys > 0.0)
        return ok

    def _H(self, t, x, y):
        _, C0, B, Cp, _ = _coeffs(self.fr, self.b_star, t)
        return Cp * x + B * y - C0

    def _admissible(self, t, x, y):
        """Whether ``(x, y)`` lies on the outward half of the line from ``t`` (or inside, when extending)."""
        A, _, B, Cp, _ = _coeffs(self.fr, self.b_star, t)
        sig = ((x - np.cos(t)) * B - (y - np.sin(t)) * Cp) / self._k
        ok = (sig * np.sign(A) >= -1e-9) | (np.abs(A) <= 1e-12)
        if self.extend:
            ok = ok | (x * x + y * y < 1.0)
        return ok

    def roots(self, x: float, y: float) -> np.ndarray:
        """Sorted ``theta0`` of every admissible characteristic through ``(x, y)``."""
        H = self._Cp * x + self._B * y - self._C0
        idx = np.nonzero(bracket_mask(H))[0]
        r = bisect(lambda t: self._H(t, x, y), self._grid[idx], self._grid[idx + 1])
        r = r[self._admissible(r, x, y)]
        r = np.sort(np.mod(r, TWO_PI))
        r = dedupe_sorted(r, 1e-9)
        if r.size > 1 and r[-1] > TWO_PI - 1e-9 and r[0] < 1e-9:
            r = r[:-1]
        return r

    def locate(self, xs, ys, guess=None) -> np.ndarray:
        """``theta0`` (unwrapped, in ``[0, 2 pi]``) of the unique characteristic, NaN otherwise."""
        xs, ys = np.broadcast_arrays(np.asarray(xs, float), np.asarray(ys, float))
        shape = xs.shape
        x, y = xs.ravel().copy(), ys.ravel().copy()
        out = np.full(x.shape, np.nan)
        if self.whole or self.resonant:
            ok = self.in_domain(x, y)
            out[ok] = np.mod(np.arctan2(y[ok], x[ok]), TWO_PI)
            return out.reshape(shape)
        todo = np.nonzero(self.in_domain(x, y))[0]
        if guess is not None and todo.size:
            g0 = np.broadcast_to(np.asarray(guess, float), shape).ravel()[todo]
            ok, val = self._newton(g0, x[todo], y[todo])
            out[todo[ok]] = val[ok]
            todo = todo[~ok]
        if todo.size:
            chunk = max(1, 1_000_000 // self.n_scan)

            def work(sl):
                ii = todo[sl]
                xi, yi = x[ii], y[ii]
                H = self._Cp * xi[:, None] + self._B * yi[:, None] - self._C0
                mask = bracket_mask(H)
                res = np.full(ii.size, np.nan)
                rows, cols = np.nonzero(mask)
                if rows.size == 0:
                    return res
                xr, yr = xi[rows], yi[rows]
                t = bisect(lambda s: self._H(s, xr, yr), self._grid[cols], self._grid[cols + 1])
                keep = self._admissible(t, xr, yr)
                rows, t = rows[keep], t[keep]
                # a root at theta0 and one at theta0 + 2 pi describe the same line
                tw = np.mod(t, TWO_PI)
                tw = np.where(tw > TWO_PI - 1e-9, 0.0, tw)
                for r in np.unique(rows):
                    sel = rows == r
                    vals = np.unique(np.round(tw[sel], 9))
                    if vals.size == 1:
                        res[r] = t[sel][0]
                return res

            out[todo] = np.concatenate(map_chunks(work, todo.size, chunk))
        return out.reshape(shape)

    def _newton(self, t0, x, y, iters: int = 40):
        t = t0.astype(float).copy()
        for _ in range(iters):
            A, C0, B, Cp, _ = _coeffs(self.fr, self.b_star, t)
            H = Cp * x + B * y - C0
            dphi = self.fr.dphi0(t)
            dalpha = self.fr.dalpha0(t)
            dH = dphi * (-B * x + Cp * y) + dalpha * A
            with np.errstate(divide="ignore", invalid="ignore"):
                step = np.where(dH != 0.0, H / dH, np.inf)
            step = np.clip(step, -0.2, 0.2)
            t = t - step
            if np.all(np.abs(step) <= 1e-15 * (1.0 + np.abs(t))):
                break
        A, C0, B, Cp, _ = _coeffs(self.fr, self.b_star, t)
        H = Cp * x + B * y - C0
        sig = ((x - np.cos(t)) * B - (y - np.sin(t)) * Cp) / self._k
        dphi = self.fr.dphi0(t)
        denom = A + self._k * sig * dphi
        scale = 1.0 + np.abs(x) + np.abs(y)
        ok = np.isfinite(t) & (np.abs(H) <= 1e-13 * scale) & (np.abs(denom) > 1e-8) & self._admissible(t, x, y)
        # interior points may sit on several chords; leave them to the full scan
        ok &= (x * x + y * y) > 1.0
        return ok, t

    def angle(self, xs, ys, guess=None) -> np.ndarray:
        """Field azimuth at each point (NaN where not uniquely covered)."""
        t = self.locate(xs, ys, guess)
        if self.whole:
            return np.where(np.isnan(t), np.nan, float(self.fr.phi0(np.array([0.0]))[0]))
        if self.resonant:
            xs, ys = np.broadcast_arrays(np.asarray(xs, float), np.asarray(ys, float))
            return np.where(np.isnan(t), np.nan, np.arctan2(ys, xs) + self.fr.c0)
        return self.fr.phi0(np.nan_to_num(t)) + np.where(np.isnan(t), np.nan, 0.0)

    def angle_gradient(self, xs, ys, guess=None):
        """``(phi, phi_x, phi_y, theta0)`` from implicit differentiation of the line equation."""
        xs, ys = np.broadcast_arrays(np.asarray(xs, float), np.asarray(ys, float))
        t = self.locate(xs, ys, guess)
        nan = np.where(np.isnan(t), np.nan, 0.0)
        if self.whole:
            phi = self.angle(xs, ys)
            return phi, 0.0 * phi, 0.0 * phi, t
        if self.resonant:
            r2 = xs * xs + ys * ys
            return np.arctan2(ys, xs) + self.fr.c0 + nan, -ys / r2 + nan, xs / r2 + nan, t
        tt = np.nan_to_num(t)
        A, _, B, Cp, ph = _coeffs(self.fr, self.b_star, tt)
        dphi = self.fr.dphi0(tt)
        sig = ((xs - np.cos(tt)) * B - (ys - np.sin(tt)) * Cp) / self._k
        with np.errstate(divide="ignore", invalid="ignore"):
            den = A + self._k * sig * dphi
            phi_x = dphi * Cp / den
            phi_y = dphi * B / den
        return ph + nan, phi_x + nan, phi_y + nan, t

    def f(self, xs, ys, guess=None) -> np.ndarray:
        """Factor ``f`` (half the signed splay) at each point."""
        phi, px, py, _ = self.angle_gradient(xs, ys, guess)
        return 0.5 * (py * np.cos(phi) - px * np.sin(phi))

    def state_at(self, x: float, y: float) -> DistortionState:
        phi, px, py, _ = self.angle_gradient(np.array([x]), np.array([y]))
        if np.isnan(phi[0]):
            raise DomainError(f"({x}, {y}) is not uniquely covered")
        st = planar_state_from_angle(float(phi[0]), float(px[0]), float(py[0]))
        return DistortionState(st.S, st.T, st.b1, st.b2, st.q, st.frame, 0.5 * st.S)

    def sampler(self) -> FieldSampler:
        last = [None]

        def angle1(x, y):
            xs, ys = np.array([x]), np.array([y])
            if self.whole or self.resonant:
                phi = self.angle(xs, ys)[0]
            else:
                t = self.locate(xs, ys, last[0])[0]
                if np.isfinite(t):
                    last[0] = t
                phi = self.fr.phi0(np.array([np.nan_to_num(t)]))[0] + (0.0 if np.isfinite(t) else np.nan)
            if not np.isfinite(phi):
                raise CoverageError("not_covered", f"({x}, {y}) is not uniquely covered")
            return float(phi)

        sing = ((0.0, 0.0),) if self.resonant else ()
        return FieldSampler.from_angle(
            angle1,
            contains=lambda p: bool(self.in_domain(np.array([p[0]]), np.array([p[1]]))[0]),
            singularities=sing,
            vector_angle=self.angle,
            name=f"circle:{self.fr.kind}:m={self.fr.m:g}",
        )


def field_angle_at_circle(x: float, y: float, fr: CircleFrustration, b_star: float, extend: bool = False) -> float:
    """Azimuth of the relieved field at ``(x, y)``.

    Raises:
        DomainError: the point is inside the circle and ``extend`` is false.
        CoverageError: ``"not_covered"`` outside the admissible domain,
            ``"multi_covered"`` where several characteristics meet.
    """
    r2 = x * x + y * y
    if r2 < 1.0 and not extend:
        raise DomainError("point lies inside the unit circle; pass extend=True to continue characteristics")
    fld = CircleField(fr, b_star, extend)
    if r2 == 1.0 or abs(r2 - 1.0) < 1e-15:
        t = math.atan2(y, x)
        return float(fr.phi0(np.array([t % TWO_PI]))[0])
    if not bool(fld.in_domain(np.array([x]), np.array([y]))[0]):
        raise CoverageError("not_covered", f"({x}, {y}) lies outside the admissible domain")
    if fld.whole or fld.resonant:
        return float(fld.angle(np.array([x]), np.array([y]))[0])
    r = fld.roots(x, y)
    if r.size == 0:
        raise CoverageError("not_covered", f"no characteristic reaches ({x}, {y})")
    if r.size > 1:
        raise CoverageError("multi_covered", f"{r.size} characteristics reach ({x}, {y})", r)
    return float(fr.phi0(np.array([r[0]]))[0])
