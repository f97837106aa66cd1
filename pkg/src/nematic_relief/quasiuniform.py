"""Numerical checks of quasi-uniformity and related field-level properties."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import E_Z, DistortionFrame, DistortionState, curl_from_gradient, decompose_gradient
from .errors import DomainError
from .fields import FieldSampler

__all__ = [
    "FieldSampler",
    "QUReport",
    "fd_gradient",
    "state_at",
    "verify_quasi_uniformity",
    "ratio_test",
    "AsymptoticAngle",
    "asymptotic_angle",
    "characteristic_inclination",
    "OneDUniformity",
    "one_d_uniformity",
    "winding_number",
]

CONVENTIONS = ("canonical", "line", "circle")
# finite-difference gradients carry relative noise far above 1e-12
FD_ZERO_TOL = 1e-7


def fd_gradient(field: FieldSampler, point, h: float | None = None) -> np.ndarray:
    """Central-difference gradient ``G[i, j] = d n_i / d x_j`` of a line field.

    Each sampled director is flipped into the hemisphere of the director at
    ``point`` before differencing.

    Raises:
        DomainError: a stencil point leaves the field domain.
    """
    p = np.asarray(point, dtype=float)
    d = p.size
    if h is None:
        h = 1e-5 * field.length_scale(p)
    if not h > 0.0:
        raise ValueError("h must be positive")
    n0 = field(p)
    G = np.zeros((3, 3))
    for j in range(d):
        e = np.zeros(d)
        e[j] = h
        if not (field.inside(p + e) and field.inside(p - e)):
            raise DomainError(f"stencil around {p.tolist()} leaves the domain (h = {h:g})")
        a, b = field(p + e), field(p - e)
        if a @ n0 < 0.0:
            a = -a
        if b @ n0 < 0.0:
            b = -b
        G[:, j] = (a - b) / (2.0 * h)
    return G


def _line_frame_state(n: np.ndarray, G: np.ndarray, sign: float) -> DistortionState:
    """Characteristics in the planar frame ``n1 = sign e_z x n``, ``n2 = sign e_z``, with signed ``q = S/2``."""
    n_perp = np.cross(E_Z, n)
    n1, n2 = sign * n_perp, sign * E_Z
    S = float(np.trace(G))
    T = float(n @ curl_from_gradient(G))
    b = -G @ n
    return DistortionState(S, T, float(b @ n1), float(b @ n2), 0.5 * S, DistortionFrame(n1, n2, n))


def state_at(field: FieldSampler, point, convention: str = "canonical", h: float | None = None) -> DistortionState:
    """Distortion state from a finite-difference gradient.

    ``convention`` picks the frame: ``"canonical"`` (the eigen-frame with
    ``b1 >= 0``), ``"line"`` (``n1 = e_z x n``, ``n2 = e_z``) or ``"circle"``
    (``n1 = -e_z x n``, ``n2 = -e_z``). The planar conventions report the signed
    value ``q = S/2``.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    n = field(point)
    G = fd_gradient(field, point, h)
    if convention == "canonical":
        return decompose_gradient(n, G, zero_tol=FD_ZERO_TOL)
    return _line_frame_state(n, G, 1.0 if convention == "line" else -1.0)


@dataclass(frozen=True)
class QUReport:
    """Outcome of a ratio test over probe points.

    Attributes:
        verdict: all normalized characteristic vectors agree within ``tol``.
        constants: fitted ``(S*, T*, b1*, b2*, q*)``.
        convention: frame convention used for the characteristics.
        normalization: ``"q*=1"``, ``"max=1"`` or ``"constant"``.
        max_deviation: largest componentwise gap to the reference probe.
        f_samples: factor ``f`` at each probe under the fitted constants.
        tol: tolerance used.
        special: ``"constant"`` when the reference probe carries no distortion.
    """

    verdict: bool
    constants: tuple[float, float, float, float, float]
    convention: str
    normalization: str
    max_deviation: float
    f_samples: tuple[float, ...]
    tol: float
    special: str | None = None

    @property
    def ratio_b1_S(self) -> float:
        S, _, b1, _, _ = self.constants
        return b1 / S if S != 0.0 else math.nan

    def to_record(self) -> str:
        """Flat ``key=value`` lines."""
        names = ("S", "T", "b1", "b2", "q")
        lines = [
            f"verdict={'true' if self.verdict else 'false'}",
            f"convention={self.convention}",
            f"normalization={self.normalization}",
            f"special={self.special or 'none'}",
            f"tol={self.tol:.12g}",
            f"max_deviation={self.max_deviation:.12g}",
        ]
        lines += [f"{k}_star={v:.12g}" for k, v in zip(names, self.constants)]
        lines.append("f_samples=" + ",".join(f"{v:.12g}" for v in self.f_samples))
        return "\n".join(lines) + "\n"


def verify_quasi_uniformity(
    field: FieldSampler,
    probes: Sequence,
    tol: float = 1e-5,
    convention: str = "canonical",
    h: float | None = None,
) -> QUReport:
    """Test whether ``(S, T, b1, b2, q)`` stay in a fixed ratio over ``probes``.

    Each vector is divided by its entry at the index that is largest in
    magnitude at the first probe; the verdict holds when all normalized
    vectors agree within ``tol``.
    """
    probes = [np.asarray(p, dtype=float) for p in probes]
    if len(probes) < 3:
        raise ValueError("at least three probes are required")
    vecs = np.array([state_at(field, p, convention, h).characteristics() for p in probes])
    return ratio_test(vecs, tol, convention)


def ratio_test(vecs, tol: float = 1e-5, convention: str = "canonical") -> QUReport:
    """Ratio test on precomputed rows ``(S, T, b1, b2, q)``; the first row is the reference."""
    vecs = np.asarray(vecs, dtype=float).reshape(-1, 5)
    if vecs.shape[0] < 3:
        raise ValueError("at least three probes are required")
    ref = vecs[0]
    k = int(np.argmax(np.abs(ref)))
    scale = max(float(np.max(np.abs(vecs))), 1e-300)
    if abs(ref[k]) <= 1e-9:
        dev = float(np.max(np.abs(vecs)))
        ok = dev <= tol
        return QUReport(ok, (0.0,) * 5, convention, "constant", dev, tuple(0.0 for _ in vecs), tol, "constant")

    pivots = vecs[:, k]
    with np.errstate(divide="ignore", invalid="ignore"):
        normed = vecs / pivots[:, None]
    bad = np.abs(pivots) <= 1e-9 * scale
    dev_rows = np.max(np.abs(normed - normed[0]), axis=1)
    dev_rows[bad] = math.inf
    max_dev = float(np.max(dev_rows))

    c = np.mean(normed[~bad], axis=0)
    if abs(c[4]) > 1e-8:
        c = c / c[4]
        tag = "q*=1"
    else:
        c = c / c[int(np.argmax(np.abs(c)))]
        tag = "max=1"
    f = tuple(float(v) for v in pivots / c[k])
    constants = tuple(float(v) + 0.0 for v in c)
    return QUReport(bool(max_dev <= tol), constants, convention, tag, max_dev, f, tol)


@dataclass(frozen=True)
class AsymptoticAngle:
    """Local angle ``alpha = phi - theta`` along a ray.

    Attributes:
        radii, alphas: sampled radii inside the domain and the angles there.
        last: the angle at the largest sampled radius.
        cauchy: gap between the last two samples.
        limit: extrapolated limit from a fit in powers of ``1/r``.
        truncated: the ray left the domain before the last requested radius.
        truncated_at: first requested radius outside the domain.
    """

    theta: float
    radii: np.ndarray
    alphas: np.ndarray
    last: float
    cauchy: float
    limit: float
    truncated: bool
    truncated_at: float | None


def _sample_angles(field: FieldSampler, xs, ys) -> np.ndarray:
    if field.angle is not None:
        return np.asarray(field.angle(xs, ys), dtype=float)
    out = []
    for x, y in zip(xs, ys):
        try:
            n = field(np.array([x, y]))
            out.append(math.atan2(n[1], n[0]))
        except (DomainError, LookupError):
            out.append(math.nan)
    return np.array(out)


def asymptotic_angle(field: FieldSampler, theta: float, radii: Sequence[float]) -> AsymptoticAngle:
    """Track ``alpha = phi - theta`` (mod pi) outward along the ray at ``theta``."""
    radii = np.asarray(radii, dtype=float)
    if radii.size == 0 or np.any(np.diff(radii) <= 0):
        raise ValueError("radii must be nonempty and increasing")
    xs, ys = radii * math.cos(theta), radii * math.sin(theta)
    inside = np.array([field.inside(np.array([x, y])) for x, y in zip(xs, ys)])
    phi = _sample_angles(field, xs, ys)
    good = inside & np.isfinite(phi)
    stop = int(np.argmin(good)) if not good.all() else radii.size
    truncated = stop < radii.size
    r, phi = radii[:stop], phi[:stop]
    if r.size == 0:
        return AsymptoticAngle(theta, r, r, math.nan, math.nan, math.nan, True, float(radii[0]))
    alpha = np.unwrap(phi - theta, period=math.pi)
    alpha = alpha - math.pi * math.floor((alpha[0] + 0.5 * math.pi) / math.pi)
    last = float(alpha[-1])
    cauchy = float(abs(alpha[-1] - alpha[-2])) if alpha.size > 1 else math.nan
    tail = r >= 0.1 * r[-1]
    if tail.sum() >= 3:
        V = np.column_stack([np.ones(tail.sum()), 1.0 / r[tail], 1.0 / r[tail] ** 2])
        limit = float(np.linalg.lstsq(V, alpha[tail], rcond=None)[0][0])
    else:
        limit = last
    return AsymptoticAngle(
        theta, r, alpha, last, cauchy, limit, truncated, float(radii[stop]) if truncated else None
    )


@dataclass(frozen=True)
class Inclination:
    values: np.ndarray
    spread: float

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))


def characteristic_inclination(field: FieldSampler, char, probes_s: Sequence[float]) -> Inclination:
    """``e0 . n`` at points of a characteristic, ``e0`` its unit vector into the domain.

    Each sampled director is oriented along the boundary director
    ``(cos phi0, sin phi0)`` that the characteristic carries, so the sign does
    not depend on how the sampler lifts the line field.
    """
    e0 = np.asarray(char.outward(), dtype=float)
    e0 = np.array([e0[0], e0[1], 0.0])
    ref = np.array([math.cos(char.angle), math.sin(char.angle), 0.0])
    vals = []
    for s in probes_s:
        n = field(char.point(s))
        vals.append(float(e0 @ (n if n @ ref >= 0.0 else -n)))
    vals = np.array(vals)
    return Inclination(vals, float(np.ptp(vals)) if vals.size else 0.0)


@dataclass(frozen=True)
class OneDUniformity:
    positions: np.ndarray
    gammas: np.ndarray
    uniform: bool
    gamma0: float | None


def one_d_uniformity(curve: str, profile, samples: int = 201, window=(-5.0, 5.0), tol: float = 1e-8) -> OneDUniformity:
    """Sample ``gamma = phi0' + tau`` along the x-axis (``tau = 0``) or the unit circle (``tau = 1``)."""
    if curve == "line":
        lo = max(window[0], profile.support[0])
        hi = min(window[1], profile.support[1])
        s = np.linspace(lo, hi, samples)
        g = np.asarray(profile.dphi0(s), dtype=float)
    elif curve == "circle":
        s = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
        g = np.asarray(profile.dalpha0(s), dtype=float) + 1.0
    else:
        raise ValueError("curve must be 'line' or 'circle'")
    uniform = float(np.ptp(g)) < tol
    return OneDUniformity(s, g, uniform, float(np.mean(g)) if uniform else None)


def winding_number(field: FieldSampler, radius: float, center=(0.0, 0.0), samples: int = 4096) -> Fraction:
    """Winding of the line field on a circle, as a half-integer.

    Raises:
        DomainError: the circuit leaves the domain.
    """
    t = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    xs = center[0] + radius * np.cos(t)
    ys = center[1] + radius * np.sin(t)
    phi = _sample_angles(field, xs, ys)
    if not np.all(np.isfinite(phi)):
        raise DomainError(f"circuit of radius {radius:g} leaves the domain")
    d = np.diff(np.concatenate([phi, phi[:1]]))
    d = (d + 0.5 * math.pi) % math.pi - 0.5 * math.pi
    if np.max(np.abs(d)) > 0.25 * math.pi:
        raise ValueError("circuit sampling too coarse to follow the field")
    total = float(np.sum(d)) / (2.0 * math.pi)
    return Fraction(round(2.0 * total), 2)
