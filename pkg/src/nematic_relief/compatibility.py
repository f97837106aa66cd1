"""Connectors, the nine integrability conditions and their planar reductions.

All vector data are frame components on ``(n1, n2, n)``. For a gradient of the
form ``f`` times constants, the connectors satisfy

    grad n  = n1 (x) c1 + n2 (x) c2
    grad n1 = -n (x) c1 + n2 (x) d
    grad n2 = -n (x) c2 - n1 (x) d

and ``d_ij`` denotes the ``n_j`` component of ``grad d_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import DistortionFrame, DistortionState

SQRT2 = math.sqrt(2.0)
RESIDUAL_LABELS = tuple(f"compat_{i}" for i in range(1, 10))


@dataclass(frozen=True)
class QUConstants:
    """Constant ratios ``(S*, T*, b1*, b2*, q*)`` with ``q* >= 0``."""

    S: float
    T: float
    b1: float
    b2: float
    q: float

    def __post_init__(self):
        if self.q < 0.0:
            raise ValueError("q* must be nonnegative")

    def as_array(self) -> np.ndarray:
        return np.array([self.S, self.T, self.b1, self.b2, self.q])


@dataclass(frozen=True)
class ConnectorState:
    """Factor ``f``, its gradient, the connector ``d`` and the gradient of ``d``.

    Attributes:
        f: factor value.
        f_grad: ``(f1, f2, f3)``.
        d: ``(d1, d2, d3)``.
        d_grad: ``d_grad[i, j] = d_ij``.
    """

    f: float
    f_grad: np.ndarray = field(default_factory=lambda: np.zeros(3))
    d: np.ndarray = field(default_factory=lambda: np.zeros(3))
    d_grad: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))


def connectors(k: QUConstants, f: float) -> tuple[np.ndarray, np.ndarray]:
    """``(c1, c2)`` in frame components."""
    c1 = f * np.array([0.5 * k.S + k.q, -0.5 * k.T, -k.b1])
    c2 = f * np.array([0.5 * k.T, 0.5 * k.S - k.q, -k.b2])
    return c1, c2


def compatibility_residuals(k: QUConstants, cs: ConnectorState) -> np.ndarray:
    """Left minus right side of the nine integrability conditions, in order."""
    S, T, b1, b2, q = k.S, k.T, k.b1, k.b2, k.q
    f = cs.f
    f1, f2, f3 = cs.f_grad
    d1, d2, d3 = cs.d
    D = cs.d_grad
    sp, sm = 0.5 * S + q, 0.5 * S - q
    f2_ = f * f
    return np.array(
        [
            0.5 * T * f1 + sp * f2 - (-f2_ * b1 * T + 2 * f * q * d1),
            b1 * f1 + sp * f3 - (f2_ * (0.25 * T * T - sp * sp - b1 * b1) + f * b2 * d1),
            b1 * f2 - 0.5 * T * f3 - (f2_ * (0.5 * S * T - b1 * b2) + f * (b2 * d2 - 2 * q * d3)),
            sm * f1 - 0.5 * T * f2 - (f2_ * b2 * T + 2 * f * q * d2),
            b2 * f1 + 0.5 * T * f3 - (-f2_ * (0.5 * S * T + b1 * b2) - f * (b1 * d1 + 2 * q * d3)),
            b2 * f2 + sm * f3 - (f2_ * (0.25 * T * T - sm * sm - b2 * b2) - f * b1 * d2),
            f2_ * (0.25 * S * S - q * q + 0.25 * T * T) - (-f * T * d3 - d1 * d1 - d2 * d2 + D[0, 1] - D[1, 0]),
            f2_ * (0.5 * b1 * T - b2 * sp)
            - (f * sp * d1 + 0.5 * f * T * d2 - f * b1 * d3 - d2 * d3 + D[0, 2] - D[2, 0]),
            f2_ * (b1 * sm + 0.5 * b2 * T)
            - (f * sm * d2 - 0.5 * f * T * d1 - f * b2 * d3 + d1 * d3 + D[1, 2] - D[2, 1]),
        ]
    )


def residual_record(residuals) -> str:
    """Labeled ``key=value`` lines for the nine residuals."""
    return "".join(f"{lab}={float(r):.12g}\n" for lab, r in zip(RESIDUAL_LABELS, residuals))


def heliconical_frame(alpha: float, sign: int, g: float) -> DistortionFrame:
    """Distortion frame of the heliconical field with cone angle ``alpha`` and phase ``g``.

    The ``sign = -1`` frame is the mirror image, under ``y -> -y``, of the
    ``sign = +1`` frame with ``n2`` reversed to keep it right-handed.
    """
    s, c = math.sin(alpha), math.cos(alpha)
    cg, sg = math.cos(g), math.sin(g)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if sign == 1:
        n = np.array([s * cg, s * sg, c])
        n1 = np.array([c * cg + sg, c * sg - cg, -s]) / SQRT2
        n2 = np.array([c * cg - sg, c * sg + cg, -s]) / SQRT2
    else:
        n = np.array([s * cg, -s * sg, c])
        n1 = np.array([c * cg + sg, -c * sg + cg, -s]) / SQRT2
        n2 = np.array([-c * cg + sg, c * sg + cg, s]) / SQRT2
    return DistortionFrame(n1, n2, n)


@dataclass(frozen=True)
class Heliconical:
    constants: QUConstants
    connector: ConnectorState
    state: DistortionState


def heliconical_state(alpha: float, sign: int, gz: float, gzz: float, g: float = 0.0) -> Heliconical:
    """Twist-bend heliconical state ``n = (sin a cos g, sign sin a sin g, cos a)`` with ``g = g(z)``.

    ``gz`` and ``gzz`` are the first two derivatives of ``g`` at the point; the
    factor is ``f = gz``.
    """
    s, c = math.sin(alpha), math.cos(alpha)
    sc = s * c / SQRT2
    T = -sign * s * s
    q = 0.5 * s * s
    b1 = sc
    b2 = -sign * sc
    k = QUConstants(0.0, T, b1, b2, q)
    f_grad = np.array([-gzz * s / SQRT2, -sign * gzz * s / SQRT2, gzz * c])
    coeff = np.array([-sc, -sc, c * c]) if sign == 1 else np.array([sc, -sc, -c * c])
    d = gz * coeff
    d_grad = np.outer(coeff, f_grad)
    frame = heliconical_frame(alpha, sign, g)
    if gz >= 0.0:
        state = DistortionState(0.0, gz * T, gz * b1, gz * b2, gz * q, frame, gz)
    else:
        # a negative factor swaps the eigenvalues of D; rotate the frame by a right angle
        turned = DistortionFrame(frame.n2, -frame.n1, frame.n)
        state = DistortionState(0.0, gz * T, gz * b2, -gz * b1, -gz * q, turned, gz)
    if state.b1 < 0.0 or (state.b1 == 0.0 and state.b2 < 0.0):
        st = state
        state = DistortionState(0.0, st.T, -st.b1, -st.b2, st.q, st.frame.flipped(), gz)
    return Heliconical(k, ConnectorState(gz, f_grad, d, d_grad), state)


def planar_reduction_residuals(
    branch: str, k: QUConstants, f: float, f1: float, f2: float, f3: float, tol: float = 1e-9
) -> list[float]:
    """Residuals left by the nine conditions for a planar splay-bend.

    For ``branch="n2_ez"`` (``S* = 2 q*``) they are ``b2*``, ``f2`` and
    ``b1* f1 + 2 q* f3 + f^2 (4 q*^2 + b1*^2)``; ``branch="n1_ez"``
    (``S* = -2 q*``) swaps the roles of the two indices and flips the ``f3`` term.

    Raises:
        ValueError: the constants do not belong to the branch (relative ``tol``).
    """
    scale = max(1.0, float(np.max(np.abs(k.as_array()))))
    if abs(k.T) > tol * scale:
        raise ValueError("planar reduction needs T* = 0")
    if branch == "n2_ez":
        if abs(k.S - 2 * k.q) > tol * scale:
            raise ValueError("branch n2_ez needs S* = 2 q*")
        return [k.b2, f2, k.b1 * f1 + 2 * k.q * f3 + f * f * (4 * k.q**2 + k.b1**2)]
    if branch == "n1_ez":
        if abs(k.S + 2 * k.q) > tol * scale:
            raise ValueError("branch n1_ez needs S* = -2 q*")
        return [k.b1, f1, k.b2 * f2 - 2 * k.q * f3 + f * f * (4 * k.q**2 + k.b2**2)]
    raise ValueError(f"unknown branch {branch!r}")


def frame_gradients(frame_fn: Callable[[np.ndarray], DistortionFrame], point, h: float = 1e-6):
    """Central-difference gradients of ``n1``, ``n2`` and ``n`` (Cartesian, ``G[i, j] = d_j v_i``)."""
    p = np.asarray(point, dtype=float)
    out = [np.zeros((3, 3)) for _ in range(3)]
    for j in range(p.size):
        e = np.zeros(p.size)
        e[j] = h
        fa, fb = frame_fn(p + e), frame_fn(p - e)
        for i, name in enumerate(("n1", "n2", "n")):
            out[i][:, j] = (getattr(fa, name) - getattr(fb, name)) / (2 * h)
    return tuple(out)


def connectors_from_frame(frame: DistortionFrame, grads) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(c1, c2, d)`` in frame components from Cartesian frame gradients."""
    g1, _, gn = grads
    R = frame.matrix()
    c1 = R.T @ (gn.T @ frame.n1)
    c2 = R.T @ (gn.T @ frame.n2)
    d = R.T @ (g1.T @ frame.n2)
    return c1, c2, d


def reconstruct_gradients(frame: DistortionFrame, c1, c2, d):
    """Cartesian ``grad n``, ``grad n1``, ``grad n2`` from frame-component connectors."""
    R = frame.matrix()
    c1, c2, d = R @ np.asarray(c1), R @ np.asarray(c2), R @ np.asarray(d)
    n1, n2, n = frame.n1, frame.n2, frame.n
    gn = np.outer(n1, c1) + np.outer(n2, c2)
    g1 = -np.outer(n, c1) + np.outer(n2, d)
    g2 = -np.outer(n, c2) - np.outer(n1, d)
    return gn, g1, g2


def planar_residuals_at(sampler, point, f_fn: Callable[[np.ndarray], float], h: float = 1e-5) -> tuple[str, list[float]]:
    """Planar reduction residuals of a sampled splay-bend field with factor ``f = q``.

    ``f_fn`` gives ``q`` in closed form; its gradient is taken by central
    differences and projected on the canonical distortion frame.
    """
    from .quasiuniform import state_at

    p = np.asarray(point, dtype=float)
    st = state_at(sampler, p, "canonical", h)
    f = float(f_fn(p))
    if f <= 0.0:
        raise ValueError("factor must be positive for the q* = 1 normalization")
    k = QUConstants(st.S / f, st.T / f, st.b1 / f, st.b2 / f, st.q / f)
    grad = np.zeros(3)
    for j in range(p.size):
        e = np.zeros(p.size)
        e[j] = h
        grad[j] = (f_fn(p + e) - f_fn(p - e)) / (2 * h)
    fr = st.frame
    f1, f2, f3 = grad @ fr.n1, grad @ fr.n2, grad @ fr.n
    branch = "n2_ez" if abs(abs(fr.n2[2]) - 1.0) < 1e-6 else "n1_ez"
    return branch, planar_reduction_residuals(branch, k, f, f1, f2, f3, tol=1e-5)
