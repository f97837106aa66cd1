"""Director gradients and their splay, twist, bend and octupolar-splay parts.

Gradient convention: ``G[i, j] = d n_i / d x_j``. All vectors live in R^3;
planar fields are embedded with a vanishing third component and ``e_z`` is
the fixed normal to the plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

E_X = np.array([1.0, 0.0, 0.0])
E_Y = np.array([0.0, 1.0, 0.0])
E_Z = np.array([0.0, 0.0, 1.0])

UNIT_TOL = 1e-12
ZERO_TOL = 1e-12
CONSISTENCY_TOL = 1e-6


class InconsistentGradientError(ValueError):
    """Raised when a director or gradient violates the unit-norm constraint."""


def as_director(v, tol: float = 1e-10) -> np.ndarray:
    """Return ``v`` as a float 3-vector after checking it has unit norm.

    Two-component input is embedded in the plane ``z = 0``.
    """
    a = np.asarray(v, dtype=float).reshape(-1)
    if a.size == 2:
        a = np.array([a[0], a[1], 0.0])
    if a.size != 3:
        raise ValueError(f"director must have 2 or 3 components, got {a.size}")
    norm = float(np.linalg.norm(a))
    if abs(norm - 1.0) > tol:
        raise InconsistentGradientError(f"director is not unit (|n| = {norm!r})")
    return a


def nematic_equal(n: np.ndarray, m: np.ndarray, tol: float = 1e-12) -> bool:
    """Compare two directors up to the head-tail flip."""
    n = np.asarray(n, dtype=float)
    m = np.asarray(m, dtype=float)
    return bool(min(np.max(np.abs(n - m)), np.max(np.abs(n + m))) <= tol)


def planar_director(phi) -> np.ndarray:
    """Director ``(cos phi, sin phi, 0)``."""
    return np.array([math.cos(phi), math.sin(phi), 0.0])


def skew_of(v: np.ndarray) -> np.ndarray:
    """Matrix ``W`` with ``W @ u == cross(v, u)``."""
    x, y, z = v
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def curl_from_gradient(G: np.ndarray) -> np.ndarray:
    """Axial vector of ``G - G^T``, i.e. ``curl n`` for ``G = grad n``."""
    return np.array([G[2, 1] - G[1, 2], G[0, 2] - G[2, 0], G[1, 0] - G[0, 1]])


def _orthonormal_completion(n: np.ndarray) -> np.ndarray:
    # smallest-index canonical axis that is not parallel to n
    for axis in (E_X, E_Y, E_Z):
        w = axis - (axis @ n) * n
        nw = np.linalg.norm(w)
        if nw > 1e-6:
            return w / nw
    raise AssertionError("unreachable for a unit n")


@dataclass(frozen=True)
class DistortionFrame:
    """Right-handed orthonormal triple ``(n1, n2, n)`` with ``n = n1 x n2``."""

    n1: np.ndarray
    n2: np.ndarray
    n: np.ndarray

    def matrix(self) -> np.ndarray:
        """Columns ``n1, n2, n``; maps frame components to Cartesian ones."""
        return np.column_stack([self.n1, self.n2, self.n])

    def orthonormality_error(self) -> float:
        R = self.matrix()
        return float(np.max(np.abs(R.T @ R - np.eye(3))))

    def handedness_error(self) -> float:
        return float(np.max(np.abs(np.cross(self.n1, self.n2) - self.n)))

    def flipped(self) -> DistortionFrame:
        """Same director, with ``n1`` and ``n2`` reversed (keeps handedness)."""
        return DistortionFrame(-self.n1, -self.n2, self.n)


@dataclass(frozen=True)
class DistortionState:
    """Distortion characteristics at a point.

    Attributes:
        S: splay, ``div n``.
        T: twist, ``n . curl n``.
        b1, b2: bend components on ``n1`` and ``n2``.
        q: octupolar splay, the nonnegative eigenvalue of ``D``.
        frame: the distortion frame.
        f: optional quasi-uniformity factor.
    """

    S: float
    T: float
    b1: float
    b2: float
    q: float
    frame: DistortionFrame
    f: float | None = None

    @property
    def bend(self) -> np.ndarray:
        return self.b1 * self.frame.n1 + self.b2 * self.frame.n2

    @property
    def B(self) -> float:
        return math.hypot(self.b1, self.b2)

    def characteristics(self) -> np.ndarray:
        """The vector ``(S, T, b1, b2, q)``."""
        return np.array([self.S, self.T, self.b1, self.b2, self.q])

    def reassemble(self) -> np.ndarray:
        """Rebuild ``grad n`` from the characteristics and the frame."""
        n1, n2, n = self.frame.n1, self.frame.n2, self.frame.n
        W = np.outer(n2, n1) - np.outer(n1, n2)
        P = np.eye(3) - np.outer(n, n)
        D = self.q * (np.outer(n1, n1) - np.outer(n2, n2))
        return -np.outer(self.bend, n) + 0.5 * self.T * W + 0.5 * self.S * P + D


@dataclass(frozen=True)
class ElasticConstants:
    """Frank elastic constants; all must be nonnegative."""

    K11: float
    K22: float
    K33: float
    K24: float

    def __post_init__(self):
        for name in ("K11", "K22", "K33", "K24"):
            v = getattr(self, name)
            if not (v >= 0.0 and math.isfinite(v)):
                raise ValueError(f"{name} must be a finite nonnegative number, got {v!r}")


def decompose_gradient(
    n,
    G,
    *,
    zero_tol: float = ZERO_TOL,
    consistency_tol: float = CONSISTENCY_TOL,
) -> DistortionState:
    """Split a director gradient into ``(S, T, b1, b2, q)`` and its frame.

    Args:
        n: unit director.
        G: gradient ``G[i, j] = d n_i / d x_j``.
        zero_tol: ``D`` (resp. ``b``) is treated as zero when ``q`` (resp. ``|b|``)
            is below ``zero_tol * max(|G|, 1e-300)``.
        consistency_tol: allowed size of ``G^T n`` relative to ``max(|G|, 1)``.

    Returns:
        The distortion state. ``n1`` is the ``+q`` eigenvector of ``D``; its sign is
        fixed so that ``b1 >= 0`` (or ``b2 >= 0`` when ``b1`` vanishes).

    Raises:
        InconsistentGradientError: ``n`` is not unit or ``G^T n`` is not negligible.
    """
    n = as_director(n)
    G = np.asarray(G, dtype=float).reshape(3, 3)
    scale = float(np.linalg.norm(G))
    if np.linalg.norm(G.T @ n) > consistency_tol * max(scale, 1.0):
        raise InconsistentGradientError("gradient is not orthogonal to the director (G^T n != 0)")

    S = float(np.trace(G))
    curl = curl_from_gradient(G)
    T = float(n @ curl)
    b = -G @ n

    # closed-form eigen-analysis of G on the plane orthogonal to n
    u = _orthonormal_completion(n)
    v = np.cross(n, u)
    Muu, Muv, Mvu, Mvv = u @ G @ u, u @ G @ v, v @ G @ u, v @ G @ v
    a = 0.5 * (Muu - Mvv)
    c = 0.5 * (Muv + Mvu)
    q = math.hypot(a, c)
    thresh = zero_tol * max(scale, 1e-300)
    if q > thresh:
        psi = 0.5 * math.atan2(c, a)
        n1 = math.cos(psi) * u + math.sin(psi) * v
    else:
        q = 0.0
        if np.linalg.norm(b) > thresh:
            n1 = b - (b @ n) * n
            n1 = n1 / np.linalg.norm(n1)
        else:
            n1 = u
    n2 = np.cross(n, n1)
    b1, b2 = float(b @ n1), float(b @ n2)
    btol = thresh
    if b1 < -btol or (abs(b1) <= btol and b2 < -btol):
        n1, n2, b1, b2 = -n1, -n2, -b1, -b2
    return DistortionState(S=S, T=T, b1=b1, b2=b2, q=float(q), frame=DistortionFrame(n1, n2, n))


def d_tensor(n, G, state: DistortionState) -> np.ndarray:
    """The tensor ``D = G + b (x) n - (T/2) W(n) - (S/2) P(n)``."""
    n = np.asarray(n, dtype=float)
    fr = state.frame
    W = np.outer(fr.n2, fr.n1) - np.outer(fr.n1, fr.n2)
    P = np.eye(3) - np.outer(n, n)
    b = -np.asarray(G) @ n
    return np.asarray(G) + np.outer(b, n) - 0.5 * state.T * W - 0.5 * state.S * P


def q_identity_residual(G, state: DistortionState) -> float:
    """``2 q^2 - tr(G^2) - T^2/2 + S^2/2``; vanishes for a consistent pair."""
    G = np.asarray(G, dtype=float)
    return float(2.0 * state.q**2 - np.trace(G @ G) - 0.5 * state.T**2 + 0.5 * state.S**2)


def planar_state_from_angle(phi: float, phi_x: float, phi_y: float) -> DistortionState:
    """Distortion state of ``n = (cos phi, sin phi, 0)`` from the angle gradient."""
    c, s = math.cos(phi), math.sin(phi)
    S = phi_y * c - phi_x * s
    curl_z = phi_x * c + phi_y * s
    n = np.array([c, s, 0.0])
    n_perp = np.array([-s, c, 0.0])
    if S >= 0.0:
        frame = DistortionFrame(n_perp, E_Z.copy(), n)
        b1, b2 = -curl_z, 0.0
    else:
        frame = DistortionFrame(E_Z.copy(), -n_perp, n)
        b1, b2 = 0.0, curl_z
    return DistortionState(S=S, T=0.0, b1=b1 + 0.0, b2=b2 + 0.0, q=0.5 * abs(S), frame=frame)


def polar_state_from_angle(
    alpha: float, alpha_r: float, alpha_theta: float, r: float, theta: float = 0.0
) -> DistortionState:
    """Distortion state of a planar field given by its local angle ``alpha = phi - theta``.

    The frame is returned in Cartesian components at polar angle ``theta``;
    with the default ``theta = 0`` these coincide with ``(e_r, e_theta, e_z)``.
    """
    if not r > 0.0:
        raise ValueError(f"r must be positive, got {r!r}")
    ca, sa = math.cos(alpha), math.sin(alpha)
    S = (1.0 + alpha_theta) * ca / r - alpha_r * sa
    b1 = alpha_r * ca + (1.0 + alpha_theta) * sa / r
    e_r = np.array([math.cos(theta), math.sin(theta), 0.0])
    e_t = np.array([-math.sin(theta), math.cos(theta), 0.0])
    n = ca * e_r + sa * e_t
    n_perp = -sa * e_r + ca * e_t
    if S >= 0.0:
        frame = DistortionFrame(-n_perp, -E_Z.copy(), n)
        return DistortionState(S=S, T=0.0, b1=b1, b2=0.0, q=0.5 * S, frame=frame)
    frame = DistortionFrame(E_Z.copy(), -n_perp, n)
    return DistortionState(S=S, T=0.0, b1=0.0, b2=b1, q=-0.5 * S, frame=frame)


def oseen_frank_energy(
    state: DistortionState,
    B: float,
    K: ElasticConstants,
    G,
    *,
    tol: float = 1e-8,
) -> tuple[float, float]:
    """Frank energy density in the Cartesian form and in the distortion-mode form.

    Raises:
        ValueError: ``B`` or ``state`` is not consistent with ``G``.
    """
    G = np.asarray(G, dtype=float)
    n = state.frame.n
    S = float(np.trace(G))
    curl = curl_from_gradient(G)
    T = float(n @ curl)
    b = np.cross(n, curl)
    scale = max(1.0, float(np.linalg.norm(G)))
    if abs(S - state.S) > tol * scale or abs(T - state.T) > tol * scale:
        raise ValueError("state is not consistent with the gradient")
    if abs(float(np.linalg.norm(b)) - B) > tol * scale:
        raise ValueError("bend magnitude is not consistent with the gradient")
    if abs(q_identity_residual(G, state)) > tol * scale**2:
        raise ValueError("octupolar splay is not consistent with the gradient")
    w_direct = (
        0.5 * K.K11 * S**2
        + 0.5 * K.K22 * T**2
        + 0.5 * K.K33 * float(b @ b)
        + K.K24 * (float(np.trace(G @ G)) - S**2)
    )
    w_modes = (
        0.5 * (K.K11 - K.K24) * state.S**2
        + 0.5 * (K.K22 - K.K24) * state.T**2
        + 0.5 * K.K33 * B**2
        + 2.0 * K.K24 * state.q**2
    )
    return float(w_direct), float(w_modes)


def ericksen_satisfied(K: ElasticConstants) -> bool:
    """Whether the Frank energy is bounded below for these constants."""
    return K.K11 >= K.K24 >= 0.0 and K.K22 >= K.K24 >= 0.0 and K.K33 >= 0.0
