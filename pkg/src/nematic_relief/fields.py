"""Director field samplers and a few elementary analytic fields."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError


def _rot_z(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


@dataclass(frozen=True)
class FieldSampler:
    """A director field given pointwise.

    Attributes:
        director: maps a point (2 or 3 coordinates) to a director.
        dim: spatial dimension of the points.
        contains: domain predicate; ``None`` means everywhere.
        singularities: known singular points, used for step-size scaling.
        angle: optional vectorized planar angle ``(xs, ys) -> phi`` returning NaN
            outside the domain; lets batch tools skip per-point calls.
        name: free-form label.
    """

    director: Callable[[np.ndarray], np.ndarray]
    dim: int = 2
    contains: Callable[[np.ndarray], bool] | None = None
    singularities: tuple = ()
    angle: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = field(default=None, compare=False)
    name: str = ""

    def __call__(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if not self.inside(p):
            raise DomainError(f"point {p.tolist()} is outside the field domain")
        n = np.asarray(self.director(p), dtype=float).reshape(-1)
        if n.size == 2:
            n = np.array([n[0], n[1], 0.0])
        norm = np.linalg.norm(n)
        if not abs(norm - 1.0) < 1e-9:
            raise ValueError(f"sampled director is not unit (|n| = {norm!r})")
        return n

    def inside(self, p) -> bool:
        p = np.asarray(p, dtype=float)
        if not np.all(np.isfinite(p)):
            return False
        return True if self.contains is None else bool(self.contains(p))

    def length_scale(self, p) -> float:
        """Distance to the nearest known singularity, or 1."""
        if not self.singularities:
            return 1.0
        p = np.asarray(p, dtype=float)
        d = [np.linalg.norm(p[: len(s)] - np.asarray(s, dtype=float)) for s in self.singularities]
        return float(min(min(d), 1.0)) if min(d) > 0 else 1.0

    @classmethod
    def from_angle(
        cls,
        angle_fn: Callable[[float, float], float],
        contains=None,
        singularities=(),
        vector_angle=None,
        name: str = "",
    ) -> FieldSampler:
        """Planar field ``n = (cos phi, sin phi, 0)`` from a scalar angle function."""

        def director(p):
            phi = angle_fn(float(p[0]), float(p[1]))
            return np.array([math.cos(phi), math.sin(phi), 0.0])

        return cls(director, 2, contains, tuple(singularities), vector_angle, name)

    def rotated(self, angle: float) -> FieldSampler:
        """The field rigidly rotated about ``e_z`` by ``angle``."""
        R = _rot_z(angle)
        Rt = R.T
        d = self.dim

        def back(p):
            p3 = np.zeros(3)
            p3[:d] = p[:d]
            return (Rt @ p3)[:d]

        contains = None if self.contains is None else (lambda p: self.contains(back(p)))

        def director(p):
            n = np.asarray(self.director(back(p)), dtype=float).reshape(-1)
            if n.size == 2:
                n = np.array([n[0], n[1], 0.0])
            return R @ n

        sing = tuple(tuple((R @ np.pad(np.asarray(s, float), (0, 3 - len(s))))[: len(s)]) for s in self.singularities)
        return FieldSampler(director, d, contains, sing, None, self.name + "/rotated")

    def flipped(self) -> FieldSampler:
        """The same line field with every director reversed."""
        return FieldSampler(
            lambda p: -np.asarray(self.director(p), dtype=float),
            self.dim,
            self.contains,
            self.singularities,
            None,
            self.name + "/flipped",
        )


def hedgehog() -> FieldSampler:
    """Radial field ``x/|x|`` in space."""
    return FieldSampler(
        lambda p: p / np.linalg.norm(p),
        dim=3,
        contains=lambda p: np.linalg.norm(p) > 0.0,
        singularities=((0.0, 0.0, 0.0),),
        name="hedgehog",
    )


def planar_spiral(alpha: float, center=(0.0, 0.0)) -> FieldSampler:
    """Field at constant angle ``alpha`` to the radial direction about ``center``."""
    cx, cy = center

    def angle(x, y):
        return np.arctan2(np.asarray(y) - cy, np.asarray(x) - cx) + alpha

    return FieldSampler.from_angle(
        lambda x, y: float(angle(x, y)),
        contains=lambda p: math.hypot(p[0] - cx, p[1] - cy) > 0.0,
        singularities=((cx, cy),),
        vector_angle=angle,
        name=f"spiral(alpha={alpha:g})",
    )


def planar_splay(center=(0.0, 0.0)) -> FieldSampler:
    return planar_spiral(0.0, center)


def pure_bend(center=(0.0, 0.0)) -> FieldSampler:
    return planar_spiral(0.5 * math.pi, center)


def single_variable(phi: Callable[[float], float], name: str = "single-variable") -> FieldSampler:
    """Planar field whose angle depends on ``x`` only."""
    return FieldSampler.from_angle(
        lambda x, y: phi(x),
        vector_angle=lambda x, y: phi(np.asarray(x)) + 0.0 * np.asarray(y),
        name=name,
    )


def uniform(phi: float = 0.0) -> FieldSampler:
    return FieldSampler.from_angle(
        lambda x, y: phi,
        vector_angle=lambda x, y: np.full(np.broadcast(x, y).shape, phi),
        name="uniform",
    )
