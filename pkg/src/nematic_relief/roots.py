"""Vectorized root bracketing and bisection."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np


def worker_count() -> int:
    """Thread cap from ``NEMATIC_RELIEF_THREADS`` (default: CPU count, at least 1)."""
    env = os.environ.get("NEMATIC_RELIEF_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


def map_chunks(fn: Callable[[slice], object], total: int, chunk: int) -> list:
    """Apply ``fn`` to consecutive slices of ``range(total)``, in order."""
    slices = [slice(i, min(i + chunk, total)) for i in range(0, total, chunk)]
    workers = min(worker_count(), len(slices))
    if workers <= 1:
        return [fn(s) for s in slices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, slices))


def bisect(func: Callable[[np.ndarray], np.ndarray], lo, hi, xtol: float = 0.0, maxiter: int = 200):
    """Elementwise bisection on brackets ``[lo, hi]``.

    ``func`` maps an array of abscissae (same shape as ``lo``) to residuals.
    Runs until the bracket stops shrinking in floating point or is below ``xtol``.
    """
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)
    if lo.size == 0:
        return lo
    pos_lo = func(lo) >= 0.0
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        active = (np.abs(hi - lo) > xtol) & (mid != lo) & (mid != hi)
        if not active.any():
            break
        pos_mid = func(mid) >= 0.0
        move_lo = active & (pos_mid == pos_lo)
        move_hi = active & ~move_lo
        lo = np.where(move_lo, mid, lo)
        hi = np.where(move_hi, mid, hi)
    return 0.5 * (lo + hi)


def bracket_mask(values: np.ndarray) -> np.ndarray:
    """Boolean mask of sign changes between consecutive samples along the last axis."""
    pos = values >= 0.0
    finite = np.isfinite(values)
    return (pos[..., 1:] != pos[..., :-1]) & finite[..., 1:] & finite[..., :-1]


def dedupe_sorted(roots: np.ndarray, tol: float) -> np.ndarray:
    """Collapse sorted roots closer than ``tol``."""
    if roots.size == 0:
        return roots
    keep = np.concatenate([[True], np.diff(roots) > tol])
    return roots[keep]


def scan_roots(func: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, n: int, xtol: float = 0.0) -> np.ndarray:
    """All sign-change roots of a scalar vectorized function on ``[lo, hi]``, sorted."""
    grid = np.linspace(lo, hi, n + 1)
    vals = func(grid)
    idx = np.nonzero(bracket_mask(vals))[0]
    roots = bisect(func, grid[idx], grid[idx + 1], xtol=xtol)
    roots = np.sort(roots)
    return dedupe_sorted(roots, 4 * np.finfo(float).eps * max(abs(lo), abs(hi), 1.0))
