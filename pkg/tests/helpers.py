"""Shared test utilities: random constellations and small statistics."""

from __future__ import annotations

import math

import numpy as np

from ccl.geometry import Constellation


def random_constellation(
    rng: np.random.Generator,
    m: int | None = None,
    d: int = 2,
    box: float = 2.0,
    min_sep: float = 0.05,
) -> Constellation:
    """Well-separated uniform points in [-box, box]^d."""
    if m is None:
        m = int(rng.integers(1, 11))
    pts: list[np.ndarray] = []
    while len(pts) < m:
        cand = rng.uniform(-box, box, size=d)
        if all(np.linalg.norm(cand - p) >= min_sep for p in pts):
            pts.append(cand)
    return Constellation(np.array(pts))


def rotation_2d(theta: float) -> np.ndarray:
    return np.array(
        [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
    )


def hull_area(points: np.ndarray) -> float:
    """Shoelace area of the convex hull of a 2-D point set (0 if flat)."""
    from ccl.geometry import _convex_hull_ccw

    hull = _convex_hull_ccw(points, 1e-12 * (1.0 + float(np.abs(points).max())) ** 2)
    if len(hull) < 3:
        return 0.0
    poly = points[hull]
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def two_sample_ks(a: np.ndarray, b: np.ndarray) -> float:
    """Two-sample Kolmogorov-Smirnov statistic."""
    a, b = np.sort(a), np.sort(b)
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / len(a)
    fb = np.searchsorted(b, grid, side="right") / len(b)
    return float(np.abs(fa - fb).max())
