"""Euclidean and conic geometry of finite constellations.

Provides the constellation container plus the geometric primitives the
rest of the toolkit is built on: pairwise distance spectra, unit offset
directions, convex hull classification with exterior angles, membership
tests for the recession cone of each nearest-neighbor decision region,
and exact 2-D angular patches (the recession cone cut by the unit
circle). The angular patch fraction of a symbol is its limiting
correct-decision probability when the noise scale grows without bound,
so these routines double as the large-noise reliability descriptors.

All operations are pure functions of their inputs and safe to call
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicatePoint,
    IndexOutOfRange,
    InvalidConstellation,
    InvalidSampleCount,
    NotEnoughPoints,
)
from .rng import RngStream

TWO_PI = 2.0 * math.pi

# Arcs shorter than this are measure zero: they collapse to a ray.
DEGENERATE_ARC = 1e-12

# Relative tolerance below which two points count as the same symbol.
DUPLICATE_REL_TOL = 1e-9

_PRIOR_SUM_TOL = 1e-12


def duplicate_tolerance(points: np.ndarray) -> float:
    """Absolute distance below which two points are considered duplicates."""
    return DUPLICATE_REL_TOL * (1.0 + float(np.abs(points).max(initial=0.0)))


@dataclass(frozen=True)
class Constellation:
    """Ordered finite set of signal points in R^d.

    ``points`` is an (M, d) float array; optional ``labels`` name the
    symbols and optional ``priors`` give their transmit probabilities
    (equiprobable when omitted). Points must be pairwise distinct.
    """

    points: np.ndarray
    labels: tuple[str, ...] | None = None
    priors: np.ndarray | None = None

    def __post_init__(self):
        try:
            pts = np.asarray(self.points, dtype=float)
        except (ValueError, TypeError):
            raise DimensionMismatch(
                "all points must share one dimension", field="points"
            ) from None
        if pts.dtype == object or pts.ndim not in (1, 2):
            raise DimensionMismatch("all points must share one dimension", field="points")
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise InvalidConstellation("need M >= 1 points with d >= 1", field="points")
        if not np.isfinite(pts).all():
            raise InvalidConstellation("coordinates must be finite", field="points")
        object.__setattr__(self, "points", pts)

        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != pts.shape[0]:
                raise InvalidConstellation("labels must match point count", field="labels")
            object.__setattr__(self, "labels", labels)

        if self.priors is not None:
            pri = np.asarray(self.priors, dtype=float)
            if pri.shape != (pts.shape[0],):
                raise InvalidConstellation("priors must match point count", field="priors")
            if not np.isfinite(pri).all() or (pri < 0).any():
                raise InvalidConstellation("priors must be nonnegative", field="priors")
            if abs(float(pri.sum()) - 1.0) > _PRIOR_SUM_TOL:
                raise InvalidConstellation("priors must sum to 1", field="priors")
            object.__setattr__(self, "priors", pri)

        if pts.shape[0] >= 2:
            tol = duplicate_tolerance(pts)
            diff = pts[:, None, :] - pts[None, :, :]
            dist = np.sqrt((diff**2).sum(axis=2))
            iu = np.triu_indices(pts.shape[0], k=1)
            if (dist[iu] < tol).any():
                i, j = np.argwhere(
                    np.triu(dist < tol, k=1)
                )[0]
                raise DuplicatePoint(
                    f"points {i} and {j} coincide within tolerance {tol:g}",
                    field="points",
                )

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return f"s{i}"

    def effective_priors(self) -> np.ndarray:
        """Priors if set, otherwise the equiprobable vector."""
        if self.priors is not None:
            return self.priors
        return np.full(self.m, 1.0 / self.m)

    def diameter(self) -> float:
        """Largest pairwise distance (0 for a single point)."""
        if self.m < 2:
            return 0.0
        diff = self.points[:, None, :] - self.points[None, :, :]
        return float(np.sqrt((diff**2).sum(axis=2)).max())


@dataclass(frozen=True)
class DistanceSpectrum:
    """All pairwise distances, stored once per unordered pair (i < j)."""

    entries: tuple[tuple[int, int, float], ...]

    def distances(self) -> np.ndarray:
        return np.array([d for _, _, d in self.entries])

    def min(self) -> float:
        return min(d for _, _, d in self.entries)


@dataclass(frozen=True)
class AngularPatch2D:
    """Arc of the unit circle covered by a symbol's recession cone.

    ``kind`` is one of ``empty``, ``degenerate_ray``, ``arc``,
    ``full_circle``. Rays and the empty patch have zero arc length; for
    a ray ``start_angle`` is the ray direction. Angles live in [0, 2*pi).
    """

    kind: str
    start_angle: float = 0.0
    arc_length: float = 0.0

    def __post_init__(self):
        if self.kind not in ("empty", "degenerate_ray", "arc", "full_circle"):
            raise ValueError(f"unknown patch kind {self.kind!r}")
        if self.kind in ("empty", "degenerate_ray") and self.arc_length != 0.0:
            raise ValueError("zero-measure patch must have arc_length 0")
        if self.kind == "arc" and not 0.0 < self.arc_length <= TWO_PI:
            raise ValueError("arc length must lie in (0, 2*pi]")

    @property
    def fraction(self) -> float:
        """Normalized angular measure, the large-noise correct-decision limit."""
        if self.kind == "full_circle":
            return 1.0
        if self.kind == "arc":
            return self.arc_length / TWO_PI
        return 0.0

    @property
    def end_angle(self) -> float:
        return _normalize_angle(self.start_angle + self.arc_length)


@dataclass(frozen=True)
class HullTag:
    """Convex hull classification of one point.

    ``kind`` is ``vertex`` (with the hull's exterior angle there),
    ``edge_interior`` (on the boundary but not a corner), or
    ``interior``.
    """

    kind: str
    exterior_angle: float | None = None


def _normalize_angle(a: float) -> float:
    """Map an angle to [0, 2*pi)."""
    a = math.fmod(a, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    if a >= TWO_PI:
        a = 0.0
    return a


def _check_index(c: Constellation, i: int) -> int:
    i = int(i)
    if not 0 <= i < c.m:
        raise IndexOutOfRange(f"index {i} outside [0, {c.m})")
    return i


def _as_vector(c: Constellation, u: Sequence[float] | np.ndarray) -> np.ndarray:
    v = np.asarray(u, dtype=float)
    if v.shape != (c.d,):
        raise DimensionMismatch(f"expected a vector of dimension {c.d}, got shape {v.shape}")
    return v


def distance_spectrum(c: Constellation) -> DistanceSpectrum:
    """Multiset of pairwise Euclidean distances d_ij for i < j."""
    tol = duplicate_tolerance(c.points)
    entries = []
    for i in range(c.m):
        for j in range(i + 1, c.m):
            d = float(np.linalg.norm(c.points[j] - c.points[i]))
            if d < tol:
                raise DuplicatePoint(f"points {i} and {j} coincide")
            entries.append((i, j, d))
    return DistanceSpectrum(tuple(entries))


def pairwise_direction(c: Constellation, i: int, j: int) -> np.ndarray:
    """Unit vector pointing from point i toward point j."""
    i, j = _check_index(c, i), _check_index(c, j)
    if i == j:
        raise DuplicatePoint("direction needs two distinct indices")
    off = c.points[j] - c.points[i]
    norm = float(np.linalg.norm(off))
    if norm < duplicate_tolerance(c.points):
        raise DuplicatePoint(f"points {i} and {j} coincide")
    return off / norm


def cone_contains(c: Constellation, i: int, u: Sequence[float] | np.ndarray) -> bool:
    """Whether direction u lies in the recession cone of point i's cell.

    The cone is the set of directions u with u . (x_j - x_i) <= 0 for
    every competitor j; the boundary counts as inside, and membership is
    invariant to positive rescaling of u.
    """
    i = _check_index(c, i)
    v = _as_vector(c, u)
    if not np.isfinite(v).all():
        raise DimensionMismatch("direction must be finite")
    offsets = np.delete(c.points, i, axis=0) - c.points[i]
    return bool((offsets @ v <= 0.0).all())


def cone_contains_many(c: Constellation, i: int, directions: np.ndarray) -> np.ndarray:
    """Vectorized cone membership for an (n, d) stack of directions."""
    i = _check_index(c, i)
    dirs = np.asarray(directions, dtype=float)
    if dirs.ndim != 2 or dirs.shape[1] != c.d:
        raise DimensionMismatch(f"expected shape (n, {c.d})")
    offsets = np.delete(c.points, i, axis=0) - c.points[i]
    return (dirs @ offsets.T <= 0.0).all(axis=1)


def _arc_pieces(start: float, length: float) -> list[tuple[float, float]]:
    """Split a circular arc into closed non-wrapping [lo, hi] pieces in [0, 2*pi]."""
    s = _normalize_angle(start)
    e = s + length
    if e <= TWO_PI:
        return [(s, e)]
    return [(s, TWO_PI), (0.0, e - TWO_PI)]


def _merge_pieces(pieces: list[tuple[float, float]]) -> list[tuple[float, float]]:
    if not pieces:
        return []
    pieces = sorted(pieces)
    merged = [list(pieces[0])]
    for lo, hi in pieces[1:]:
        if lo <= merged[-1][1] + DEGENERATE_ARC:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return [(lo, hi) for lo, hi in merged]


def _intersect_pieces(
    a: list[tuple[float, float]], b: list[tuple[float, float]]
) -> list[tuple[float, float]]:
    out = []
    for lo1, hi1 in a:
        for lo2, hi2 in b:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            # Closed arcs: keep shared endpoints (hi == lo) as point pieces.
            if hi >= lo - DEGENERATE_ARC:
                out.append((lo, max(lo, hi)))
    return _merge_pieces(out)


def _stitch_wraparound(pieces: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Join the piece ending at 2*pi with the piece starting at 0, as (start, length)."""
    arcs = [(lo, hi - lo) for lo, hi in pieces]
    if (
        len(pieces) >= 2
        and pieces[0][0] <= DEGENERATE_ARC
        and pieces[-1][1] >= TWO_PI - DEGENERATE_ARC
    ):
        first, last = pieces[0], pieces[-1]
        joined = (last[0], (TWO_PI - last[0]) + (first[1] - first[0]))
        arcs = [joined] + arcs[1:-1]
    return arcs


def angular_patch_2d(c: Constellation, i: int) -> AngularPatch2D:
    """Exact angular patch of point i's recession cone on the unit circle.

    Each competitor j contributes the closed half-circle of directions at
    angle >= pi/2 away from the offset direction toward j; the patch is
    the intersection of those arcs. A single point keeps the full circle,
    and intersections of zero total measure collapse to a ray (or, when
    even the ray set is empty, to the empty patch).
    """
    i = _check_index(c, i)
    if c.d != 2:
        raise DimensionMismatch("exact angular patches require d = 2")
    if c.m == 1:
        return AngularPatch2D("full_circle", 0.0, TWO_PI)

    pieces = [(0.0, TWO_PI)]
    for j in range(c.m):
        if j == i:
            continue
        off = c.points[j] - c.points[i]
        phi = math.atan2(off[1], off[0])
        constraint = _arc_pieces(phi + 0.5 * math.pi, math.pi)
        pieces = _intersect_pieces(pieces, constraint)
        if not pieces:
            return AngularPatch2D("empty")

    arcs = _stitch_wraparound(pieces)
    total = sum(length for _, length in arcs)
    if total < DEGENERATE_ARC:
        # Measure-zero cone: a ray, or a full line when the hull is flat.
        # Report the component with the smallest canonical start angle.
        start, length = min(arcs, key=lambda a: _normalize_angle(a[0]))
        return AngularPatch2D("degenerate_ray", _normalize_angle(start + 0.5 * length))

    # The cone is convex, so exactly one component carries positive measure.
    start, length = max(arcs, key=lambda a: a[1])
    if length > math.pi + 1e-9:
        raise AssertionError("recession cone patch wider than a half-circle")
    return AngularPatch2D("arc", _normalize_angle(start), min(length, math.pi))


def patch_angular_distance(patch: AngularPatch2D, angle: float) -> float:
    """Circular distance from an angle to the patch (0 when inside)."""
    if patch.kind == "full_circle":
        return 0.0
    if patch.kind == "empty":
        return math.pi
    th = _normalize_angle(angle)
    delta = _normalize_angle(th - patch.start_angle)
    if delta <= patch.arc_length:
        return 0.0
    past = delta - patch.arc_length
    return min(past, TWO_PI - delta)


@dataclass(frozen=True)
class SphereFractionEstimate:
    """Monte Carlo estimate of a cone's normalized angular measure."""

    fraction: float
    stderr: float
    n_samples: int
    hits: int


def sphere_fraction_mc(
    c: Constellation, i: int, n_samples: int, seed: int, stream_index: int = 0
) -> SphereFractionEstimate:
    """Estimate the angular fraction by sampling uniform unit directions.

    Directions are isotropic (normalized Gaussian vectors); the returned
    standard error is the binomial sqrt(p(1-p)/n).
    """
    i = _check_index(c, i)
    n = int(n_samples)
    if n < 1:
        raise InvalidSampleCount("need at least one direction sample")
    gen = RngStream(seed, stream_index).generator()
    g = gen.standard_normal((n, c.d))
    norms = np.linalg.norm(g, axis=1)
    while (zero := norms == 0.0).any():
        g[zero] = gen.standard_normal((int(zero.sum()), c.d))
        norms = np.linalg.norm(g, axis=1)
    dirs = g / norms[:, None]
    hits = int(cone_contains_many(c, i, dirs).sum())
    p = hits / n
    return SphereFractionEstimate(p, math.sqrt(p * (1.0 - p) / n), n, hits)


def angular_fraction(
    c: Constellation,
    i: int,
    method: str = "exact2d",
    *,
    n_samples: int | None = None,
    seed: int = 0,
) -> float:
    """Normalized angular measure of point i's recession cone.

    ``exact2d`` computes the arc fraction in closed form (planar only);
    ``sphere_mc`` estimates it from ``n_samples`` uniform directions and
    works in any dimension.
    """
    if method == "exact2d":
        return angular_patch_2d(c, i).fraction
    if method == "sphere_mc":
        if n_samples is None:
            raise InvalidSampleCount("sphere_mc requires n_samples")
        return sphere_fraction_mc(c, i, n_samples, seed).fraction
    raise ValueError(f"unknown method {method!r}")


def _convex_hull_ccw(pts: np.ndarray, cross_eps: float) -> list[int]:
    """Indices of strict hull vertices in counterclockwise order (monotone chain)."""
    order = sorted(range(len(pts)), key=lambda k: (pts[k, 0], pts[k, 1]))

    def turn(o: int, a: int, b: int) -> float:
        return float(
            (pts[a, 0] - pts[o, 0]) * (pts[b, 1] - pts[o, 1])
            - (pts[a, 1] - pts[o, 1]) * (pts[b, 0] - pts[o, 0])
        )

    def build(seq: list[int]) -> list[int]:
        out: list[int] = []
        for k in seq:
            # Pop non-left turns so collinear points never become vertices.
            while len(out) >= 2 and turn(out[-2], out[-1], k) <= cross_eps:
                out.pop()
            out.append(k)
        return out

    lower = build(order)
    upper = build(order[::-1])
    return lower[:-1] + upper[:-1]


def _point_segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    t = float(np.dot(p - a, ab) / np.dot(ab, ab))
    t = min(1.0, max(0.0, t))
    return float(np.linalg.norm(p - (a + t * ab)))


def hull_classify(c: Constellation) -> list[HullTag]:
    """Tag every point as hull vertex, edge point, or interior point.

    Hull vertices carry their exterior angle (the turn angle of the hull
    boundary there), which is exactly 2*pi times the point's angular
    fraction. Flat (collinear) constellations follow the degenerate
    rule: the two extreme points are vertices with exterior angle pi and
    everything between them is interior.
    """
    if c.d != 2:
        raise DimensionMismatch("hull classification requires d = 2")
    pts = c.points
    if c.m == 1:
        return [HullTag("vertex", TWO_PI)]

    scale = 1.0 + float(np.abs(pts).max())
    cross_eps = 1e-12 * scale * scale
    dist_eps = DUPLICATE_REL_TOL * scale

    hull = _convex_hull_ccw(pts, cross_eps)
    tags: dict[int, HullTag] = {}

    if len(hull) <= 2:
        # Flat hull: the segment's endpoints see a closed half-plane each.
        lo = min(range(c.m), key=lambda k: (pts[k, 0], pts[k, 1]))
        hi = max(range(c.m), key=lambda k: (pts[k, 0], pts[k, 1]))
        return [
            HullTag("vertex", math.pi) if k in (lo, hi) else HullTag("interior")
            for k in range(c.m)
        ]

    k = len(hull)
    for pos, idx in enumerate(hull):
        prev_pt = pts[hull[(pos - 1) % k]]
        next_pt = pts[hull[(pos + 1) % k]]
        e_in = pts[idx] - prev_pt
        e_out = next_pt - pts[idx]
        ext = math.atan2(
            e_in[0] * e_out[1] - e_in[1] * e_out[0], float(np.dot(e_in, e_out))
        )
        tags[idx] = HullTag("vertex", ext)

    for idx in range(c.m):
        if idx in tags:
            continue
        on_edge = any(
            _point_segment_distance(pts[idx], pts[hull[p]], pts[hull[(p + 1) % k]])
            < dist_eps
            for p in range(k)
        )
        tags[idx] = HullTag("edge_interior" if on_edge else "interior")

    return [tags[idx] for idx in range(c.m)]


def average_power(c: Constellation) -> float:
    """Prior-weighted mean squared norm of the constellation points."""
    return float(np.dot(c.effective_priors(), (c.points**2).sum(axis=1)))


def min_distance(c: Constellation) -> float:
    """Smallest pairwise distance."""
    if c.m < 2:
        raise NotEnoughPoints("minimum distance needs M >= 2")
    return distance_spectrum(c).min()
