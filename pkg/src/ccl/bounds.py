"""Closed-form small-noise reliability machinery.

Conditioned on one transmitted symbol, the probability that a competitor
at distance d_ij looks at least as likely is exactly
``1/2 - arctan(d_ij / (2 gamma)) / pi``: the projected noise is scalar
Cauchy, so the pairwise term depends on the pair only through its
distance. Summing the terms over competitors gives a union upper bound
on the conditional symbol error probability, valid for every gamma, and
expanding the arctangent for small gamma yields the leading-order linear
coefficient (2/pi) * sum 1/d_ij with a cubic remainder. The reciprocal
distance sums are exposed separately as per-symbol "burdens", the
distance-side screening descriptor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonpositiveInput, NotEnoughPoints
from .geometry import Constellation


def pairwise_error_term(d_ij: float, gamma: float) -> float:
    """Tail probability of a single pairwise comparison, in (0, 1/2)."""
    if not d_ij > 0:
        raise NonpositiveInput("pairwise distance must be > 0")
    if not gamma > 0:
        raise NonpositiveInput("gamma must be > 0")
    return 0.5 - math.atan(d_ij / (2.0 * gamma)) / math.pi


def _competitor_distances(c: Constellation, i: int) -> np.ndarray:
    if c.m < 2:
        raise NotEnoughPoints("need M >= 2 for pairwise terms")
    off = np.delete(c.points, i, axis=0) - c.points[i]
    return np.sqrt((off**2).sum(axis=1))


def union_bound_symbol(c: Constellation, i: int, gamma: float) -> float:
    """Union upper bound on the conditional error probability of symbol i."""
    if not gamma > 0:
        raise NonpositiveInput("gamma must be > 0")
    dists = _competitor_distances(c, i)
    return float((0.5 - np.arctan(dists / (2.0 * gamma)) / math.pi).sum())


def union_bound_average(c: Constellation, gamma: float) -> float:
    """Equiprobable average of the per-symbol union bounds."""
    if c.m < 2:
        raise NotEnoughPoints("need M >= 2 for the union bound")
    return float(
        np.mean([union_bound_symbol(c, i, gamma) for i in range(c.m)])
    )


def burden(c: Constellation, i: int) -> float:
    """Reciprocal-distance burden of symbol i: sum over j != i of 1/d_ij."""
    return float((1.0 / _competitor_distances(c, i)).sum())


def burden_max(c: Constellation) -> float:
    """Worst-symbol reciprocal-distance burden."""
    return max(burden(c, i) for i in range(c.m))


def asymptotic_coefficient_symbol(c: Constellation, i: int) -> float:
    """Slope of the leading-order small-noise bound for symbol i: (2/pi) B_i."""
    return (2.0 / math.pi) * burden(c, i)


def asymptotic_coefficient_average(c: Constellation) -> float:
    """Slope of the leading-order small-noise bound on the average error."""
    if c.m < 2:
        raise NotEnoughPoints("need M >= 2 for the asymptotic coefficient")
    total = 0.0
    for i in range(c.m):
        for j in range(i + 1, c.m):
            total += 1.0 / float(np.linalg.norm(c.points[j] - c.points[i]))
    return 4.0 / (c.m * math.pi) * total


@dataclass(frozen=True)
class BoundReport:
    """Exact union bounds and their linear asymptotics at one noise scale.

    Exact bounds are reported unclamped even when they exceed 1 (the
    bound expression itself is the object of interest); the ``*_clamped``
    properties provide min(bound, 1) for plotting.
    """

    gamma: float
    per_symbol_exact_bound: np.ndarray
    avg_exact_bound: float
    per_symbol_asymptotic_coefficient: np.ndarray
    per_symbol_asymptotic_value: np.ndarray
    avg_asymptotic_coefficient: float
    avg_asymptotic_value: float

    @property
    def per_symbol_exact_bound_clamped(self) -> np.ndarray:
        return np.minimum(self.per_symbol_exact_bound, 1.0)

    @property
    def avg_exact_bound_clamped(self) -> float:
        return min(self.avg_exact_bound, 1.0)


def bound_report(c: Constellation, gamma: float) -> BoundReport:
    """Assemble per-symbol and average bounds plus asymptotics at one gamma."""
    per = np.array([union_bound_symbol(c, i, gamma) for i in range(c.m)])
    coef = np.array([asymptotic_coefficient_symbol(c, i) for i in range(c.m)])
    avg_coef = asymptotic_coefficient_average(c)
    return BoundReport(
        gamma=float(gamma),
        per_symbol_exact_bound=per,
        avg_exact_bound=float(per.mean()),
        per_symbol_asymptotic_coefficient=coef,
        per_symbol_asymptotic_value=coef * gamma,
        avg_asymptotic_coefficient=avg_coef,
        avg_asymptotic_value=avg_coef * gamma,
    )
