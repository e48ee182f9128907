"""Design-level reliability descriptors and the two-stage candidate screen.

A planar constellation is summarized by two families of numbers: the
angular fractions A_i (large-noise correct-decision limits, zero exactly
for symbols that collapse) and the reciprocal-distance burdens B_i
(small-noise bound slopes up to 2/pi). The screen first discards any
candidate whose worst symbol collapses (a_min = 0) and then ranks the
survivors by the scalar surrogate

    J(lambda) = lambda * sqrt(p0) * max_i B_i - (1 - lambda) * min_i A_i,

smaller being better. The sqrt(p0) factor makes the burden term
dimensionless under a common average power budget p0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import bounds, geometry
from .errors import (
    EmptyCandidateList,
    LambdaOutOfRange,
    NonpositivePower,
)
from .geometry import Constellation

# Angular fractions below this count as exact geometric collapse.
COLLAPSE_TOL = 1e-12

# One-sided 99% score bound used to call collapse on estimated fractions.
_Z99_ONE_SIDED = 2.3263478740408408
_MC_COLLAPSE_UPPER = 1e-3

DEFAULT_SPHERE_SAMPLES = 100_000


@dataclass(frozen=True)
class ReliabilityReport:
    """Per-symbol and aggregate descriptors of one constellation.

    ``angular_fraction[i]`` equals the exact large-noise correct-decision
    limit of symbol i (so ``large_noise_error_limit`` is its complement),
    and ``collapse_flags[i]`` marks fractions at zero. When the fractions
    had to be estimated by direction sampling (d != 2), ``a_estimated``
    is set and ``a_stderr`` carries the binomial standard errors.
    """

    angular_fraction: np.ndarray
    a_min: float
    burden: np.ndarray
    b_max: float
    p0: float
    normalized_b_max: float
    collapse_flags: np.ndarray
    large_noise_correct_limit: np.ndarray
    large_noise_error_limit: np.ndarray
    avg_large_noise_correct_limit: float
    power: float
    d_min: float
    a_estimated: bool = False
    a_stderr: np.ndarray | None = None


def report(
    c: Constellation,
    *,
    p0: float | None = None,
    sphere_samples: int = DEFAULT_SPHERE_SAMPLES,
    seed: int = 0,
) -> ReliabilityReport:
    """Assemble the full descriptor report for one constellation.

    Planar constellations get exact angular fractions; other dimensions
    fall back to direction sampling, where a symbol is flagged collapsed
    when the one-sided 99% upper confidence bound on its fraction is
    below 1e-3. ``p0`` defaults to the constellation's own average power.
    """
    power = geometry.average_power(c)
    if p0 is None:
        p0 = power
    if not p0 > 0:
        raise NonpositivePower("power budget must be > 0")

    estimated = c.d != 2
    if not estimated:
        fractions = np.array(
            [geometry.angular_patch_2d(c, i).fraction for i in range(c.m)]
        )
        stderr = None
        flags = fractions < COLLAPSE_TOL
    else:
        ests = [
            geometry.sphere_fraction_mc(c, i, sphere_samples, seed, stream_index=i)
            for i in range(c.m)
        ]
        fractions = np.array([e.fraction for e in ests])
        stderr = np.array([e.stderr for e in ests])
        uppers = np.array(
            [
                _one_sided_upper(e.hits, e.n_samples)
                for e in ests
            ]
        )
        flags = uppers < _MC_COLLAPSE_UPPER

    burdens = np.array([bounds.burden(c, i) for i in range(c.m)])
    b_max = float(burdens.max())
    return ReliabilityReport(
        angular_fraction=fractions,
        a_min=float(fractions.min()),
        burden=burdens,
        b_max=b_max,
        p0=float(p0),
        normalized_b_max=math.sqrt(p0) * b_max,
        collapse_flags=flags,
        large_noise_correct_limit=fractions,
        large_noise_error_limit=1.0 - fractions,
        avg_large_noise_correct_limit=float(fractions.mean()),
        power=power,
        d_min=geometry.min_distance(c),
        a_estimated=estimated,
        a_stderr=stderr,
    )


def _one_sided_upper(successes: int, trials: int) -> float:
    z = _Z99_ONE_SIDED
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2.0 * trials)) / denom
    margin = (z / denom) * math.sqrt(
        p * (1.0 - p) / trials + z * z / (4.0 * trials * trials)
    )
    return center + margin


def normalized_burden_max(c: Constellation, p0: float) -> float:
    """Power-normalized worst-symbol burden sqrt(p0) * max_i B_i."""
    if not p0 > 0:
        raise NonpositivePower("power budget must be > 0")
    return math.sqrt(p0) * bounds.burden_max(c)


def joint_objective(c: Constellation, lam: float, p0: float) -> float:
    """Scalar screening surrogate; smaller values rank better."""
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRange("lambda must lie in [0, 1]")
    rep = report(c, p0=p0)
    return lam * rep.normalized_b_max - (1.0 - lam) * rep.a_min


@dataclass(frozen=True)
class ScreenEntry:
    name: str
    objective: float
    report: ReliabilityReport


@dataclass(frozen=True)
class ScreenResult:
    """Outcome of the two-stage screen over a candidate list.

    ``rejected`` holds (name, reason) pairs from the collapse stage;
    ``ranked`` lists survivors sorted by ascending objective, ties kept
    in input order. ``power_mismatch`` warns that the candidates do not
    share one average power budget (the ranking assumes they do).
    """

    rejected: tuple[tuple[str, str], ...]
    ranked: tuple[ScreenEntry, ...]
    power_mismatch: bool


def screen(
    candidates: Sequence[Constellation],
    lam: float = 0.5,
    p0: float | Sequence[float] | None = None,
    names: Sequence[str] | None = None,
) -> ScreenResult:
    """Two-stage screen: drop collapsing candidates, rank the rest by J.

    ``p0`` may be a single common budget, one value per candidate, or
    None to use each candidate's own average power. Candidates whose
    average powers differ by more than 1e-9 relative raise the
    ``power_mismatch`` flag but are still ranked.
    """
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRange("lambda must lie in [0, 1]")
    cands = list(candidates)
    if not cands:
        raise EmptyCandidateList("need at least one candidate")
    if names is None:
        names = [f"candidate-{k}" for k in range(len(cands))]
    names = [str(s) for s in names]
    if len(names) != len(cands):
        raise EmptyCandidateList("names must match the candidate count")

    if p0 is None:
        budgets = [None] * len(cands)
    elif np.ndim(p0) == 0:
        budgets = [float(p0)] * len(cands)
    else:
        budgets = [float(v) for v in np.asarray(p0, dtype=float)]
        if len(budgets) != len(cands):
            raise NonpositivePower("per-candidate p0 must match the candidate count")

    powers = [geometry.average_power(c) for c in cands]
    pmax = max(powers)
    mismatch = (pmax - min(powers)) > 1e-9 * max(pmax, 1e-300)

    rejected: list[tuple[str, str]] = []
    survivors: list[ScreenEntry] = []
    for name, cand, budget in zip(names, cands, budgets):
        rep = report(cand, p0=budget)
        if rep.a_min < COLLAPSE_TOL or (rep.a_estimated and rep.collapse_flags.any()):
            rejected.append((name, "geometric collapse"))
            continue
        obj = lam * rep.normalized_b_max - (1.0 - lam) * rep.a_min
        survivors.append(ScreenEntry(name, obj, rep))

    ranked = sorted(survivors, key=lambda e: e.objective)
    return ScreenResult(tuple(rejected), tuple(ranked), mismatch)
