"""Canned validation experiments and their CSV emission.

Four experiments back the documentation figures: small-noise bound
validation and large-noise limit validation on the asymmetric four-point
benchmark, and the two matched design comparisons (pentagon versus
cross-with-center, rectangle versus kite). Each experiment produces one
CSV per figure panel; all numbers are written with 17 significant
digits, so a fixed seed reproduces byte-identical files.
"""

from __future__ import annotations

import csv
import math
import os
from typing import Iterable

from . import bounds, descriptors
from .catalog import catalog_get
from .detector import McConfig, McEstimate, sweep
from .serialization import format_float

SMALL_NOISE_GRID = (0.01, 0.012, 0.015, 0.02, 0.03, 0.04, 0.06, 0.08, 0.12)
LARGE_NOISE_GRID = (0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 12.0, 20.0, 30.0)
HULL_COMPARISON_GRID = (0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 12.0, 20.0, 30.0)
BURDEN_COMPARISON_GRID = SMALL_NOISE_GRID

Panel = tuple[list[str], list[list[float]]]


def _worst_correct(est: McEstimate) -> tuple[float, float]:
    """Smallest per-symbol correct rate and its interval halfwidth."""
    idx = int(est.per_symbol_correct.argmin())
    return float(est.per_symbol_correct[idx]), float(est.per_symbol_ci95_halfwidth[idx])


def _worst_error(est: McEstimate) -> tuple[float, float]:
    idx = int(est.per_symbol_error.argmax())
    return float(est.per_symbol_error[idx]), float(est.per_symbol_ci95_halfwidth[idx])


def run_small_noise(cfg: McConfig) -> dict[str, Panel]:
    entry = catalog_get("asym4")
    c = entry.constellation
    labels = [c.label(i) for i in range(c.m)]
    results = sweep(c, SMALL_NOISE_GRID, cfg)

    avg_header = ["gamma", "mc_avg_err", "ci", "union_bound", "asymptotic"]
    avg_rows = []
    sym_header = ["gamma"]
    for lab in labels:
        sym_header += [f"err_{lab}", f"ci_{lab}", f"bound_{lab}", f"asymptotic_{lab}"]
    sym_rows = []
    for gamma, est in results:
        rep = bounds.bound_report(c, gamma)
        avg_rows.append(
            [gamma, est.avg_error, est.avg_ci95_halfwidth, rep.avg_exact_bound, rep.avg_asymptotic_value]
        )
        row = [gamma]
        for i in range(c.m):
            row += [
                est.per_symbol_error[i],
                est.per_symbol_ci95_halfwidth[i],
                rep.per_symbol_exact_bound[i],
                rep.per_symbol_asymptotic_value[i],
            ]
        sym_rows.append(row)
    return {
        "smallnoise_average": (avg_header, avg_rows),
        "smallnoise_per_symbol": (sym_header, sym_rows),
    }


def run_large_noise(cfg: McConfig) -> dict[str, Panel]:
    entry = catalog_get("asym4")
    c = entry.constellation
    labels = [c.label(i) for i in range(c.m)]
    rep = descriptors.report(c)
    results = sweep(c, LARGE_NOISE_GRID, cfg)

    avg_header = ["gamma", "mc_avg_correct", "ci", "limit"]
    avg_rows = [
        [gamma, est.avg_correct, est.avg_ci95_halfwidth, rep.avg_large_noise_correct_limit]
        for gamma, est in results
    ]
    sym_header = ["gamma"]
    for lab in labels:
        sym_header += [f"correct_{lab}", f"ci_{lab}", f"limit_{lab}"]
    sym_rows = []
    for gamma, est in results:
        row = [gamma]
        for i in range(c.m):
            row += [
                est.per_symbol_correct[i],
                est.per_symbol_ci95_halfwidth[i],
                rep.large_noise_correct_limit[i],
            ]
        sym_rows.append(row)
    return {
        "largenoise_average": (avg_header, avg_rows),
        "largenoise_per_symbol": (sym_header, sym_rows),
    }


def run_hull_comparison(cfg: McConfig) -> dict[str, Panel]:
    names = ["pentagon5", "cross5"]
    cands = {n: catalog_get(n).constellation for n in names}
    reps = {n: descriptors.report(c) for n, c in cands.items()}
    runs = {n: sweep(c, HULL_COMPARISON_GRID, cfg) for n, c in cands.items()}

    avg_header = ["gamma"]
    worst_header = ["gamma"]
    for n in names:
        avg_header += [f"{n}_avg_correct", f"{n}_ci", f"{n}_limit"]
        worst_header += [f"{n}_worst_correct", f"{n}_ci", f"{n}_worst_limit"]
    avg_rows, worst_rows = [], []
    for k, gamma in enumerate(HULL_COMPARISON_GRID):
        avg_row, worst_row = [gamma], [gamma]
        for n in names:
            est = runs[n][k][1]
            avg_row += [est.avg_correct, est.avg_ci95_halfwidth, reps[n].avg_large_noise_correct_limit]
            wc, whw = _worst_correct(est)
            worst_row += [wc, whw, reps[n].a_min]
        avg_rows.append(avg_row)
        worst_rows.append(worst_row)
    return {
        "hull_average": (avg_header, avg_rows),
        "hull_worst": (worst_header, worst_rows),
    }


def run_burden_comparison(cfg: McConfig) -> dict[str, Panel]:
    names = ["rect4", "kite4"]
    cands = {n: catalog_get(n).constellation for n in names}
    bmax = {n: bounds.burden_max(c) for n, c in cands.items()}
    runs = {n: sweep(c, BURDEN_COMPARISON_GRID, cfg) for n, c in cands.items()}

    avg_header = ["gamma"]
    worst_header = ["gamma"]
    for n in names:
        avg_header += [f"{n}_avg_err", f"{n}_ci"]
        worst_header += [f"{n}_worst_err", f"{n}_ci"]
    worst_header += [f"{n}_surrogate" for n in names]
    avg_rows, worst_rows = [], []
    for k, gamma in enumerate(BURDEN_COMPARISON_GRID):
        avg_row, worst_row = [gamma], [gamma]
        for n in names:
            est = runs[n][k][1]
            avg_row += [est.avg_error, est.avg_ci95_halfwidth]
            we, whw = _worst_error(est)
            worst_row += [we, whw]
        # Linear worst-symbol surrogate (2 gamma / pi) * B_max.
        worst_row += [(2.0 * gamma / math.pi) * bmax[n] for n in names]
        avg_rows.append(avg_row)
        worst_rows.append(worst_row)
    return {
        "burden_average": (avg_header, avg_rows),
        "burden_worst": (worst_header, worst_rows),
    }


EXPERIMENTS = {
    "small-noise": run_small_noise,
    "large-noise": run_large_noise,
    "hull-comparison": run_hull_comparison,
    "burden-comparison": run_burden_comparison,
}


def write_panels(panels: dict[str, Panel], out_dir: str) -> list[str]:
    """Write one CSV per panel into out_dir; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for name, (header, rows) in panels.items():
        path = os.path.join(out_dir, f"{name}.csv")
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_float(v) for v in row])
        written.append(path)
    return written


def run_experiments(names: Iterable[str], cfg: McConfig, out_dir: str) -> list[str]:
    written = []
    for name in names:
        panels = EXPERIMENTS[name](cfg)
        written += write_panels(panels, out_dir)
    return written
