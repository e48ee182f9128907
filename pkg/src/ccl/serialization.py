"""Constellation file schema and JSON payload builders.

One text format serves files, CLI output, and the HTTP service: a JSON
object with fields ``name``, ``dim``, ``points`` (array of coordinate
arrays) and optional ``priors`` and ``labels``. All floating-point
numbers are emitted as decimals with 17 significant digits, which makes
save/load round trips bit-exact and keeps CLI and service outputs byte
identical for identical inputs. Non-finite statistics (for example a
per-symbol error with zero trials) serialize as null.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .bounds import BoundReport
from .descriptors import ReliabilityReport, ScreenResult
from .detector import McEstimate
from .errors import ParseError
from .geometry import AngularPatch2D, Constellation


def format_float(x: float) -> str:
    """Decimal text with 17 significant digits (round-trips exactly)."""
    return format(float(x), ".17g")


def dumps(obj: Any) -> str:
    """Serialize a jsonable tree, formatting every float with 17 digits."""
    parts: list[str] = []
    _emit(obj, parts)
    return "".join(parts)


def _emit(obj: Any, parts: list[str]) -> None:
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        parts.append("null" if not math.isfinite(x) else format_float(x))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for k, (key, value) in enumerate(obj.items()):
            if k:
                parts.append(", ")
            parts.append(json.dumps(str(key)))
            parts.append(": ")
            _emit(value, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        parts.append("[")
        for k, value in enumerate(obj):
            if k:
                parts.append(", ")
            _emit(value, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _float_list(values) -> list[float]:
    return [float(v) for v in values]


def constellation_to_jsonable(c: Constellation, name: str | None = None) -> dict:
    out: dict[str, Any] = {}
    if name is not None:
        out["name"] = name
    out["dim"] = c.d
    out["points"] = [_float_list(row) for row in c.points]
    if c.priors is not None:
        out["priors"] = _float_list(c.priors)
    if c.labels is not None:
        out["labels"] = list(c.labels)
    return out


def constellation_from_jsonable(data: Any, *, where: str = "") -> Constellation:
    """Build a constellation from parsed JSON, naming bad fields on error."""
    prefix = where + "." if where else ""
    if not isinstance(data, dict):
        raise ParseError("constellation must be an object", field=where or "(root)")
    if "points" not in data:
        raise ParseError("missing required field 'points'", field=prefix + "points")
    points = data["points"]
    if not isinstance(points, list) or not points:
        raise ParseError("'points' must be a nonempty array", field=prefix + "points")
    rows: list[list[float]] = []
    width: int | None = None
    for k, row in enumerate(points):
        if not isinstance(row, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in row
        ):
            raise ParseError(
                "each point must be an array of numbers", field=f"{prefix}points[{k}]"
            )
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(
                "all points must share one dimension", field=f"{prefix}points[{k}]"
            )
        rows.append([float(v) for v in row])
    if "dim" in data and int(data["dim"]) != width:
        raise ParseError(
            f"'dim' is {data['dim']} but points have dimension {width}",
            field=prefix + "dim",
        )
    priors = data.get("priors")
    if priors is not None:
        if not isinstance(priors, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in priors
        ):
            raise ParseError("'priors' must be an array of numbers", field=prefix + "priors")
        priors = [float(v) for v in priors]
    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(v, str) for v in labels):
            raise ParseError("'labels' must be an array of strings", field=prefix + "labels")
        labels = tuple(labels)
    return Constellation(rows, labels=labels, priors=priors)


def load_constellation(path: str) -> Constellation:
    """Read a constellation file, reporting line/column on syntax errors."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"line {exc.lineno} column {exc.colno}: {exc.msg}",
            line=exc.lineno,
            column=exc.colno,
        ) from None
    return constellation_from_jsonable(data)


def save_constellation(path: str, c: Constellation, name: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(constellation_to_jsonable(c, name)))
        fh.write("\n")


def patch_jsonable(patch: AngularPatch2D) -> dict:
    return {
        "kind": patch.kind,
        "start_angle": patch.start_angle,
        "arc_length": patch.arc_length,
        "fraction": patch.fraction,
    }


def report_jsonable(rep: ReliabilityReport, labels: list[str] | None = None) -> dict:
    out: dict[str, Any] = {}
    if labels is not None:
        out["labels"] = labels
    out.update(
        {
            "angular_fraction": _float_list(rep.angular_fraction),
            "a_min": rep.a_min,
            "burden": _float_list(rep.burden),
            "b_max": rep.b_max,
            "p0": rep.p0,
            "normalized_b_max": rep.normalized_b_max,
            "collapse_flags": [bool(v) for v in rep.collapse_flags],
            "large_noise_correct_limit": _float_list(rep.large_noise_correct_limit),
            "large_noise_error_limit": _float_list(rep.large_noise_error_limit),
            "avg_large_noise_correct_limit": rep.avg_large_noise_correct_limit,
            "average_power": rep.power,
            "min_distance": rep.d_min,
            "a_estimated": rep.a_estimated,
        }
    )
    if rep.a_stderr is not None:
        out["a_stderr"] = _float_list(rep.a_stderr)
    return out


def estimate_jsonable(est: McEstimate) -> dict:
    return {
        "avg_error": est.avg_error,
        "avg_correct": est.avg_correct,
        "avg_error_ci95": list(est.avg_error_ci95),
        "per_symbol_error": _float_list(est.per_symbol_error),
        "per_symbol_correct": _float_list(est.per_symbol_correct),
        "per_symbol_error_ci95": [list(map(float, row)) for row in est.per_symbol_error_ci95],
        "per_symbol_counts": [int(v) for v in est.per_symbol_counts],
        "n_samples": est.n_samples,
        "seed": est.seed,
    }


def bound_jsonable(rep: BoundReport) -> dict:
    return {
        "gamma": rep.gamma,
        "per_symbol_exact_bound": _float_list(rep.per_symbol_exact_bound),
        "avg_exact_bound": rep.avg_exact_bound,
        "per_symbol_asymptotic_coefficient": _float_list(
            rep.per_symbol_asymptotic_coefficient
        ),
        "per_symbol_asymptotic_value": _float_list(rep.per_symbol_asymptotic_value),
        "avg_asymptotic_coefficient": rep.avg_asymptotic_coefficient,
        "avg_asymptotic_value": rep.avg_asymptotic_value,
        "avg_exact_bound_clamped": rep.avg_exact_bound_clamped,
    }


def screen_jsonable(res: ScreenResult) -> dict:
    return {
        "rejected": [{"name": n, "reason": r} for n, r in res.rejected],
        "ranked": [
            {
                "name": entry.name,
                "objective": entry.objective,
                "report": report_jsonable(entry.report),
            }
            for entry in res.ranked
        ],
        "power_mismatch": res.power_mismatch,
    }
