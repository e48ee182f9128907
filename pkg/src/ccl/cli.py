"""Command-line interface.

Subcommands: ``analyze`` (descriptor report), ``bound`` (union bounds
over a gamma grid), ``mc`` (Monte Carlo sweep with confidence
intervals), ``screen`` (two-stage design screen), ``reproduce`` (canned
validation experiments, one CSV per figure panel) and ``serve`` (the
JSON HTTP service).

Option values resolve with the precedence: explicit flag, then a
``CCL_``-prefixed environment variable, then a JSON config file passed
with ``--config``, then the built-in default. Constellation arguments
accept either a catalog name or a path to a constellation file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Any, Callable, Sequence

from . import bounds, descriptors, experiments, server
from .catalog import CATALOG, catalog_get, catalog_names
from .detector import McConfig, sweep
from .errors import CclError, EmptyGrid, ParseError, UnknownName
from .geometry import Constellation
from .serialization import (
    bound_jsonable,
    dumps,
    estimate_jsonable,
    format_float,
    load_constellation,
    report_jsonable,
    screen_jsonable,
)

_FORMATS = ("table", "csv", "json")

DEFAULTS = {
    "samples": 500_000,
    "batch": 100_000,
    "seed": 2026,
    "lambda": 0.5,
    "format": "table",
    "bind": "127.0.0.1:8787",
    "mc_cap": server.DEFAULT_MC_CAP,
    "out": None,
    "p0": None,
}


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"config file {path} line {exc.lineno}: {exc.msg}",
            line=exc.lineno,
            column=exc.colno,
        ) from None
    if not isinstance(data, dict):
        raise ParseError("config file must hold a JSON object")
    return data


def _resolve(args: argparse.Namespace, config: dict, key: str, cast: Callable):
    """Flag > CCL_* environment variable > config file > default."""
    attr = key.replace("-", "_")
    cli_value = getattr(args, attr, None)
    if cli_value is not None:
        return cli_value
    env_value = os.environ.get("CCL_" + attr.upper())
    if env_value is not None:
        return cast(env_value)
    if attr in config:
        return cast(config[attr])
    default = DEFAULTS.get(attr)
    return default


def load_any_constellation(ref: str) -> tuple[str, Constellation]:
    """Resolve a catalog name or a file path to (name, constellation)."""
    if ref in CATALOG:
        entry = catalog_get(ref)
        return entry.name, entry.constellation
    if os.path.exists(ref):
        name = os.path.splitext(os.path.basename(ref))[0]
        return name, load_constellation(ref)
    raise UnknownName(
        f"{ref!r} is neither a catalog name ({', '.join(catalog_names())}) nor a file"
    )


def _parse_grid(args: argparse.Namespace, config: dict) -> list[float]:
    grid_text = _resolve(args, config, "grid", str)
    gamma_value = getattr(args, "gamma", None)
    if grid_text is not None and gamma_value is not None:
        raise EmptyGrid("give either --gamma or --grid, not both")
    if gamma_value is not None:
        values = [float(g) for g in gamma_value]
    elif grid_text is not None:
        try:
            values = [float(tok) for tok in str(grid_text).replace(" ", "").split(",") if tok]
        except ValueError:
            raise EmptyGrid(f"could not parse grid {grid_text!r}") from None
    else:
        raise EmptyGrid("a gamma grid is required (--gamma or --grid)")
    if not values:
        raise EmptyGrid("gamma grid must be nonempty")
    if any(g <= 0 for g in values):
        raise EmptyGrid("gamma values must be > 0")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise EmptyGrid("gamma grid must be strictly increasing")
    return values


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text)


def _csv_text(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_float(v) if isinstance(v, float) else str(v) for v in row]
        )
    return buf.getvalue()


def _g(x: float) -> str:
    return format(float(x), ".10g")


def _mc_config(args: argparse.Namespace, config: dict) -> McConfig:
    return McConfig(
        n_samples=int(_resolve(args, config, "samples", int)),
        batch_size=int(_resolve(args, config, "batch", int)),
        seed=int(_resolve(args, config, "seed", int)),
    )


def _cmd_analyze(args: argparse.Namespace, config: dict) -> int:
    name, c = load_any_constellation(args.constellation)
    p0 = _resolve(args, config, "p0", float)
    rep = descriptors.report(c, p0=None if p0 is None else float(p0))
    labels = [c.label(i) for i in range(c.m)]
    fmt = _resolve(args, config, "format", str)
    out = _resolve(args, config, "out", str)

    if fmt == "json":
        _emit(dumps(report_jsonable(rep, labels=labels)), out)
    elif fmt == "csv":
        header = [
            "label",
            "angular_fraction",
            "burden",
            "collapse",
            "correct_limit",
            "error_limit",
        ]
        rows = [
            [
                labels[i],
                float(rep.angular_fraction[i]),
                float(rep.burden[i]),
                int(rep.collapse_flags[i]),
                float(rep.large_noise_correct_limit[i]),
                float(rep.large_noise_error_limit[i]),
            ]
            for i in range(c.m)
        ]
        _emit(_csv_text(header, rows), out)
    else:
        lines = [
            f"constellation: {name} (M={c.m}, d={c.d})",
            f"average power: {_g(rep.power)}   min distance: {_g(rep.d_min)}",
            f"a_min: {_g(rep.a_min)}   b_max: {_g(rep.b_max)}   "
            f"normalized b_max (p0={_g(rep.p0)}): {_g(rep.normalized_b_max)}",
            f"avg large-noise correct limit: {_g(rep.avg_large_noise_correct_limit)}",
            f"{'symbol':<10}{'A_i':>12}{'B_i':>12}  {'collapse':<9}{'Pc_limit':>10}",
        ]
        for i in range(c.m):
            lines.append(
                f"{labels[i]:<10}{_g(rep.angular_fraction[i]):>12}"
                f"{_g(rep.burden[i]):>12}  "
                f"{('yes' if rep.collapse_flags[i] else 'no'):<9}"
                f"{_g(rep.large_noise_correct_limit[i]):>10}"
            )
        _emit("\n".join(lines), out)
    return 0


def _cmd_bound(args: argparse.Namespace, config: dict) -> int:
    name, c = load_any_constellation(args.constellation)
    grid = _parse_grid(args, config)
    reports = [bounds.bound_report(c, g) for g in grid]
    fmt = _resolve(args, config, "format", str)
    out = _resolve(args, config, "out", str)
    labels = [c.label(i) for i in range(c.m)]

    if fmt == "json":
        payload = {"constellation": name, "reports": [bound_jsonable(r) for r in reports]}
        _emit(dumps(payload), out)
    elif fmt == "csv":
        header = ["gamma", "avg_bound", "avg_asymptotic"] + [
            f"bound_{lab}" for lab in labels
        ]
        rows = [
            [r.gamma, r.avg_exact_bound, r.avg_asymptotic_value]
            + [float(v) for v in r.per_symbol_exact_bound]
            for r in reports
        ]
        _emit(_csv_text(header, rows), out)
    else:
        lines = [f"union bounds for {name}", f"{'gamma':>10}{'avg_bound':>14}{'asymptotic':>14}"]
        for r in reports:
            lines.append(f"{_g(r.gamma):>10}{_g(r.avg_exact_bound):>14}{_g(r.avg_asymptotic_value):>14}")
        _emit("\n".join(lines), out)
    return 0


def _cmd_mc(args: argparse.Namespace, config: dict) -> int:
    name, c = load_any_constellation(args.constellation)
    grid = _parse_grid(args, config)
    cfg = _mc_config(args, config)
    results = sweep(c, grid, cfg)
    fmt = _resolve(args, config, "format", str)
    out = _resolve(args, config, "out", str)
    labels = [c.label(i) for i in range(c.m)]

    if fmt == "json":
        payload = {
            "constellation": name,
            "labels": labels,
            "n_samples": cfg.n_samples,
            "seed": cfg.seed,
            "results": [
                {"gamma": g, "estimate": estimate_jsonable(est)} for g, est in results
            ],
        }
        _emit(dumps(payload), out)
    elif fmt == "csv":
        header = ["gamma", "avg_error", "avg_error_ci", "avg_correct"]
        for lab in labels:
            header += [f"err_{lab}", f"ci_{lab}"]
        rows = []
        for g, est in results:
            row = [g, est.avg_error, est.avg_ci95_halfwidth, est.avg_correct]
            for i in range(c.m):
                row += [float(est.per_symbol_error[i]), float(est.per_symbol_ci95_halfwidth[i])]
            rows.append(row)
        _emit(_csv_text(header, rows), out)
    else:
        lines = [
            f"Monte Carlo sweep for {name} "
            f"(n={cfg.n_samples}, batch={cfg.batch_size}, seed={cfg.seed})",
            f"{'gamma':>10}{'avg_error':>14}{'ci95':>12}{'avg_correct':>14}",
        ]
        for g, est in results:
            lines.append(
                f"{_g(g):>10}{_g(est.avg_error):>14}"
                f"{'+-' + _g(est.avg_ci95_halfwidth):>12}{_g(est.avg_correct):>14}"
            )
        _emit("\n".join(lines), out)
    return 0


def _cmd_screen(args: argparse.Namespace, config: dict) -> int:
    named = [load_any_constellation(ref) for ref in args.constellations]
    lam = float(_resolve(args, config, "lambda", float))
    p0 = _resolve(args, config, "p0", float)
    result = descriptors.screen(
        [c for _, c in named],
        lam=lam,
        p0=None if p0 is None else float(p0),
        names=[n for n, _ in named],
    )
    fmt = _resolve(args, config, "format", str)
    out = _resolve(args, config, "out", str)

    if fmt == "json":
        _emit(dumps(screen_jsonable(result)), out)
    elif fmt == "csv":
        header = ["rank", "name", "status", "objective", "a_min", "b_max"]
        rows: list[list[Any]] = []
        for k, entry in enumerate(result.ranked):
            rows.append(
                [k + 1, entry.name, "ranked", entry.objective, entry.report.a_min, entry.report.b_max]
            )
        for name, reason in result.rejected:
            rows.append(["", name, f"rejected: {reason}", "", "", ""])
        _emit(_csv_text(header, rows), out)
    else:
        lines = [f"screen with lambda={_g(lam)}"]
        if result.power_mismatch:
            lines.append("warning: candidates do not share one average power budget")
        for name, reason in result.rejected:
            lines.append(f"rejected  {name}: {reason}")
        for k, entry in enumerate(result.ranked):
            lines.append(
                f"rank {k + 1:<3} {entry.name}: J={_g(entry.objective)} "
                f"(a_min={_g(entry.report.a_min)}, b_max={_g(entry.report.b_max)})"
            )
        _emit("\n".join(lines), out)
    return 0


def _cmd_reproduce(args: argparse.Namespace, config: dict) -> int:
    cfg = _mc_config(args, config)
    out_dir = _resolve(args, config, "out", str) or "reproduce-data"
    names = list(experiments.EXPERIMENTS) if args.experiment == "all" else [args.experiment]
    written = experiments.run_experiments(names, cfg, out_dir)
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_serve(args: argparse.Namespace, config: dict) -> int:
    bind = str(_resolve(args, config, "bind", str))
    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise ParseError(f"--bind expects host:port, got {bind!r}", field="bind")
    mc_cap = int(_resolve(args, config, "mc_cap", int))
    httpd = server.make_server(host, int(port_text), mc_cap=mc_cap)
    print(f"serving on http://{host}:{httpd.server_address[1]} (mc cap {mc_cap})")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
    return 0


def _add_common(p: argparse.ArgumentParser, *, mc: bool = False, fmt: bool = True) -> None:
    if fmt:
        p.add_argument("--format", choices=_FORMATS, default=None, help="output format")
        p.add_argument("--out", default=None, help="write output to this file")
    if mc:
        p.add_argument("--samples", type=int, default=None, help="Monte Carlo trials per gamma")
        p.add_argument("--batch", type=int, default=None, help="trials per batch substream")
        p.add_argument("--seed", type=int, default=None, help="base random seed")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma", type=float, action="append", default=None, help="single noise scale (repeatable)")
    p.add_argument("--grid", default=None, help="comma-separated increasing noise scales")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccl",
        description="Reliability descriptors, bounds, Monte Carlo validation and "
        "design screening for constellations under isotropic Cauchy noise.",
    )
    parser.add_argument("--config", default=None, help="JSON config file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="descriptor report for one constellation")
    p.add_argument("constellation", help="catalog name or file path")
    p.add_argument("--p0", type=float, default=None, help="power budget (default: own power)")
    _add_common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("bound", help="union bounds over a gamma grid")
    p.add_argument("constellation")
    _add_grid(p)
    _add_common(p)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("mc", help="Monte Carlo sweep over a gamma grid")
    p.add_argument("constellation")
    _add_grid(p)
    _add_common(p, mc=True)
    p.set_defaults(func=_cmd_mc)

    p = sub.add_parser("screen", help="two-stage screen over candidates")
    p.add_argument("constellations", nargs="+", help="catalog names or file paths")
    p.add_argument("--lambda", dest="lambda_", type=float, default=None, help="trade-off weight in [0, 1]")
    p.add_argument("--p0", type=float, default=None, help="common power budget")
    _add_common(p)
    p.set_defaults(func=_cmd_screen)

    p = sub.add_parser("reproduce", help="run canned validation experiments")
    p.add_argument(
        "--experiment",
        choices=list(experiments.EXPERIMENTS) + ["all"],
        default="all",
    )
    p.add_argument("--out", default=None, help="output directory (default reproduce-data)")
    _add_common(p, mc=True, fmt=False)
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("serve", help="run the JSON HTTP analysis service")
    p.add_argument("--bind", default=None, help="host:port to listen on")
    p.add_argument("--mc-cap", dest="mc_cap", type=int, default=None, help="server-side Monte Carlo sample cap")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # argparse stores --lambda under lambda_; the resolver looks up "lambda".
    if hasattr(args, "lambda_"):
        setattr(args, "lambda", args.lambda_)
    try:
        config = _load_config(args.config)
        return args.func(args, config)
    except CclError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
