"""JSON-over-HTTP analysis service.

A thin stateless wrapper around the analysis core, meant to back the
interactive designer front end. Endpoints:

    GET  /health   liveness probe, returns "ok"
    GET  /catalog  built-in constellations with metadata
    POST /analyze  constellation -> reliability report
    POST /cones    constellation (d = 2 only) -> angular patches
    POST /mc       constellation + gamma + config -> Monte Carlo estimate
    POST /screen   candidates + lambda + p0 -> two-stage screen result

Request and response bodies use the constellation file schema; numbers
are serialized with 17 significant digits. Invariant violations map to
400 with a machine-readable ``field`` path; asking for cones outside the
plane maps to 422. The Monte Carlo endpoint enforces a server-side
sample cap which clients cannot override.
"""

from __future__ import annotations

import json
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import descriptors
from .detector import McConfig, estimate
from .errors import CclError, DimensionMismatch, ParseError
from .catalog import CATALOG
from .geometry import angular_patch_2d
from .noise import NoiseModel
from .serialization import (
    constellation_from_jsonable,
    constellation_to_jsonable,
    dumps,
    estimate_jsonable,
    patch_jsonable,
    report_jsonable,
    screen_jsonable,
)

DEFAULT_MC_CAP = 1_000_000


def _error_slug(exc: Exception) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", type(exc).__name__).lower()


def _number(body: dict, key: str, default=None):
    value = body.get(key, default)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"'{key}' must be a number", field=key)
    return value


class AnalysisService:
    """Pure request handlers; one instance is shared by all connections."""

    def __init__(self, mc_cap: int = DEFAULT_MC_CAP):
        self.mc_cap = int(mc_cap)

    def health(self) -> tuple[int, str]:
        return 200, "ok"

    def catalog(self) -> tuple[int, dict]:
        entries = [
            {
                "name": e.name,
                "provenance": e.provenance,
                "constellation": constellation_to_jsonable(e.constellation, e.name),
            }
            for e in CATALOG.values()
        ]
        return 200, {"entries": entries}

    def analyze(self, body) -> tuple[int, dict]:
        c = constellation_from_jsonable(body)
        rep = descriptors.report(c)
        return 200, report_jsonable(rep, labels=[c.label(i) for i in range(c.m)])

    def cones(self, body) -> tuple[int, dict]:
        c = constellation_from_jsonable(body)
        if c.d != 2:
            raise DimensionMismatch("cone patches require d = 2", field="dim")
        return 200, {
            "patches": [patch_jsonable(angular_patch_2d(c, i)) for i in range(c.m)],
            "labels": [c.label(i) for i in range(c.m)],
        }

    def mc(self, body) -> tuple[int, dict]:
        if not isinstance(body, dict) or "constellation" not in body:
            raise ParseError("missing required field 'constellation'", field="constellation")
        c = constellation_from_jsonable(body["constellation"], where="constellation")
        gamma = _number(body, "gamma")
        if gamma is None or gamma <= 0:
            raise ParseError("'gamma' must be a positive number", field="gamma")
        n_samples = int(_number(body, "n_samples", 100_000))
        if n_samples > self.mc_cap:
            raise SampleCapExceeded(
                f"n_samples {n_samples} exceeds the server sample cap {self.mc_cap}",
                field="n_samples",
            )
        cfg = McConfig(
            n_samples=n_samples,
            batch_size=int(_number(body, "batch_size", min(n_samples, 100_000))),
            seed=int(_number(body, "seed", 2026)),
        )
        est = estimate(c, NoiseModel(gamma=float(gamma), d=c.d), cfg)
        out = estimate_jsonable(est)
        out["gamma"] = float(gamma)
        out["labels"] = [c.label(i) for i in range(c.m)]
        return 200, out

    def screen(self, body) -> tuple[int, dict]:
        if not isinstance(body, dict) or "candidates" not in body:
            raise ParseError("missing required field 'candidates'", field="candidates")
        raw = body["candidates"]
        if not isinstance(raw, list) or not raw:
            raise ParseError("'candidates' must be a nonempty array", field="candidates")
        cands, names = [], []
        for k, item in enumerate(raw):
            cands.append(constellation_from_jsonable(item, where=f"candidates[{k}]"))
            name = item.get("name") if isinstance(item, dict) else None
            names.append(str(name) if name else f"candidate-{k}")
        lam = _number(body, "lambda", 0.5)
        p0 = _number(body, "p0")
        res = descriptors.screen(cands, lam=float(lam), p0=p0, names=names)
        return 200, screen_jsonable(res)


class SampleCapExceeded(CclError):
    """Request asked for more Monte Carlo samples than the server allows.

    The reason string always contains "sample cap"."""


_ROUTES_POST = {
    "/analyze": AnalysisService.analyze,
    "/cones": AnalysisService.cones,
    "/mc": AnalysisService.mc,
    "/screen": AnalysisService.screen,
}


class _Handler(BaseHTTPRequestHandler):
    service: AnalysisService  # set by make_server

    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _cors(self):
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def _respond(self, status: int, body: str, content_type: str):
        data = body.encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(data)))
        self._cors()
        self.end_headers()
        self.wfile.write(data)

    def _respond_json(self, status: int, payload) -> None:
        self._respond(status, dumps(payload), "application/json")

    def _respond_error(self, status: int, exc: Exception) -> None:
        payload = {
            "error": _error_slug(exc),
            "message": str(exc),
            "field": getattr(exc, "field", None),
        }
        self._respond_json(status, payload)

    def do_OPTIONS(self):
        self.send_response(204)
        self._cors()
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        if self.path == "/health":
            status, body = self.service.health()
            self._respond(status, body, "text/plain")
        elif self.path == "/catalog":
            status, payload = self.service.catalog()
            self._respond_json(status, payload)
        else:
            self._respond_json(404, {"error": "not_found", "message": self.path})

    def do_POST(self):
        handler = _ROUTES_POST.get(self.path)
        if handler is None:
            self._respond_json(404, {"error": "not_found", "message": self.path})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            try:
                body = json.loads(self.rfile.read(length) or b"null")
            except json.JSONDecodeError as exc:
                raise ParseError(
                    f"line {exc.lineno} column {exc.colno}: {exc.msg}",
                    line=exc.lineno,
                    column=exc.colno,
                ) from None
            status, payload = handler(self.service, body)
            self._respond_json(status, payload)
        except DimensionMismatch as exc:
            # Only the cone endpoint requires the plane; that is a 422.
            self._respond_error(422 if self.path == "/cones" else 400, exc)
        except CclError as exc:
            self._respond_error(400, exc)
        except Exception as exc:  # pragma: no cover - defensive
            self._respond_error(500, exc)


def make_server(host: str, port: int, mc_cap: int = DEFAULT_MC_CAP) -> ThreadingHTTPServer:
    """Create (but do not start) the HTTP server."""
    service = AnalysisService(mc_cap=mc_cap)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer((host, port), handler)


def start_background(host: str, port: int, mc_cap: int = DEFAULT_MC_CAP):
    """Start the server on a daemon thread; returns (server, thread)."""
    server = make_server(host, port, mc_cap)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, thread
