"""HTTP session API backing the explorer UI.

Sessions are in-memory; every mutation of one session runs under its lock, so
concurrent requests never interleave partial states.  Undo restores byte-exact
snapshots.  Static files from a frontend build directory are served at /.
"""

from __future__ import annotations

import json
import logging
import threading
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional

from . import io as cio
from .coronation import CoronationBlocked, CoronationResult, PathNotFound, coronate
from .diagrams import (
    CrownDiagram,
    InvalidDiagram,
    LefschetzFibration,
    SlideCertificate,
)
from .equivalence import replay_step
from .geometry import InvalidArc, NotInGeneralPosition, PushoffCollision, to_word
from .moves import InvalidK, NotApplicable, ShiftBlocked, shift, transpose_adjacent
from .render import RenderSpec, render_svg

log = logging.getLogger("crown.server")

MOVE_ERRORS = (InvalidArc, NotInGeneralPosition, PushoffCollision, NotApplicable,
               ShiftBlocked, InvalidK, CoronationBlocked, PathNotFound,
               InvalidDiagram, cio.FormatError, KeyError, IndexError, ValueError)


@dataclass
class Session:
    id: str
    kind: str                      # "crown" | "lefschetz"
    initial_bytes: str
    current: object                # CrownDiagram | LefschetzFibration
    history: list = field(default_factory=list)   # [(bytes, obj, n_cert_steps, label)]
    cert_steps: list = field(default_factory=list)
    coronation: Optional[CoronationResult] = None
    coronation_stage: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    def snapshot(self, label: str):
        self.history.append((cio.dumps(self.current), self.current,
                             len(self.cert_steps), label))


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, text: str) -> Session:
        obj = cio.loads(text)
        if isinstance(obj, CrownDiagram):
            kind = "crown"
        elif isinstance(obj, LefschetzFibration):
            kind = "lefschetz"
        else:
            raise cio.FormatError("sessions take a diagram or fibration file")
        sid = uuid.uuid4().hex[:12]
        session = Session(sid, kind, cio.dumps(obj), obj)
        with self._lock:
            self._sessions[sid] = session
        return session

    def get(self, sid: str) -> Optional[Session]:
        with self._lock:
            return self._sessions.get(sid)


def apply_move(session: Session, body: dict) -> dict:
    """Apply one move to the session; returns the response payload."""
    kind = body.get("type")
    if kind == "slide":
        if not isinstance(session.current, CrownDiagram):
            raise NotApplicable("slide needs a crown-diagram session")
        step = cio.step_from_json({"op": "slide", "mover": body["mover"],
                                   "over": body["over"], "sign": body.get("sign", 1),
                                   "arc": body["arc"]})
        d = session.current
        if body.get("record", True):
            # complete the drawn arc: record third-curve crossings exactly
            # and re-derive the approach side
            from .arcs import build_recorded_arc
            from .diagrams import SlideStep
            from .geometry import SideCrossing

            arc = step.arc
            done = build_recorded_arc(
                d.chart, d.curves, d.curves[step.mover], d.curves[step.over],
                arc.start.gap, arc.start.fraction, arc.end.gap, arc.end.fraction,
                tuple(w for w in arc.waypoints if isinstance(w, SideCrossing)))
            if done is not None:
                step = SlideStep(step.mover, step.over, step.sign, done)
        session.snapshot("slide")
        curves = replay_step(d.chart, list(d.curves), step)
        session.current = CrownDiagram(d.chart, tuple(curves))
        steps = [step]
    elif kind == "transpose":
        if not isinstance(session.current, CrownDiagram):
            raise NotApplicable("transpose needs a crown-diagram session")
        session.snapshot("transpose")
        out, cert = transpose_adjacent(session.current, int(body["i"]))
        session.current = out
        steps = list(cert.steps)
    elif kind == "shift":
        if not isinstance(session.current, CrownDiagram):
            raise NotApplicable("shift needs a crown-diagram session")
        session.snapshot("shift")
        res = shift(session.current, int(body["k"]))
        session.current = res.output
        steps = list(res.forward.steps)
    elif kind == "coronate-step":
        if session.kind != "lefschetz":
            raise NotApplicable("coronate-step needs a lefschetz session")
        if session.coronation is None:
            fib = session.current if isinstance(session.current, LefschetzFibration) else None
            if fib is None:
                raise NotApplicable("coronation already consumed this session")
            session.coronation = coronate(fib)
        res = session.coronation
        stages = [res.pseudocoronation, *res.stages]
        if session.coronation_stage >= len(stages):
            raise NotApplicable("coronation is complete")
        session.snapshot("coronate-step")
        curves = stages[session.coronation_stage]
        session.coronation_stage += 1
        session.current = CrownDiagram(res.coronation.chart, tuple(curves))
        steps = []
    else:
        raise NotApplicable(f"unknown move type {kind!r}")
    session.cert_steps.extend(steps)
    return {
        "diagram": json.loads(cio.dumps(session.current)),
        "steps": [cio.step_to_json(s) for s in steps],
    }


def undo(session: Session) -> dict:
    if not session.history:
        raise NotApplicable("nothing to undo")
    text, obj, n_steps, _label = session.history.pop()
    session.current = obj
    del session.cert_steps[n_steps:]
    if session.kind == "lefschetz" and session.coronation_stage > 0:
        session.coronation_stage -= 1
    return json.loads(text)


def make_handler(store: SessionStore, static_dir: Optional[Path]):
    class Handler(BaseHTTPRequestHandler):
        server_version = "crown/0.1"

        def log_message(self, fmt, *args):
            log.debug("%s " + fmt, self.address_string(), *args)

        def _send(self, code: int, payload, content_type="application/json"):
            if isinstance(payload, (dict, list)):
                body = (json.dumps(payload, indent=2) + "\n").encode()
            elif isinstance(payload, str):
                body = payload.encode()
            else:
                body = payload
            self.send_response(code)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(body)

        def _body(self) -> bytes:
            length = int(self.headers.get("Content-Length", "0"))
            return self.rfile.read(length)

        def do_OPTIONS(self):
            self._send(204, b"", "text/plain")

        def do_POST(self):
            parts = [p for p in self.path.split("?")[0].split("/") if p]
            try:
                if parts == ["api", "session"]:
                    session = store.create(self._body().decode())
                    self._send(200, {"id": session.id})
                    return
                if len(parts) == 4 and parts[:2] == ["api", "session"]:
                    session = store.get(parts[2])
                    if session is None:
                        self._send(404, {"error": "unknown session"})
                        return
                    with session.lock:
                        if parts[3] == "move":
                            try:
                                body = json.loads(self._body().decode())
                                if not isinstance(body, dict):
                                    raise ValueError("move body must be an object")
                                payload = apply_move(session, body)
                            except MOVE_ERRORS as exc:
                                self._send(422, {"error": str(exc),
                                                 "kind": type(exc).__name__})
                                return
                            except json.JSONDecodeError as exc:
                                self._send(422, {"error": f"bad JSON: {exc}"})
                                return
                            self._send(200, payload)
                            return
                        if parts[3] == "undo":
                            try:
                                self._send(200, undo(session))
                            except NotApplicable as exc:
                                self._send(422, {"error": str(exc)})
                            return
                self._send(404, {"error": "not found"})
            except Exception as exc:  # pragma: no cover - defensive
                log.exception("server error")
                self._send(500, {"error": str(exc)})

        def do_GET(self):
            parts = [p for p in self.path.split("?")[0].split("/") if p]
            if len(parts) == 4 and parts[:2] == ["api", "session"]:
                session = store.get(parts[2])
                if session is None:
                    self._send(404, {"error": "unknown session"})
                    return
                with session.lock:
                    if parts[3] == "diagram":
                        self._send(200, cio.dumps(session.current))
                        return
                    if parts[3] == "certificate":
                        cert = SlideCertificate(tuple(session.cert_steps))
                        self._send(200, cio.dumps(cert))
                        return
                    if parts[3] == "render.svg":
                        svg = render_svg(session.current, RenderSpec())
                        self._send(200, svg, "image/svg+xml")
                        return
                    if parts[3] == "words":
                        d = session.current
                        curves = d.curves if isinstance(d, CrownDiagram) else d.cycles
                        words = {c.name: str(to_word(d.chart, c)) for c in curves}
                        self._send(200, words)
                        return
                self._send(404, {"error": "not found"})
                return
            # static frontend
            if static_dir is not None:
                rel = "index.html" if self.path in ("/", "") else self.path.lstrip("/")
                target = (static_dir / rel).resolve()
                if target.is_file() and str(target).startswith(str(static_dir.resolve())):
                    ctype = {"html": "text/html", "js": "text/javascript",
                             "css": "text/css", "svg": "image/svg+xml",
                             "map": "application/json"}.get(
                                 target.suffix.lstrip("."), "application/octet-stream")
                    self._send(200, target.read_bytes(), ctype)
                    return
            self._send(404, {"error": "not found"})

    return Handler


def serve(port: int, static_dir: str | Path | None = None,
          host: str = "127.0.0.1") -> ThreadingHTTPServer:
    """Start the session API (blocking callers use .serve_forever())."""
    store = SessionStore()
    directory = Path(static_dir) if static_dir else None
    httpd = ThreadingHTTPServer((host, port), make_handler(store, directory))
    return httpd
