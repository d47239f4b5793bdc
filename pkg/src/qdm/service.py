"""Stateless JSON-over-HTTP calculation service.

Every computation command is exposed as POST /v1/<command> taking a
scenario document as the request body and returning the json emission of
the corresponding ResultTable, byte-identical to the CLI's json output for
the same input. GET /v1/health reports the version. Handlers are pure
functions of the request body; there is no shared mutable state.
"""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from ._version import __version__
from .runner import COMMANDS, run
from .scenario import ScenarioError, load_scenario
from .tables import emit

__all__ = ["build_server", "serve", "ROUTES"]

ROUTES = {f"/v1/{command}": command for command in COMMANDS}


def _json_bytes(obj) -> bytes:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, format: str, *args) -> None:  # quiet by default
        pass

    def _send(self, status: int, payload: bytes) -> None:
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(payload)

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self) -> None:
        if self.path == "/v1/health":
            self._send(200, _json_bytes({"status": "ok", "version": __version__}))
            return
        self._send(404, _json_bytes({"error": "not_found", "path": self.path}))

    def do_POST(self) -> None:
        command = ROUTES.get(self.path)
        if command is None:
            self._send(404, _json_bytes({"error": "not_found", "path": self.path}))
            return
        length = int(self.headers.get("Content-Length") or 0)
        body = self.rfile.read(length)
        try:
            scenario = load_scenario(body)
            table = run(command, scenario)
        except ScenarioError as exc:
            diagnostics = [{"path": d.path, "kind": d.kind, "message": d.message}
                           for d in exc.diagnostics]
            self._send(422, _json_bytes({"error": "invalid_scenario",
                                         "diagnostics": diagnostics}))
            return
        self._send(200, emit(table, "json"))


def build_server(host: str = "127.0.0.1", port: int = 8645) -> ThreadingHTTPServer:
    """Create (but do not start) the threaded HTTP server; port 0 picks a free port."""
    return ThreadingHTTPServer((host, port), _Handler)


def serve(host: str = "127.0.0.1", port: int = 8645) -> None:
    """Run the service until interrupted."""
    server = build_server(host, port)
    try:
        server.serve_forever()
    finally:
        server.server_close()
