"""JSON-over-HTTP service exposing the solver to the interactive viewer.

Stateless: every request carries the full instance.  POST /solve runs the
pipeline; POST /reshape re-derives the polygon from user-fixed extreme
vertices and reports whether it still stabs everything (the slider check).
"""
from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .io import parse_instance, parse_positions, result_to_doc, reshape_to_doc, ParseError
from .solver import solve, reshape
from .configurations import registry_text


class _Handler(BaseHTTPRequestHandler):
    server_version = "isostab/0.1"

    def log_message(self, fmt, *args):   # keep test output quiet
        pass

    def _send(self, status: int, payload, content_type="application/json"):
        body = (json.dumps(payload) if content_type == "application/json"
                else payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_GET(self):
        if self.path == "/health":
            self._send(200, "ok", content_type="text/plain")
        elif self.path == "/configs":
            self._send(200, registry_text(), content_type="text/plain")
        else:
            self._send(404, {"error": "not found"})

    def _read_body(self) -> str:
        length = int(self.headers.get("Content-Length", "0"))
        return self.rfile.read(length).decode("utf-8")

    def do_POST(self):
        try:
            body = self._read_body()
            if self.path == "/solve":
                segments, _name = parse_instance(body)
                self._send(200, result_to_doc(solve(segments)))
            elif self.path == "/reshape":
                doc = json.loads(body)
                segments, _name = parse_instance(json.dumps(
                    {"segments": doc.get("segments", [])}))
                positions = parse_positions(doc.get("positions", {}))
                self._send(200, reshape_to_doc(reshape(segments, positions)))
            else:
                self._send(404, {"error": "not found"})
        except (ParseError, json.JSONDecodeError, KeyError, TypeError) as e:
            self._send(400, {"error": str(e)})


def make_server(host: str, port: int) -> ThreadingHTTPServer:
    return ThreadingHTTPServer((host, port), _Handler)


def serve(bind: str) -> None:
    """Run the service until interrupted; bind is HOST:PORT."""
    host, _, port_s = bind.rpartition(":")
    host = host or "127.0.0.1"
    server = make_server(host, int(port_s))
    print(f"isostab service on http://{host}:{server.server_address[1]}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


def serve_background(host: str = "127.0.0.1", port: int = 0):
    """Start the service on a free port in a daemon thread (for tests);
    returns (server, base_url)."""
    server = make_server(host, port)
    t = threading.Thread(target=server.serve_forever, daemon=True)
    t.start()
    return server, f"http://{host}:{server.server_address[1]}"
