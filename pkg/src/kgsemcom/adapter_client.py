"""Client side of the line-delimited JSON adapter protocol.

The adapter is a long-lived child process.  Each request is one JSON line on
its stdin carrying ``id``, ``op`` and an op-specific ``payload``; each
response is one JSON line on its stdout echoing the id and carrying either
``result`` or a structured ``error``.  Ops: ``hello`` (capabilities and
embedding dimension), ``realize`` (concatenated triples in, text out) and
``embed`` (text in, vector out).

Transport problems (dead process, timeout, unparseable response) raise
AdapterTransportError; well-formed error responses raise AdapterRequestError.
"""

from __future__ import annotations

import json
import os
import select
import shlex
import subprocess
import time

import numpy as np

ADAPTER_ENV = "KGSEMCOM_ADAPTER"


class AdapterTransportError(RuntimeError):
    pass


class AdapterRequestError(RuntimeError):
    pass


class AdapterClient:
    def __init__(self, command: str | None = None, timeout: float = 30.0):
        command = command or os.environ.get(ADAPTER_ENV, "")
        if not command:
            raise AdapterTransportError(
                f"no adapter command given and {ADAPTER_ENV} is not set"
            )
        self.timeout = timeout
        try:
            self._proc = subprocess.Popen(
                shlex.split(command),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
            )
        except OSError as exc:
            raise AdapterTransportError(f"cannot launch adapter {command!r}: {exc}") from exc
        self._buffer = b""
        self._next_id = 0

    def _read_line(self, deadline: float) -> bytes:
        fd = self._proc.stdout.fileno()
        while b"\n" not in self._buffer:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise AdapterTransportError(f"adapter did not respond within {self.timeout}s")
            ready, _, _ = select.select([fd], [], [], remaining)
            if not ready:
                continue
            chunk = os.read(fd, 65536)
            if not chunk:
                raise AdapterTransportError("adapter closed its output stream")
            self._buffer += chunk
        line, self._buffer = self._buffer.split(b"\n", 1)
        return line

    def _call(self, op: str, payload=None):
        if self._proc.poll() is not None:
            raise AdapterTransportError(f"adapter exited with status {self._proc.returncode}")
        self._next_id += 1
        rid = self._next_id
        request = {"id": rid, "op": op}
        if payload is not None:
            request["payload"] = payload
        data = json.dumps(request, separators=(",", ":")) + "\n"
        try:
            self._proc.stdin.write(data.encode("utf-8"))
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise AdapterTransportError(f"adapter pipe closed: {exc}") from exc
        line = self._read_line(time.monotonic() + self.timeout)
        try:
            response = json.loads(line)
        except json.JSONDecodeError as exc:
            raise AdapterTransportError(f"unparseable adapter response: {exc.msg}") from None
        if not isinstance(response, dict) or response.get("id") != rid:
            raise AdapterTransportError(f"adapter response does not match request id {rid}")
        if "error" in response:
            err = response["error"] or {}
            raise AdapterRequestError(f"{err.get('type', 'error')}: {err.get('message', '')}")
        if "result" not in response:
            raise AdapterTransportError("adapter response carries neither result nor error")
        return response["result"]

    def hello(self) -> dict:
        result = self._call("hello")
        if not isinstance(result, dict) or "capabilities" not in result:
            raise AdapterTransportError("malformed hello result")
        return result

    def realize(self, payload: str) -> str:
        result = self._call("realize", payload)
        if not isinstance(result, str):
            raise AdapterTransportError("realize result is not text")
        return result

    def embed(self, text: str) -> np.ndarray:
        result = self._call("embed", text)
        if not isinstance(result, list) or not result:
            raise AdapterTransportError("embed result is not a non-empty vector")
        vec = np.asarray(result, dtype=np.float64)
        if not np.isfinite(vec).all():
            raise AdapterTransportError("embed result contains non-finite entries")
        return vec

    def close(self) -> None:
        if self._proc.poll() is None:
            try:
                self._proc.stdin.close()
            except OSError:
                pass
            try:
                self._proc.wait(timeout=2.0)
            except subprocess.TimeoutExpired:
                self._proc.kill()
                self._proc.wait()

    def __enter__(self) -> "AdapterClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
