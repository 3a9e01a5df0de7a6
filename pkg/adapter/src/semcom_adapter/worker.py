"""The worker process: line-delimited JSON requests on stdin, one response
per request on stdout.

Requests: ``{"id": ..., "op": "hello" | "realize" | "embed", "payload": ...}``.
Responses echo the id and carry ``result`` or ``error: {type, message}``.
A malformed line gets an error response with a null id and the session
continues; blank lines are ignored so a trailing newline at shutdown does not
desynchronize the reply stream.  Only a startup failure (bad backend
arguments) exits nonzero.
"""

import argparse
import json
import sys

from .backends import CopyRealizer, HashEmbedder

BACKENDS = {
    "realizer": {"copy": CopyRealizer},
    "embedder": {"hash": HashEmbedder},
}


def _error(rid, err_type: str, message: str) -> dict:
    return {"id": rid, "error": {"type": err_type, "message": message}}


def handle(request, realizer, embedder) -> dict:
    if not isinstance(request, dict):
        return _error(None, "bad_request", "request must be a JSON object")
    rid = request.get("id")
    op = request.get("op")
    payload = request.get("payload")
    if op == "hello":
        return {"id": rid, "result": {"capabilities": ["realize", "embed"], "dim": embedder.dim}}
    if op in ("realize", "embed"):
        if not isinstance(payload, str) or not payload.strip():
            return _error(rid, "bad_payload", f"{op} needs a non-empty string payload")
        try:
            if op == "realize":
                return {"id": rid, "result": realizer.realize(payload)}
            return {"id": rid, "result": embedder.embed(payload).tolist()}
        except ValueError as exc:
            return _error(rid, f"{op}_failed", str(exc))
    return _error(rid, "unknown_op", f"op must be hello, realize or embed, not {op!r}")


def serve(realizer, embedder, stdin=None, stdout=None) -> None:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    for line in stdin:
        if not line.strip():
            continue
        try:
            request = json.loads(line)
        except json.JSONDecodeError as exc:
            response = _error(None, "bad_json", exc.msg)
        else:
            response = handle(request, realizer, embedder)
        stdout.write(json.dumps(response, separators=(",", ":")) + "\n")
        stdout.flush()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="semcom-adapter",
        description="Realize triple concatenations and embed text over line-delimited JSON",
    )
    parser.add_argument("--realizer", default="copy", choices=sorted(BACKENDS["realizer"]))
    parser.add_argument("--embedder", default="hash", choices=sorted(BACKENDS["embedder"]))
    parser.add_argument("--dim", type=int, default=256, help="embedding dimension")
    args = parser.parse_args(argv)
    try:
        realizer = BACKENDS["realizer"][args.realizer]()
        embedder = BACKENDS["embedder"][args.embedder](dim=args.dim)
    except ValueError as exc:
        print(f"startup error: {exc}", file=sys.stderr)
        return 1
    serve(realizer, embedder)
    return 0


if __name__ == "__main__":
    sys.exit(main())
