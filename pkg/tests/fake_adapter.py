"""Scripted stand-in for an adapter process, used to exercise the client.

Speaks the line-delimited JSON protocol well enough to test the happy path
and, via flags, several ways a real worker could misbehave.
"""

import json
import sys


def main() -> int:
    mode = sys.argv[1] if len(sys.argv) > 1 else "ok"
    if mode == "exit-early":
        return 3
    for line in sys.stdin:
        try:
            request = json.loads(line)
        except json.JSONDecodeError:
            sys.stdout.write(json.dumps({"id": None, "error": {"type": "bad_json", "message": "unparseable"}}) + "\n")
            sys.stdout.flush()
            continue
        rid = request.get("id")
        op = request.get("op")
        payload = request.get("payload", "")
        if mode == "die-silently":
            return 0
        if mode == "garbage":
            sys.stdout.write("this is not json\n")
            sys.stdout.flush()
            continue
        if mode == "wrong-id":
            response = {"id": -999, "result": "x"}
        elif mode == "error-on-realize" and op == "realize":
            response = {"id": rid, "error": {"type": "realize_failed", "message": "model refused"}}
        elif op == "hello":
            response = {"id": rid, "result": {"capabilities": ["realize", "embed"], "dim": 4}}
        elif op == "realize":
            response = {"id": rid, "result": f"Generated: {payload}."}
        elif op == "embed":
            response = {"id": rid, "result": [float(len(payload)), 1.0, 0.5, 2.0]}
        else:
            response = {"id": rid, "error": {"type": "unknown_op", "message": str(op)}}
        sys.stdout.write(json.dumps(response) + "\n")
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
