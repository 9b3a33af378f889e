"""Record session-service traffic into JSON fixtures for the explorer's
contract tests.

Run from the repository root (the clusterweyl package must be
importable):

    python3 frontend/scripts/record_fixtures.py
"""

from __future__ import annotations

import json
import pathlib

from fastapi.testclient import TestClient

from clusterweyl.service import create_app

OUT_DIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

A3 = {"n": 3, "b": [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]}


def record(client: TestClient, entries: list, method: str, path: str, body=None):
    if method == "GET":
        res = client.get(path)
    else:
        res = client.post(path, json=body)
    entry = {"method": method, "path": path}
    if body is not None:
        entry["body"] = body
    entry["status"] = res.status_code
    entry["response"] = res.json()
    entries.append(entry)
    return res.json(), res.status_code


def record_a3_session(client: TestClient) -> dict:
    """The happy path: create the A3 seed, click vertex 2 (the path
    becomes an oriented triangle), then undo by moving the cursor back
    to the root."""
    entries: list = []
    created, _ = record(client, entries, "POST", "/sessions", A3)
    sid = created["id"]
    record(
        client,
        entries,
        "POST",
        f"/sessions/{sid}/mutate",
        {"vertex": 2, "eps": -1, "node": 0},
    )
    record(client, entries, "POST", f"/sessions/{sid}/cursor", {"node": 0})
    return {"name": "a3-session", "seed": A3, "session_id": sid, "entries": entries}


def record_conflict_session(client: TestClient) -> dict:
    """A stale-cursor mutation: after the cursor silently moves, a
    conditional mutate on node 0 gets 409 and the client refetches."""
    entries: list = []
    created, _ = record(client, entries, "POST", "/sessions", A3)
    sid = created["id"]
    # the cursor moves outside the recorded script (another tab, say)
    client.post(f"/sessions/{sid}/mutate", json={"vertex": 3, "eps": -1})
    record(
        client,
        entries,
        "POST",
        f"/sessions/{sid}/mutate",
        {"vertex": 1, "eps": -1, "node": 0},
    )
    record(client, entries, "GET", f"/sessions/{sid}")
    return {"name": "a3-conflict", "seed": A3, "session_id": sid, "entries": entries}


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())
    fixtures = {
        "a3_session.json": record_a3_session(client),
        "a3_conflict.json": record_conflict_session(client),
    }
    for name, data in fixtures.items():
        path = OUT_DIR / name
        path.write_text(json.dumps(data, indent=2, sort_keys=False) + "\n")
        print(f"wrote {path} ({len(data['entries'])} entries)")


if __name__ == "__main__":
    main()
