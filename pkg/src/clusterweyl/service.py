"""Stateful HTTP JSON service for interactive exploration.

A session holds a seed matrix and a tree of mutation nodes; every node
stores the snapshot produced when it was created, so moving the cursor
back returns byte-identical data and an exported tree replays exactly.
Requests within one session are serialized by a per-session lock;
distinct sessions proceed in parallel.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .companion import (
    Companion,
    NoSolution,
    find_admissible,
    generalized_cartan,
    is_admissible,
)
from .diagram import diagram_of, is_acyclic
from .errors import ClusterWeylError
from .matrix import SkewMatrix, mutate_matrix
from .relations import _m_json, edge_order_table, relation_reports
from .roots import CompanionBasis, RootLattice, mutate_basis, simple_basis


@dataclass
class Node:
    node: int
    parent: int | None
    vertex: int | None
    eps: int | None
    matrix: SkewMatrix
    companion: Companion | None
    basis: CompanionBasis | None
    snapshot: dict


@dataclass
class Session:
    id: str
    seed: SkewMatrix
    nodes: list[Node] = field(default_factory=list)
    cursor: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)
    warnings: list[str] = field(default_factory=list)


def _edge_orders_json(g) -> list[dict]:
    return [
        {"i": i, "j": j, "m": _m_json(m)}
        for (i, j), m in sorted(edge_order_table(g).items())
    ]


def _snapshot(node_id: int, m: SkewMatrix, c, bs, through=None) -> dict:
    g = diagram_of(m)
    reports = relation_reports(g, basis=bs, through=through, verify=bs is not None)
    return {
        "node": node_id,
        "matrix": m.to_json(),
        "diagram": g.to_json(),
        "companion": c.to_json() if c is not None else None,
        "admissible": is_admissible(c, g).to_json() if c is not None else None,
        "basis": bs.to_json() if bs is not None else None,
        "edge_orders": _edge_orders_json(g),
        "relations": [r.to_json() for r in reports],
        "all_weights_ge4": bool(g.edges) and all(e.weight >= 4 for e in g.edges),
        "acyclic": is_acyclic(g),
    }


class SessionStore:
    def __init__(self, journal_dir: str | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self.journal_dir = journal_dir
        if journal_dir:
            os.makedirs(journal_dir, exist_ok=True)

    def _journal(self, session_id: str, event: dict) -> None:
        if not self.journal_dir:
            return
        path = os.path.join(self.journal_dir, f"{session_id}.jsonl")
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def create(self, matrix_doc: dict) -> Session:
        seed = SkewMatrix.from_json(matrix_doc)
        warnings: list[str] = []
        companion: Companion | None
        basis: CompanionBasis | None
        if is_acyclic(diagram_of(seed)):
            companion = generalized_cartan(seed)
            basis = simple_basis(RootLattice.from_acyclic(seed))
        else:
            warnings.append(
                "seed diagram is not acyclic; companion-basis features need "
                "an explicit acyclic ancestor"
            )
            found = find_admissible(seed)
            if isinstance(found, NoSolution):
                warnings.append(
                    "no admissible companion exists for the seed "
                    "(logged as a potential counterexample)"
                )
                companion = None
            else:
                companion = found
            basis = None
        session = Session(id=uuid.uuid4().hex, seed=seed, warnings=warnings)
        snap = _snapshot(0, seed, companion, basis)
        session.nodes.append(
            Node(0, None, None, None, seed, companion, basis, snap)
        )
        with self._lock:
            self._sessions[session.id] = session
        self._journal(session.id, {"event": "create", "matrix": seed.to_json()})
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)


def create_app(journal_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="clusterweyl session service")
    store = SessionStore(journal_dir=journal_dir)
    app.state.store = store

    @app.exception_handler(ClusterWeylError)
    async def _domain_error(request: Request, exc: ClusterWeylError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    def _not_found():
        return JSONResponse(status_code=404, content={"error": "unknown session"})

    @app.post("/sessions")
    def create_session(body: dict):
        try:
            session = store.create(body)
        except (ClusterWeylError, KeyError, TypeError, ValueError) as exc:
            return JSONResponse(status_code=400, content={"error": str(exc)})
        return {
            "id": session.id,
            "root": session.nodes[0].snapshot,
            "warnings": session.warnings,
        }

    @app.get("/sessions/{session_id}")
    def get_state(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _not_found()
        with session.lock:
            return {
                "id": session.id,
                "cursor": session.cursor,
                "snapshot": session.nodes[session.cursor].snapshot,
                "tree": [
                    {
                        "node": nd.node,
                        "parent": nd.parent,
                        "vertex": nd.vertex,
                        "eps": nd.eps,
                    }
                    for nd in session.nodes
                ],
                "warnings": session.warnings,
            }

    @app.post("/sessions/{session_id}/mutate")
    def mutate(session_id: str, body: dict):
        session = store.get(session_id)
        if session is None:
            return _not_found()
        with session.lock:
            vertex = body.get("vertex")
            eps = body.get("eps", -1)
            if not isinstance(vertex, int) or not 1 <= vertex <= session.seed.n:
                return JSONResponse(
                    status_code=400, content={"error": f"invalid vertex {vertex!r}"}
                )
            if eps not in (1, -1):
                return JSONResponse(
                    status_code=400, content={"error": "eps must be +1 or -1"}
                )
            expected = body.get("node")
            if expected is not None and expected != session.cursor:
                return JSONResponse(
                    status_code=409,
                    content={
                        "error": "cursor moved; refetch state",
                        "cursor": session.cursor,
                    },
                )
            cur = session.nodes[session.cursor]
            if cur.basis is not None:
                new_basis = mutate_basis(cur.basis, cur.companion, vertex, eps)
                new_companion = new_basis.companion
                new_matrix = new_companion.matrix
            else:
                new_basis = None
                new_matrix = mutate_matrix(cur.matrix, vertex)
                found = find_admissible(new_matrix)
                new_companion = None if isinstance(found, NoSolution) else found
            node_id = len(session.nodes)
            snap = _snapshot(node_id, new_matrix, new_companion, new_basis, through=vertex)
            session.nodes.append(
                Node(
                    node_id,
                    cur.node,
                    vertex,
                    eps,
                    new_matrix,
                    new_companion,
                    new_basis,
                    snap,
                )
            )
            session.cursor = node_id
            store._journal(
                session.id, {"event": "mutate", "vertex": vertex, "eps": eps, "node": node_id}
            )
            return snap

    @app.post("/sessions/{session_id}/cursor")
    def move_cursor(session_id: str, body: dict):
        session = store.get(session_id)
        if session is None:
            return _not_found()
        with session.lock:
            node = body.get("node")
            if not isinstance(node, int) or not 0 <= node < len(session.nodes):
                return JSONResponse(
                    status_code=400, content={"error": f"unknown node {node!r}"}
                )
            session.cursor = node
            store._journal(session.id, {"event": "cursor", "node": node})
            return session.nodes[node].snapshot

    @app.get("/sessions/{session_id}/relations")
    def list_relations(session_id: str, full: bool = False):
        session = store.get(session_id)
        if session is None:
            return _not_found()
        with session.lock:
            nd = session.nodes[session.cursor]
            if full:
                reports = relation_reports(
                    diagram_of(nd.matrix), basis=nd.basis, verify=nd.basis is not None
                )
                return {"relations": [r.to_json() for r in reports]}
            return {"relations": nd.snapshot["relations"]}

    @app.get("/sessions/{session_id}/export")
    def export(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _not_found()
        with session.lock:
            return {
                "seed": session.seed.to_json(),
                "nodes": [
                    {
                        "node": nd.node,
                        "parent": nd.parent,
                        "vertex": nd.vertex,
                        "eps": nd.eps,
                    }
                    for nd in session.nodes
                ],
                "cursor": session.cursor,
            }

    return app


app = create_app(journal_dir=os.environ.get("CLUSTERWEYL_JOURNAL_DIR"))
