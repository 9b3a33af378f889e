"""Command-line surface over the toolkit.

One input format everywhere: JSON documents (files or "-" for stdin) in
the wire formats of the library.  Output is human-readable by default
and machine JSON with --json; given the same argv and --seed the JSON
output is byte-identical.  Exit codes: 0 success, 1 validation error,
2 internal error.
"""

from __future__ import annotations

import json
import logging
import os
import sys

import click

from . import (
    Companion,
    NoSolution,
    SkewMatrix,
    affine_dn_check,
    apply_sequence,
    check_weight_ge4_walk,
    companion_basis_for,
    diagram_of,
    dn_pattern_edges,
    find_admissible,
    generalized_cartan,
    group_order,
    is_acyclic,
    is_admissible,
    mutate_diagram,
    relation_reports,
)
from .diagram import Diagram
from .errors import ClusterWeylError

logger = logging.getLogger("clusterweyl")


def _setup_logging() -> None:
    level = os.environ.get("CLUSTERWEYL_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _emit(data, as_json: bool, pretty) -> None:
    if as_json:
        click.echo(json.dumps(data, sort_keys=True, separators=(",", ":")))
    else:
        click.echo(pretty(data) if callable(pretty) else pretty)


def _parse_seq(seq: str | None) -> list[int]:
    if not seq:
        return []
    return [int(tok) for tok in seq.replace(",", " ").split()]


def _parse_eps(eps: str, length: int) -> int | list[int]:
    parts = [int(tok) for tok in eps.replace(",", " ").split()]
    if any(p not in (1, -1) for p in parts):
        raise click.BadParameter("eps entries must be +1 or -1")
    if len(parts) == 1:
        return parts[0]
    if len(parts) != length:
        raise click.BadParameter("eps list length must match the sequence length")
    return parts


def _matrix_text(m: SkewMatrix) -> str:
    width = max(len(str(x)) for row in m.b for x in row)
    rows = ["[" + " ".join(f"{x:>{width}}" for x in row) + "]" for row in m.b]
    return "\n".join(rows) + f"\nd = {list(m.d)}"


def _diagram_text(g: Diagram) -> str:
    if not g.edges:
        return f"{g.n} vertices, no edges"
    lines = [f"{g.n} vertices"]
    for e in g.edges:
        w = f"  (weight {e.weight})" if e.weight != 1 else ""
        lines.append(f"  {e.tail} -> {e.head}{w}")
    return "\n".join(lines)


def _report_text(rep: dict) -> str:
    word = " ".join(
        f"t{abs(v)}" + ("'" if v < 0 else "") for v in rep["word"]
    )
    return f"[{rep['kind']}] ({word})^{rep['m']} = e   x={rep['x']}   {rep['verified']}"


class _Cli(click.Group):
    def invoke(self, ctx):
        _setup_logging()
        try:
            return super().invoke(ctx)
        except click.ClickException:
            raise
        except click.Abort:
            raise
        except (ClusterWeylError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
            logger.debug("validation error", exc_info=True)
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        except Exception as exc:  # pragma: no cover - defensive
            logger.debug("internal error", exc_info=True)
            click.echo(f"internal error: {exc}", err=True)
            sys.exit(2)


@click.group(cls=_Cli)
@click.version_option()
def main() -> None:
    """Skew-symmetrizable mutation, quasi-Cartan companions, and Weyl
    group relations."""


@main.command()
@click.option("--matrix", "matrix_path", default=None, help="matrix JSON file or -")
@click.option("--diagram", "diagram_path", default=None, help="diagram JSON file or -")
@click.option("--at", "at", type=int, default=None, help="vertex to mutate at (1-based)")
@click.option("--seq", default=None, help="comma-separated mutation sequence")
@click.option("--json", "as_json", is_flag=True)
def mutate(matrix_path, diagram_path, at, seq, as_json):
    """Mutate a matrix or a diagram at a vertex (or along a sequence)."""
    if (matrix_path is None) == (diagram_path is None):
        raise click.UsageError("pass exactly one of --matrix / --diagram")
    ks = _parse_seq(seq)
    if at is not None:
        ks = ks + [at]
    if not ks:
        raise click.UsageError("pass --at or --seq")
    if matrix_path is not None:
        m = SkewMatrix.from_json(_read_json(matrix_path))
        m = apply_sequence(m, ks)
        _emit(m.to_json(), as_json, lambda d: _matrix_text(m))
    else:
        g = Diagram.from_json(_read_json(diagram_path))
        for k in ks:
            g = mutate_diagram(g, k)
        _emit(g.to_json(), as_json, lambda d: _diagram_text(g))


@main.command()
@click.option("--matrix", "matrix_path", required=True)
@click.option("--json", "as_json", is_flag=True)
def diagram(matrix_path, as_json):
    """Print the diagram of a matrix."""
    g = diagram_of(SkewMatrix.from_json(_read_json(matrix_path)))
    _emit(g.to_json(), as_json, lambda d: _diagram_text(g))


@main.command()
@click.option("--companion", "companion_path", default=None, help="companion JSON")
@click.option("--matrix", "matrix_path", default=None, help="check the generalized Cartan companion of this matrix")
@click.option("--json", "as_json", is_flag=True)
def admissible(companion_path, matrix_path, as_json):
    """Check admissibility of a quasi-Cartan companion."""
    if (companion_path is None) == (matrix_path is None):
        raise click.UsageError("pass exactly one of --companion / --matrix")
    if companion_path is not None:
        c = Companion.from_json(_read_json(companion_path))
    else:
        c = generalized_cartan(SkewMatrix.from_json(_read_json(matrix_path)))
    rep = is_admissible(c)
    _emit(
        rep.to_json(),
        as_json,
        lambda d: "admissible"
        if rep.admissible
        else f"not admissible; failing cycle {list(rep.witness.vertices)}",
    )


@main.command("find-companion")
@click.option("--matrix", "matrix_path", required=True)
@click.option("--json", "as_json", is_flag=True)
def find_companion(matrix_path, as_json):
    """Search for an admissible companion (GF(2) parity solve)."""
    m = SkewMatrix.from_json(_read_json(matrix_path))
    result = find_admissible(m)
    if isinstance(result, NoSolution):
        data = {
            "no_solution": True,
            "infeasible_cycles": [list(c.vertices) for c in result.cycles],
        }
        _emit(
            data,
            as_json,
            lambda d: "no admissible companion; infeasible cycles "
            + str(data["infeasible_cycles"]),
        )
        return
    _emit(result.to_json(), as_json, lambda d: "\n".join(str(list(r)) for r in result.a))


def _threaded_state(matrix_path: str, seq: str | None, eps: str):
    m0 = SkewMatrix.from_json(_read_json(matrix_path))
    ks = _parse_seq(seq)
    policy = _parse_eps(eps, len(ks))
    if not is_acyclic(diagram_of(m0)):
        raise click.UsageError("seed diagram must be acyclic for basis threading")
    return companion_basis_for(m0, ks, policy)


@main.command()
@click.option("--matrix", "matrix_path", required=True, help="acyclic seed matrix JSON")
@click.option("--seq", default=None, help="mutation sequence, e.g. 2,3,1")
@click.option("--eps", default="-1", help='"-1", "+1", or a comma list per step')
@click.option("--json", "as_json", is_flag=True)
def basis(matrix_path, seq, eps, as_json):
    """Thread (matrix, companion, basis) from an acyclic seed."""
    m, c, bs = _threaded_state(matrix_path, seq, eps)
    data = {"matrix": m.to_json(), "companion": c.to_json(), "basis": bs.to_json()}
    _emit(
        data,
        as_json,
        lambda d: _matrix_text(m)
        + "\ncompanion:\n"
        + "\n".join(str(list(r)) for r in c.a)
        + "\nbasis:\n"
        + "\n".join(str(list(v)) for v in bs.vectors),
    )


@main.command()
@click.option("--matrix", "matrix_path", required=True, help="acyclic seed matrix JSON")
@click.option("--seq", default=None)
@click.option("--eps", default="-1")
@click.option("--verify/--no-verify", "do_verify", default=True)
@click.option("--jsonl", is_flag=True, help="one report per line")
@click.option("--json", "as_json", is_flag=True)
def relations(matrix_path, seq, eps, do_verify, jsonl, as_json):
    """Relation reports (pairs and oriented chordless cycles) for the
    state reached from an acyclic seed."""
    m, c, bs = _threaded_state(matrix_path, seq, eps)
    reports = relation_reports(diagram_of(m), basis=bs, verify=do_verify)
    rows = [r.to_json() for r in reports]
    if jsonl:
        for row in rows:
            click.echo(json.dumps(row, sort_keys=True, separators=(",", ":")))
        return
    _emit(rows, as_json, lambda d: "\n".join(_report_text(r) for r in rows))


@main.command()
@click.option("--matrix", "matrix_path", required=True)
@click.option("--seq", default=None)
@click.option("--eps", default="-1")
@click.option("--json", "as_json", is_flag=True)
def verify(matrix_path, seq, eps, as_json):
    """Verify every relation of the reached state; exit 1 on failure."""
    m, c, bs = _threaded_state(matrix_path, seq, eps)
    reports = relation_reports(diagram_of(m), basis=bs, verify=True)
    rows = [r.to_json() for r in reports]
    failed = [r for r in rows if r["verified"] == "failed"]
    _emit(
        {"reports": rows, "failed": len(failed)},
        as_json,
        lambda d: "\n".join(_report_text(r) for r in rows)
        + f"\n{len(rows) - len(failed)}/{len(rows)} verified",
    )
    if failed:
        sys.exit(1)


@main.command("walk-ge4")
@click.option("--matrix", "matrix_path", required=True)
@click.option("--steps", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--entry-cap", type=int, default=10**15, show_default=True)
@click.option("--allow-big", is_flag=True, help="lift the entry cap (arbitrary precision)")
@click.option("--json", "as_json", is_flag=True)
def walk_ge4(matrix_path, steps, seed, entry_cap, allow_big, as_json):
    """Random mutation walk asserting every edge weight stays >= 4."""
    m = SkewMatrix.from_json(_read_json(matrix_path))
    rep = check_weight_ge4_walk(
        m, steps=steps, seed=seed, entry_cap=entry_cap, allow_big_entries=allow_big
    )
    ok = rep.violation is None
    _emit(
        rep.to_json(),
        as_json,
        lambda d: f"steps: {rep.steps_taken}/{rep.steps_requested}  "
        f"min weight: {rep.min_weight}  "
        + ("no violation" if ok else f"VIOLATION: {rep.violation}"),
    )
    if not ok:
        sys.exit(1)


@main.command("group-order")
@click.option("--matrix", "matrix_path", required=True, help="acyclic seed matrix JSON")
@click.option("--seq", default=None)
@click.option("--eps", default="-1")
@click.option("--cap", type=int, default=10000, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def group_order_cmd(matrix_path, seq, eps, cap, as_json):
    """BFS order of the group generated by the companion-basis
    reflections."""
    m, c, bs = _threaded_state(matrix_path, seq, eps)
    gens = [bs.reflection(i) for i in range(1, bs.lattice.n + 1)]
    order = group_order(gens, cap=cap)
    _emit(
        {"order": order, "exceeded": order is None, "cap": cap},
        as_json,
        lambda d: f"group order: {order}" if order is not None else f"exceeds cap {cap}",
    )


@main.command("affine-check")
@click.option("--vertices", "size", type=int, default=5, show_default=True,
              help="number of pattern vertices (n+1 for the D-type rank n pattern)")
@click.option("--json", "as_json", is_flag=True)
def affine_check(size, as_json):
    """Build the D-type pattern (oriented cycle with two spikes), derive
    a normalized companion basis through its acyclic ancestor, and check
    the orthogonality relation."""
    from .testsupport import dn_pattern_basis

    bs, labeling = dn_pattern_basis(size)
    ok = affine_dn_check(bs, labeling)
    _emit(
        {"vertices": size, "ok": ok, "pattern_edges": dn_pattern_edges(size)},
        as_json,
        lambda d: f"pattern on {size} vertices: " + ("verified" if ok else "FAILED"),
    )
    if not ok:
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8639, show_default=True)
@click.option("--journal-dir", default=None, help="append-only JSONL journal directory")
@click.option("--config", "config_path", default=None, help="JSON config file")
def serve(host, port, journal_dir, config_path):
    """Run the HTTP session service."""
    import uvicorn

    from .service import create_app

    if config_path:
        cfg = _read_json(config_path)
        host = cfg.get("host", host)
        port = cfg.get("port", port)
        journal_dir = cfg.get("journal_dir", journal_dir)
    host = os.environ.get("CLUSTERWEYL_HOST", host)
    port = int(os.environ.get("CLUSTERWEYL_PORT", port))
    journal_dir = journal_dir or os.environ.get("CLUSTERWEYL_JOURNAL_DIR")
    app = create_app(journal_dir=journal_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
