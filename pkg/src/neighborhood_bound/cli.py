"""Command-line client for the verification service.

Every subcommand assembles one request, performs it against the FastAPI app
in-process (no sockets involved), and renders the response as canonical JSON,
a short text summary, or DOT where a graph is available.

Exit codes: 0 — every checked property holds; 1 — a counterexample or
violation was found (the report embeds the reproducing instance); 2 — usage
or input error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import re
import sys
from typing import Optional

import httpx

from .certificates import CertificateError
from .corollaries import NonnegMatrix, matrix_from_csv_text, matrix_from_json_obj
from .digraph import Digraph, PairRelation, digraph_from_text, digraph_to_dot, mutual_pairs


class UsageError(Exception):
    """Anything that should end the run with exit code 2."""


def _post(path: str, payload: dict) -> httpx.Response:
    from .service.app import app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://nbound.invalid"
        ) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _parse_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def _graph_payload(text: str) -> dict:
    """Accept the JSON graph format or the plain "n / i j" text format."""
    if text.lstrip().startswith("{"):
        obj = _parse_json(text)
        if not isinstance(obj, dict) or "n" not in obj:
            raise UsageError('graph JSON must be an object with an "n" key')
        edges = obj.get("edges", [])
        if not isinstance(edges, list):
            raise UsageError('"edges" must be a list of [i, j] pairs')
        return {
            "n": obj["n"],
            "edges": edges,
            "undirected": bool(obj.get("undirected", False)),
        }
    try:
        g = digraph_from_text(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"n": g.n, "edges": [list(e) for e in sorted(g.edges)], "undirected": False}


def _matrix_payload(text: str) -> dict:
    stripped = text.lstrip()
    try:
        if stripped.startswith("{") or stripped.startswith("["):
            a = matrix_from_json_obj(_parse_json(text))
        else:
            a = matrix_from_csv_text(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"matrix": [list(row) for row in a.entries]}


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(text)


def _canonical_json(body) -> str:
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def _input_failure(resp: httpx.Response) -> int:
    try:
        detail = resp.json().get("detail")
    except ValueError:
        detail = resp.text
    if isinstance(detail, list):  # pydantic validation report
        parts = []
        for item in detail:
            loc = ".".join(str(p) for p in item.get("loc", []) if p != "body")
            parts.append(f"{loc}: {item.get('msg', '')}".strip(": "))
        detail = "; ".join(parts)
    print(f"error: {detail}", file=sys.stderr)
    return 2


def _overlayed_dot(n: int, edges, name: str) -> str:
    g = Digraph.from_pairs(n, [tuple(e) for e in edges])
    pairs = mutual_pairs(g)
    return digraph_to_dot(g, overlay=pairs, name=name)


def _sanitize(name: str) -> str:
    return re.sub(r"[^0-9A-Za-z_]", "_", name) or "x"


# --- check ---------------------------------------------------------------------


def _text_check(body: dict) -> str:
    lines = []
    if body["kind"] == "undirected":
        c = body["corollary"]
        lines.append(
            f"corollary: |walk-2 pairs| = {c['g2_size']} >= |walk-1 pairs| = "
            f"{c['g1_size']}: {'holds' if c['holds'] else 'VIOLATED'}"
        )
    else:
        o = body["oracle"]
        lines.append(
            f"oracle: |T| = {o['t_size']} >= |E| = {o['e_size']}: "
            f"{'holds' if o['holds'] else 'VIOLATED'}"
        )
    if body["certificate_error"]:
        lines.append(f"certificate: FAILED ({body['certificate_error']})")
    else:
        v = body["verify"]
        lines.append(
            f"certificate: {len(v['steps'])} steps verified, "
            f"{v['total_attributed']} pairs attributed for "
            f"{v['total_removed_edges']} removed edges"
        )
        lines.append(
            "cross-checks: ok" if v["cross_checks_ok"] else "cross-checks: MISMATCH"
        )
    lines.append(f"verdict: {'ok' if body['ok'] else 'FAILED'}")
    return "\n".join(lines) + "\n"


def cmd_check(args: argparse.Namespace) -> int:
    payload = _graph_payload(_read_input(args.file))
    resp = _post("/check", {"graph": payload, "strict": args.strict})
    if resp.status_code != 200:
        return _input_failure(resp)
    body = resp.json()
    if args.format == "json":
        _emit(args, _canonical_json(body))
    elif args.format == "text":
        _emit(args, _text_check(body))
    else:
        cert = body.get("certificate")
        if cert:
            graph = cert["input"]
        elif payload["undirected"]:
            pairs = {(int(i), int(j)) for i, j in payload["edges"]}
            graph = {
                "n": payload["n"],
                "edges": sorted(pairs | {(j, i) for i, j in pairs}),
            }
        else:
            graph = payload
        _emit(args, _overlayed_dot(graph["n"], graph["edges"], "checked"))
    return 0 if body["ok"] else 1


# --- fuzz ----------------------------------------------------------------------


def _text_fuzz(body: dict) -> str:
    line = (
        f"checked {body['count']} digraphs (n={body['n']}, "
        f"edge_prob={body['edge_prob']}, seed={body['seed']}, "
        f"loops={'on' if body['allow_loops'] else 'off'}): "
        f"{body['holds']} hold, {body['certified']} certified, "
        f"{body['violation_count']} violations, "
        f"{body['mismatch_count']} cross-check mismatches"
    )
    return line + "\n"


def cmd_fuzz(args: argparse.Namespace) -> int:
    payload = {
        "seed": args.seed,
        "count": args.count,
        "n": args.nodes,
        "edge_prob": args.edge_prob,
        "allow_loops": not args.no_loops,
        "strict": args.strict,
    }
    resp = _post("/fuzz", payload)
    if resp.status_code != 200:
        return _input_failure(resp)
    body = resp.json()
    if args.format == "dot":
        raise UsageError("--format dot is not available for fuzz summaries")
    _emit(args, _canonical_json(body) if args.format == "json" else _text_fuzz(body))
    return 0 if body["ok"] else 1


# --- exhaustive ------------------------------------------------------------------


def _text_exhaustive(body: dict) -> str:
    lines = []
    for n, c in sorted(body["per_n"].items(), key=lambda kv: int(kv[0])):
        extra = f", {c['certified']} certified" if "certified" in c else ""
        lines.append(
            f"n={n}: {c['graphs']} graphs, {c['holds']} hold, "
            f"{c['equality']} with equality{extra}"
        )
    lines.append(
        f"total: {body['total_graphs']} graphs, "
        f"{len(body['violations'])} violations reported"
    )
    lines.append(f"verdict: {'ok' if body['ok'] else 'FAILED'}")
    return "\n".join(lines) + "\n"


def cmd_exhaustive(args: argparse.Namespace) -> int:
    payload = {
        "n_max": args.nodes,
        "allow_loops": not args.no_loops,
        "with_certificates": not args.no_certificates,
        "undirected": args.undirected,
    }
    resp = _post("/exhaustive", payload)
    if resp.status_code != 200:
        return _input_failure(resp)
    body = resp.json()
    if args.format == "dot":
        raise UsageError("--format dot is not available for exhaustive summaries")
    _emit(
        args, _canonical_json(body) if args.format == "json" else _text_exhaustive(body)
    )
    return 0 if body["ok"] else 1


# --- matrix --------------------------------------------------------------------


def _text_matrix(body: dict) -> str:
    lines = [
        f"gram support {body['gram_size']} >= support {body['supp_size']}: "
        f"{'holds' if body['holds'] else 'VIOLATED'}",
        "numeric route: "
        + ("agrees" if body["numeric_agrees"] else "DISAGREES with boolean route"),
        f"verdict: {'ok' if body['ok'] else 'FAILED'}",
    ]
    return "\n".join(lines) + "\n"


def cmd_matrix(args: argparse.Namespace) -> int:
    payload = _matrix_payload(_read_input(args.file))
    resp = _post("/matrix", payload)
    if resp.status_code != 200:
        return _input_failure(resp)
    body = resp.json()
    if args.format == "json":
        _emit(args, _canonical_json(body))
    elif args.format == "text":
        _emit(args, _text_matrix(body))
    else:
        g = Digraph.from_pairs(
            body["support_graph"]["n"],
            [tuple(e) for e in body["support_graph"]["edges"]],
        )
        overlay = PairRelation(g.n, frozenset(tuple(p) for p in body["gram"]))
        _emit(args, digraph_to_dot(g, overlay=overlay, name="support"))
    return 0 if body["ok"] else 1


# --- grading ---------------------------------------------------------------------


def _split_elements(raw: str) -> list[str]:
    return [tok.strip() for tok in raw.split(",") if tok.strip()]


def _text_grading(body: dict) -> str:
    lines = [
        f"group order {body['group_order']}, H = {{{', '.join(body['H'])}}}, "
        f"tuple = ({', '.join(body['tuple'])})"
    ]
    for name, dim in body["dims"].items():
        lines.append(f"  dim[{name}] = {dim}")
    lines.append(
        f"total {body['total']} (expected {body['expected_total']}): "
        f"{'ok' if body['total_ok'] else 'MISMATCH'}"
    )
    tb = body["theorem_b"]
    if tb["trivial_is_max"]:
        lines.append("identity component is maximal: yes")
    else:
        lines.append(f"identity component is maximal: NO (witness {tb['witness']})")
    for comp in body["components"]:
        verdict = "ok" if comp["injection_ok"] and comp["chain_ok"] else "FAILED"
        lines.append(
            f"  g={comp['g']}: |E_e|={comp['e_size']} >= |T|={comp['t_size']} "
            f">= |E_g|={body['dims'][comp['g']]}: {verdict}"
        )
    lines.append(f"verdict: {'ok' if body['ok'] else 'FAILED'}")
    return "\n".join(lines) + "\n"


def _grading_dot(body: dict) -> str:
    n = len(body["tuple"])
    blocks = []
    for name, edges in body["component_edges"].items():
        blocks.append(_overlayed_dot(n, edges, f"gamma_{_sanitize(name)}"))
    return "\n".join(blocks)


def _group_payload(args: argparse.Namespace):
    if args.group_file:
        if args.group:
            raise UsageError("give either a group spec or --group-file, not both")
        return _parse_json(_read_input(args.group_file))
    if not args.group:
        raise UsageError("a group spec (like C2, D4, S3, Q8, C2xC4) is required")
    return args.group


def cmd_grading(args: argparse.Namespace) -> int:
    payload = {
        "group": _group_payload(args),
        "H": _split_elements(args.subgroup),
        "tuple": _split_elements(args.tuple),
    }
    if not payload["tuple"]:
        raise UsageError("--tuple needs at least one element name")
    resp = _post("/grading", payload)
    if resp.status_code != 200:
        return _input_failure(resp)
    body = resp.json()
    if args.format == "json":
        _emit(args, _canonical_json(body))
    elif args.format == "text":
        _emit(args, _text_grading(body))
    else:
        _emit(args, _grading_dot(body))
    return 0 if body["ok"] else 1


def _text_sweep(body: dict) -> str:
    return (
        f"group {body['group']} (order {body['group_order']}): "
        f"{body['subgroup_count']} subgroups, {body['data_count']} data with "
        f"tuple length <= {body['n_max']}, {body['violation_count']} violations\n"
        f"verdict: {'ok' if body['ok'] else 'FAILED'}\n"
    )


def cmd_grading_sweep(args: argparse.Namespace) -> int:
    payload = {"group": _group_payload(args), "n_max": args.nodes}
    resp = _post("/grading-sweep", payload)
    if resp.status_code != 200:
        return _input_failure(resp)
    body = resp.json()
    if args.format == "dot":
        raise UsageError("--format dot is not available for sweep summaries")
    _emit(args, _canonical_json(body) if args.format == "json" else _text_sweep(body))
    return 0 if body["ok"] else 1


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nbound",
        description=(
            "Verify that finite digraphs have at least as many mutually-"
            "neighbored ordered vertex pairs as edges — with replayable "
            "certificates — plus the undirected and matrix-support corollaries "
            "and dimension audits for group-graded matrix data. Set "
            "NEIGHBORHOOD_BOUND_THREADS to cap sweep parallelism."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--strict",
            action="store_true",
            help="treat bookkeeping-formula cross-check mismatches as failures",
        )
        p.add_argument("--format", choices=("json", "text", "dot"), default="json")
        p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    p = sub.add_parser("check", help="check one digraph (or undirected graph) file")
    p.add_argument("file", help="graph file (JSON, or 'n' + 'i j' lines); '-' for stdin")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fuzz", help="check seeded random digraphs")
    p.add_argument("--seed", type=int, default=0, help="64-bit generator seed")
    p.add_argument("--count", type=int, default=100, help="number of digraphs")
    p.add_argument("--nodes", type=int, default=6, help="vertices per digraph")
    p.add_argument("--edge-prob", type=float, default=0.3, help="independent edge probability")
    p.add_argument("--no-loops", action="store_true", help="generate loop-free digraphs")
    common(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("exhaustive", help="check every digraph up to a vertex count")
    p.add_argument("--nodes", type=int, default=4, help="largest vertex count to sweep")
    p.add_argument("--no-loops", action="store_true", help="skip loops in the edge universe")
    p.add_argument(
        "--undirected",
        action="store_true",
        help="sweep simple undirected graphs (walk-pair corollary) instead",
    )
    p.add_argument(
        "--no-certificates",
        action="store_true",
        help="oracle counts only; skip building and replaying certificates",
    )
    common(p)
    p.set_defaults(func=cmd_exhaustive)

    p = sub.add_parser("matrix", help="check the support inequality for one matrix file")
    p.add_argument("file", help="matrix file (CSV rows or JSON 2D array); '-' for stdin")
    common(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("grading", help="audit one grading datum (group, subgroup, tuple)")
    p.add_argument("group", nargs="?", help="builtin group spec, e.g. C2, D4, S3, Q8, C2xC4")
    p.add_argument("--group-file", metavar="PATH", help="JSON Cayley table instead of a spec")
    p.add_argument(
        "--subgroup",
        default="",
        help="comma-separated subgroup generators by element name (empty = trivial)",
    )
    p.add_argument(
        "--tuple",
        required=True,
        help="comma-separated grading tuple, e.g. 'e,a' or 'e,(12)'",
    )
    common(p)
    p.set_defaults(func=cmd_grading)

    p = sub.add_parser(
        "grading-sweep", help="audit every (subgroup, tuple) datum of a group"
    )
    p.add_argument("group", nargs="?", help="builtin group spec, e.g. C2, D4, S3, Q8, C2xC4")
    p.add_argument("--group-file", metavar="PATH", help="JSON Cayley table instead of a spec")
    p.add_argument("--nodes", type=int, default=2, help="largest tuple length to sweep")
    common(p)
    p.set_defaults(func=cmd_grading_sweep)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CertificateError, RuntimeError) as exc:
        print(f"violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
