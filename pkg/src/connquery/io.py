"""Reading and writing graphs, certificates and witnesses.

Graph text format::

    n m
    u v w        # m lines, 1-indexed, w decimal or p/q

Graph JSON: ``{"n": n, "edges": [[u, v, "p/q"], ...]}``.
Certificate JSON: ``{"n": n, "rows": [["p/q", ...], ...]}``; a witness file
adds ``"tau"`` and may restrict columns with ``"columns"`` (slot indices) and
rows with ``"shores"`` (vertex lists).  Rationals are written as ``str(Fraction)``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .certificates.cuts import CutCertificate
from .certificates.witness import CutRankWitness
from .graph import WeightedGraph, make_graph


class FormatError(ValueError):
    """Malformed graph, certificate or witness file."""


def _rational(tok, what: str) -> Fraction:
    try:
        return Fraction(str(tok).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {tok!r} in {what}") from exc


def parse_graph_text(text: str) -> WeightedGraph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise FormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError("first line must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError("first line must hold two integers") from exc
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header announces {m} edges, found {len(body)} lines")
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"edge line must be 'u v w': {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"bad endpoints in {ln!r}") from exc
        edges.append((u, v, _rational(parts[2], "edge weight")))
    try:
        return make_graph(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def graph_from_json(obj) -> WeightedGraph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v), _rational(w, "edge weight")) for u, v, w in obj["edges"]]
        return make_graph(n, edges)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"graph JSON needs 'n' and 'edges': {exc}") from exc
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def graph_to_text(g: WeightedGraph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v} {w}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def graph_to_json(g: WeightedGraph) -> dict:
    return {"n": g.n, "edges": [[u, v, str(w)] for u, v, w in g.edges]}


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{what} is not valid JSON: {exc}") from exc


def read_graph(path) -> WeightedGraph:
    text = Path(path).read_text()
    if str(path).endswith(".json") or text.lstrip().startswith("{"):
        return graph_from_json(_load_json(text, "graph file"))
    return parse_graph_text(text)


def write_graph(g: WeightedGraph, path) -> None:
    if str(path).endswith(".json"):
        Path(path).write_text(json.dumps(graph_to_json(g)) + "\n")
    else:
        Path(path).write_text(graph_to_text(g))


def certificate_to_json(A: CutCertificate) -> dict:
    return {"n": A.n, "rows": [[str(x) for x in r] for r in A.rows]}


def certificate_from_json(obj) -> CutCertificate:
    try:
        n = int(obj["n"])
        rows = tuple(tuple(_rational(x, "certificate row") for x in r) for r in obj["rows"])
        return CutCertificate(n, rows)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"certificate JSON needs 'n' and 'rows': {exc}") from exc
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def witness_to_json(X: CutRankWitness) -> dict:
    out = {"n": X.n, "rows": [[str(x) for x in r] for r in X.rows], "tau": str(X.tau)}
    if X.columns is not None:
        out["columns"] = list(X.columns)
    if X.shores is not None:
        out["shores"] = [sorted(S) for S in X.shores]
    return out


def witness_from_json(obj) -> CutRankWitness:
    try:
        n = int(obj["n"])
        rows = tuple(tuple(_rational(x, "witness row") for x in r) for r in obj["rows"])
        tau = _rational(obj["tau"], "tau")
        columns = tuple(int(c) for c in obj["columns"]) if "columns" in obj else None
        shores = tuple(frozenset(int(v) for v in S) for S in obj["shores"]) if "shores" in obj else None
        return CutRankWitness(n, rows, tau, shores, columns)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"witness JSON needs 'n', 'rows' and 'tau': {exc}") from exc
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def read_certificate(path) -> CutCertificate:
    return certificate_from_json(_load_json(Path(path).read_text(), "certificate file"))


def read_witness(path) -> CutRankWitness:
    return witness_from_json(_load_json(Path(path).read_text(), "witness file"))


def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")
