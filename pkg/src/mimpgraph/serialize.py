"""JSON interchange for mimp-graphs.

Nodes are listed by id and edges in sorted order, so saving the same graph
twice gives the same bytes.  Each use edge carries ``via``, the rule or
hypothesis nodes that provide the formula at that use.
"""

from __future__ import annotations

import json
from typing import Any

from .formula import FormulaSyntaxError, format_formula, parse_formula
from .mimp_graph import Edge, MimpGraph, MimpGraphError, Node, NodeKind, Role, Violation, validate

__all__ = ["GraphFormatError", "InvalidGraph", "graph_to_json", "graph_from_json", "dumps_graph", "loads_graph"]


class GraphFormatError(MimpGraphError):
    code = "GraphFormatError"


class InvalidGraph(MimpGraphError):
    code = "InvalidGraph"

    def __init__(self, violations: list[Violation]) -> None:
        super().__init__(f"graph fails validation: {violations[0].message}")
        self.violations = violations


def graph_to_json(g: MimpGraph) -> dict[str, Any]:
    nodes = []
    for n in sorted(g.nodes):
        node = g.nodes[n]
        entry: dict[str, Any] = {"id": n, "kind": node.kind.value}
        if node.formula is not None:
            entry["formula"] = format_formula(node.formula)
        if node.tag is not None:
            entry["tag"] = node.tag
        nodes.append(entry)
    edges = []
    for e in sorted(g.edges):
        entry = {"src": e.src, "role": e.role.value, "dst": e.dst}
        if e.rule is not None:
            entry["rule"] = e.rule
        if e in g.via:
            entry["via"] = sorted(g.via[e])
        edges.append(entry)
    return {"nodes": nodes, "edges": edges}


def _field(obj: dict, key: str, kind: type, where: str) -> Any:
    if key not in obj:
        raise GraphFormatError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise GraphFormatError(f"{where}: field {key!r} has the wrong type")
    return value


def graph_from_json(data: Any) -> MimpGraph:
    if not isinstance(data, dict) or not isinstance(data.get("nodes"), list) or not isinstance(data.get("edges"), list):
        raise GraphFormatError("expected an object with 'nodes' and 'edges' lists")
    g = MimpGraph()
    for k, obj in enumerate(data["nodes"]):
        where = f"nodes[{k}]"
        if not isinstance(obj, dict):
            raise GraphFormatError(f"{where}: expected an object")
        nid = _field(obj, "id", int, where)
        if nid in g.nodes:
            raise GraphFormatError(f"{where}: duplicate id {nid}")
        try:
            kind = NodeKind(_field(obj, "kind", str, where))
        except ValueError:
            raise GraphFormatError(f"{where}: unknown kind {obj['kind']!r}") from None
        formula = None
        if "formula" in obj:
            try:
                formula = parse_formula(_field(obj, "formula", str, where))
            except FormulaSyntaxError as exc:
                raise GraphFormatError(f"{where}: {exc}") from None
        tag = _field(obj, "tag", str, where) if "tag" in obj else None
        g.nodes[nid] = Node(kind, formula, tag)
    for k, obj in enumerate(data["edges"]):
        where = f"edges[{k}]"
        if not isinstance(obj, dict):
            raise GraphFormatError(f"{where}: expected an object")
        try:
            role = Role(_field(obj, "role", str, where))
        except ValueError:
            raise GraphFormatError(f"{where}: unknown role {obj['role']!r}") from None
        rule = _field(obj, "rule", int, where) if "rule" in obj else None
        edge = Edge(_field(obj, "src", int, where), role, _field(obj, "dst", int, where), rule)
        via = None
        if "via" in obj:
            via = _field(obj, "via", list, where)
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in via):
                raise GraphFormatError(f"{where}: 'via' must list node ids")
        g.add_edge(edge, via)
    return g


def dumps_graph(g: MimpGraph) -> str:
    return json.dumps(graph_to_json(g), indent=2) + "\n"


def loads_graph(text: str, check: bool = True, f_minimal: bool = False) -> MimpGraph:
    """Parse a graph; with ``check`` the result must pass ``validate``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from None
    g = graph_from_json(data)
    if check:
        problems = validate(g, f_minimal=f_minimal)
        if problems:
            raise InvalidGraph(problems)
    return g
