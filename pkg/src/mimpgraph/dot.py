"""Graphviz rendering: formula part red, inference part green, delimiters gray."""

from __future__ import annotations

from .formula import format_formula
from .mimp_graph import MimpGraph, NodeKind, Role

__all__ = ["export_dot"]

_RULE_LABEL = {NodeKind.ELIM: "->E", NodeKind.INTRO: "->I", NodeKind.INTRO_V: "->I v"}
_RED, _GREEN, _GRAY = "red", "darkgreen", "gray50"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: MimpGraph, name: str = "mimp") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [fontname=Helvetica];"]
    for n in sorted(g.nodes):
        node = g.nodes[n]
        if node.kind.is_formula:
            attrs = f"label={_quote(format_formula(node.formula))}, shape=ellipse, color={_RED}, fontcolor={_RED}"
        elif node.kind.is_rule:
            attrs = f"label={_quote(_RULE_LABEL[node.kind])}, shape=box, color={_GREEN}, fontcolor={_GREEN}"
        else:
            text = "C" if node.kind is NodeKind.CONC else "H" + (f" {node.tag}" if node.tag else "")
            attrs = f"label={_quote(text)}, shape=plaintext, fontcolor={_GRAY}"
        lines.append(f"  n{n} [{attrs}];")
    for e in sorted(g.edges):
        if e.role in (Role.LEFT, Role.RIGHT):
            color = _RED
        elif e.role in (Role.HYP, Role.CONC):
            color = _GRAY
        else:
            color = _GREEN
        lines.append(f"  n{e.src} -> n{e.dst} [label={_quote(e.role.value)}, color={color}, fontcolor={color}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
