"""Translate tree deductions into F-minimal mimp-graphs."""

from __future__ import annotations

from dataclasses import dataclass

from .formula import Formula, format_formula
from .mimp_graph import MimpGraph, Role, apply_imp_elim, apply_imp_intro, basis
from .nd_proof import Hyp, ImpIntro, NDProof, Position, check_proof, positions, symbol_size

__all__ = ["TranslationCert", "to_mimp", "f_minimal_check", "graph_size", "tree_size"]


@dataclass(frozen=True)
class TranslationCert:
    node_map: dict[Position, int]
    size_tree: int
    size_graph: int

    def to_json(self) -> dict:
        return {
            "node_map": {".".join(map(str, pos)) or "root": rule for pos, rule in sorted(self.node_map.items())},
            "size_tree": self.size_tree,
            "size_graph": self.size_graph,
        }


def _binder_labels(p: NDProof) -> dict[Position, str]:
    """Give every introduction a distinct delimiter tag.

    Free hypotheses get no tag, so all open occurrences of a formula share one
    delimiter; each discharge gets its own.
    """
    labels: dict[Position, str] = {}
    binders = sorted((pos, node) for pos, node in positions(p) if isinstance(node, ImpIntro))
    taken = {node.tag for _, node in binders}
    used: set[str] = set()
    for pos, node in binders:
        label, n = node.tag, 0
        while label in used or (n and label in taken):
            n += 1
            label = f"{node.tag}_{n}"
        used.add(label)
        labels[pos] = label
    return labels


def to_mimp(p: NDProof) -> tuple[MimpGraph, TranslationCert]:
    check_proof(p)
    labels = _binder_labels(p)
    node_map: dict[Position, int] = {}

    def go(node: NDProof, pos: Position, env: dict[str, str]) -> MimpGraph:
        if isinstance(node, Hyp):
            return basis(node.formula, env.get(node.tag))
        if isinstance(node, ImpIntro):
            label = labels[pos]
            body = go(node.body, pos + (0,), {**env, node.tag: label})
            hyp = None if node.vacuous else body.find_hyp(node.antecedent, label)
            g = apply_imp_intro(body, node.antecedent, hyp)
        else:
            major = go(node.major, pos + (0,), env)
            minor = go(node.minor, pos + (1,), env)
            g = apply_imp_elim(minor, major)
        (conc,) = g.conc_edges()
        (node_map[pos],) = g.via[conc]
        return g

    g = go(p, (), {})
    return g, TranslationCert(node_map, tree_size(p), graph_size(g))


def f_minimal_check(g: MimpGraph) -> list[Formula]:
    """Formulas labelling more than one node (empty when ``g`` is F-minimal)."""
    seen: set[Formula] = set()
    dups: list[Formula] = []
    for n in g.formula_ids():
        f = g.nodes[n].formula
        if f in seen and f not in dups:
            dups.append(f)
        seen.add(f)
    return sorted(dups, key=format_formula)


def graph_size(g: MimpGraph) -> int:
    return g.size()


def tree_size(p: NDProof) -> int:
    """Symbols of the tree deduction: formula symbols plus inference lines."""
    return symbol_size(p)


def uses_by_role(g: MimpGraph, formula: Formula, role: Role) -> int:
    node = g.formula_index()[formula]
    return sum(1 for e in g.edges if e.src == node and e.role is role)
