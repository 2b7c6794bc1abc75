"""Proof-graphs for minimal implicational logic (mimp-graphs).

A graph mixes three kinds of nodes:

* formula nodes (``atom``/``arrow``), shared so that each formula appears once
  and linked to their immediate subformulas by ``l``/``r`` edges;
* rule nodes (``elim``, ``intro``, ``intro_v``) wired to formula nodes by
  premise (``p``), minor (``m``), major (``M``) and conclusion (``c``) edges,
  and to hypothesis delimiters by ``disc`` edges;
* delimiters: ``hyp`` nodes marking hypotheses and the single ``conc`` node.

Because formulas are shared, a formula node may be the conclusion of several
rules and the premise of several others.  Every premise edge and the final
``conc`` edge therefore records its *providers* (``via``): the rule nodes or
hypothesis delimiters that justify that particular use of the formula.  This
plays the part of the edge indices that pair each conclusion with its uses,
and the inferential order is read off it.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .formula import Atom, Formula, Impl, format_formula

__all__ = [
    "NodeKind",
    "Role",
    "Node",
    "Edge",
    "MimpGraph",
    "Violation",
    "MimpGraphError",
    "NotComposable",
    "NoSuchHypothesis",
    "CyclicOrder",
    "InferentialOrder",
    "basis",
    "merge",
    "apply_imp_elim",
    "apply_imp_intro",
    "inferential_order",
    "validate",
    "conclusion",
    "hypotheses",
    "canonical_form",
    "live_nodes",
]


class NodeKind(str, Enum):
    ATOM = "atom"
    ARROW = "arrow"
    ELIM = "elim"
    INTRO = "intro"
    INTRO_V = "intro_v"
    HYP = "hyp"
    CONC = "conc"

    @property
    def is_formula(self) -> bool:
        return self in (NodeKind.ATOM, NodeKind.ARROW)

    @property
    def is_rule(self) -> bool:
        return self in (NodeKind.ELIM, NodeKind.INTRO, NodeKind.INTRO_V)


class Role(str, Enum):
    LEFT = "l"
    RIGHT = "r"
    PREMISE = "p"
    MINOR = "m"
    MAJOR = "M"
    CONCLUSION = "c"
    DISC = "disc"
    HYP = "hyp"
    CONC = "conc"


# roles whose edges carry provider sets
USE_ROLES = frozenset({Role.PREMISE, Role.MINOR, Role.MAJOR, Role.CONC})
RULE_ROLES = frozenset({Role.PREMISE, Role.MINOR, Role.MAJOR, Role.CONCLUSION, Role.DISC})


@dataclass(frozen=True)
class Node:
    kind: NodeKind
    formula: Formula | None = None
    tag: str | None = None

    def describe(self) -> str:
        if self.formula is not None:
            return format_formula(self.formula)
        if self.kind is NodeKind.HYP:
            return f"H[{self.tag}]" if self.tag is not None else "H"
        return self.kind.value


@dataclass(frozen=True, order=True)
class Edge:
    src: int
    role: Role
    dst: int
    rule: int | None = None


class MimpGraphError(Exception):
    code = "MimpGraphError"


class NotComposable(MimpGraphError):
    code = "NotComposable"


class NoSuchHypothesis(MimpGraphError):
    code = "NoSuchHypothesis"


class CyclicOrder(MimpGraphError):
    code = "CyclicOrder"

    def __init__(self, node: int, message: str = "") -> None:
        super().__init__(message or f"rule node {node} lies on a cycle of the inferential order")
        self.node = node


@dataclass(frozen=True)
class Violation:
    code: str
    node: int | None
    message: str

    def to_json(self) -> dict:
        return {"code": self.code, "node": self.node, "message": self.message}


@dataclass
class MimpGraph:
    nodes: dict[int, Node] = field(default_factory=dict)
    edges: set[Edge] = field(default_factory=set)
    via: dict[Edge, frozenset[int]] = field(default_factory=dict)
    # levels cached by ``reorder``; never copied
    order: InferentialOrder | None = field(default=None, compare=False, repr=False)

    def copy(self) -> "MimpGraph":
        return MimpGraph(dict(self.nodes), set(self.edges), dict(self.via))

    # -- node bookkeeping -------------------------------------------------

    def fresh_id(self) -> int:
        return max(self.nodes, default=-1) + 1

    def add_node(self, node: Node) -> int:
        nid = self.fresh_id()
        self.nodes[nid] = node
        return nid

    def add_edge(self, edge: Edge, via: Iterable[int] | None = None) -> None:
        self.edges.add(edge)
        if via is not None:
            self.via[edge] = self.via.get(edge, frozenset()) | frozenset(via)

    def remove_edge(self, edge: Edge) -> None:
        self.edges.discard(edge)
        self.via.pop(edge, None)

    def remove_node(self, nid: int) -> None:
        for e in [e for e in self.edges if e.src == nid or e.dst == nid or e.rule == nid]:
            self.remove_edge(e)
        del self.nodes[nid]

    def ids(self, *kinds: NodeKind) -> list[int]:
        return sorted(n for n, node in self.nodes.items() if node.kind in kinds)

    def formula_ids(self) -> list[int]:
        return self.ids(NodeKind.ATOM, NodeKind.ARROW)

    def rule_ids(self) -> list[int]:
        return self.ids(NodeKind.ELIM, NodeKind.INTRO, NodeKind.INTRO_V)

    def hyp_ids(self) -> list[int]:
        return self.ids(NodeKind.HYP)

    def conc_id(self) -> int:
        (cid,) = self.ids(NodeKind.CONC) or (None,)
        if cid is None:
            raise MimpGraphError("graph has no conclusion delimiter")
        return cid

    def formula_index(self) -> dict[Formula, int]:
        index: dict[Formula, int] = {}
        for n in self.formula_ids():
            index.setdefault(self.nodes[n].formula, n)
        return index

    def ensure_formula(self, f: Formula, index: dict[Formula, int] | None = None) -> int:
        """Return the node for ``f``, adding it and missing subformulas."""
        index = self.formula_index() if index is None else index
        found = index.get(f)
        if found is not None:
            return found
        if isinstance(f, Impl):
            left = self.ensure_formula(f.left, index)
            right = self.ensure_formula(f.right, index)
            nid = self.add_node(Node(NodeKind.ARROW, f))
            self.add_edge(Edge(nid, Role.LEFT, left))
            self.add_edge(Edge(nid, Role.RIGHT, right))
        else:
            nid = self.add_node(Node(NodeKind.ATOM, f))
        index[f] = nid
        return nid

    # -- adjacency ---------------------------------------------------------

    def out_edges(self, nid: int, role: Role | None = None) -> list[Edge]:
        return sorted(e for e in self.edges if e.src == nid and (role is None or e.role is role))

    def in_edges(self, nid: int, role: Role | None = None) -> list[Edge]:
        return sorted(e for e in self.edges if e.dst == nid and (role is None or e.role is role))

    def conc_edges(self) -> list[Edge]:
        return sorted(e for e in self.edges if e.role is Role.CONC)

    def premise_edges(self, rule: int) -> list[Edge]:
        return sorted(e for e in self.edges if e.dst == rule and e.role in (Role.PREMISE, Role.MINOR, Role.MAJOR))

    def rule_edge(self, rule: int, role: Role) -> Edge:
        """The unique ``role`` edge of ``rule`` (premise side or conclusion side)."""
        for e in self.edges:
            if e.rule == rule and e.role is role:
                return e
        raise KeyError((rule, role))

    def rule_conclusion(self, rule: int) -> int:
        return self.rule_edge(rule, Role.CONCLUSION).dst

    def discharged(self, rule: int) -> int | None:
        for e in self.edges:
            if e.rule == rule and e.role is Role.DISC:
                return e.dst
        return None

    def hyp_target(self, h: int) -> int:
        for e in self.edges:
            if e.src == h and e.role is Role.HYP:
                return e.dst
        raise KeyError(h)

    def hyp_label(self, h: int) -> tuple[Formula | None, str | None]:
        try:
            target = self.nodes[self.hyp_target(h)].formula
        except KeyError:
            target = None
        return target, self.nodes[h].tag

    def find_hyp(self, formula: Formula, tag: str | None = None) -> int:
        for h in self.hyp_ids():
            if self.hyp_label(h) == (formula, tag):
                return h
        raise NoSuchHypothesis(f"no hypothesis delimiter over {format_formula(formula)} tagged {tag}")

    def providers(self, formula_node: int) -> set[int]:
        """Rule and hypothesis nodes able to justify ``formula_node``."""
        return {
            e.src if e.role is Role.HYP else e.rule
            for e in self.edges
            if e.dst == formula_node and e.role in (Role.HYP, Role.CONCLUSION)
        }

    def consumers(self) -> dict[int, list[Edge]]:
        """Map provider id -> use edges whose ``via`` mentions it."""
        out: dict[int, list[Edge]] = {}
        for e, vs in self.via.items():
            for v in vs:
                out.setdefault(v, []).append(e)
        return out

    def size(self) -> int:
        """Formula nodes plus rule nodes; delimiters are not counted."""
        return sum(1 for node in self.nodes.values() if node.kind.is_formula or node.kind.is_rule)

    def formula_count(self) -> int:
        return sum(1 for node in self.nodes.values() if node.kind.is_formula)

    def rule_count(self) -> int:
        return sum(1 for node in self.nodes.values() if node.kind.is_rule)


# ---------------------------------------------------------------------------
# constructors


def basis(f: Formula, tag: str | None = None) -> MimpGraph:
    """Formula graph of ``f`` with a hypothesis delimiter and the conclusion delimiter."""
    g = MimpGraph()
    root = g.ensure_formula(f)
    h = g.add_node(Node(NodeKind.HYP, tag=tag))
    c = g.add_node(Node(NodeKind.CONC))
    g.add_edge(Edge(h, Role.HYP, root))
    g.add_edge(Edge(root, Role.CONC, c), via={h})
    return g


def _merge(g1: MimpGraph, g2: MimpGraph) -> tuple[MimpGraph, dict[int, int]]:
    g = g1.copy()
    index = g.formula_index()
    hyps = {g.hyp_label(h): h for h in g.hyp_ids()}
    concs = g.ids(NodeKind.CONC)
    mapping: dict[int, int] = {}
    for n in sorted(g2.nodes):
        node = g2.nodes[n]
        if node.kind.is_formula:
            target = index.get(node.formula)
            if target is None:
                target = g.add_node(node)
                index[node.formula] = target
        elif node.kind is NodeKind.HYP:
            label = g2.hyp_label(n)
            target = hyps.get(label)
            if target is None:
                target = g.add_node(node)
                hyps[label] = target
        elif node.kind is NodeKind.CONC and concs:
            target = concs[0]
        else:
            target = g.add_node(node)
        mapping[n] = target

    def remap(x: int | None) -> int | None:
        return None if x is None else mapping[x]

    for e in g2.edges:
        new = Edge(mapping[e.src], e.role, mapping[e.dst], remap(e.rule))
        vs = g2.via.get(e)
        g.add_edge(new, None if vs is None else {mapping[v] for v in vs})
    return g, mapping


def merge(g1: MimpGraph, g2: MimpGraph) -> MimpGraph:
    """Union of two graphs, identifying nodes that carry the same label.

    Formula nodes are identified by formula and hypothesis delimiters by
    (formula, tag); rule nodes stay disjoint.  Identical edges collapse.  The
    result may have two ``conc`` edges until a rule constructor resolves them.
    """
    return _merge(g1, g2)[0]


def _sole_conclusion(g: MimpGraph) -> Edge:
    edges = g.conc_edges()
    if len(edges) != 1:
        raise MimpGraphError(f"expected exactly one conc edge, found {len(edges)}")
    return edges[0]


def apply_imp_elim(g1: MimpGraph, g2: MimpGraph) -> MimpGraph:
    """Join ``g1`` (concluding a) and ``g2`` (concluding a -> b) by an elimination."""
    minor_conc = _sole_conclusion(g1)
    major_conc = _sole_conclusion(g2)
    minor_f = g1.nodes[minor_conc.src].formula
    major_f = g2.nodes[major_conc.src].formula
    if not (isinstance(major_f, Impl) and major_f.left == minor_f):
        raise NotComposable(
            f"cannot eliminate {format_formula(major_f)} with minor premise {format_formula(minor_f)}"
        )
    g, mapping = _merge(g1, g2)
    minor_via = g1.via[minor_conc]
    major_via = frozenset(mapping[v] for v in g2.via[major_conc])
    for e in g.conc_edges():
        g.remove_edge(e)
    index = g.formula_index()
    alpha, arrow, beta = index[minor_f], index[major_f], index[major_f.right]
    rule = g.add_node(Node(NodeKind.ELIM))
    g.add_edge(Edge(alpha, Role.MINOR, rule, rule), via=minor_via)
    g.add_edge(Edge(arrow, Role.MAJOR, rule, rule), via=major_via)
    g.add_edge(Edge(rule, Role.CONCLUSION, beta, rule))
    g.add_edge(Edge(beta, Role.CONC, g.conc_id()), via={rule})
    return g


def apply_imp_intro(g: MimpGraph, antecedent: Formula, hyp: int | None) -> MimpGraph:
    """Introduce ``antecedent -> conclusion(g)``.

    ``hyp`` is the delimiter being discharged; ``None`` discharges vacuously.
    """
    conc = _sole_conclusion(g)
    if hyp is not None:
        node = g.nodes.get(hyp)
        if node is None or node.kind is not NodeKind.HYP or g.hyp_label(hyp)[0] != antecedent:
            raise NoSuchHypothesis(f"node {hyp} is not a hypothesis delimiter over {format_formula(antecedent)}")
    g = g.copy()
    beta = conc.src
    beta_via = g.via[conc]
    g.remove_edge(conc)
    index = g.formula_index()
    g.ensure_formula(antecedent, index)
    arrow = g.ensure_formula(Impl(antecedent, g.nodes[beta].formula), index)
    rule = g.add_node(Node(NodeKind.INTRO if hyp is not None else NodeKind.INTRO_V))
    g.add_edge(Edge(beta, Role.PREMISE, rule, rule), via=beta_via)
    g.add_edge(Edge(rule, Role.CONCLUSION, arrow, rule))
    if hyp is not None:
        g.add_edge(Edge(rule, Role.DISC, hyp, rule))
    g.add_edge(Edge(arrow, Role.CONC, conc.dst), via={rule})
    return g


# ---------------------------------------------------------------------------
# queries


def conclusion(g: MimpGraph) -> Formula:
    return g.nodes[_sole_conclusion(g).src].formula


def hypotheses(g: MimpGraph) -> frozenset[Formula]:
    """Formulas under hypothesis delimiters that no rule discharges."""
    discharged = {e.dst for e in g.edges if e.role is Role.DISC}
    return frozenset(g.hyp_label(h)[0] for h in g.hyp_ids() if h not in discharged)


@dataclass(frozen=True)
class InferentialOrder:
    level: dict[int, int]

    def __len__(self) -> int:
        return len(self.level)

    def depth(self) -> int:
        return 1 + max(self.level.values()) if self.level else 0

    def precedes(self, a: int, b: int) -> bool:
        return self.level[a] < self.level[b]


def _rule_feeders(g: MimpGraph) -> dict[int, set[int]]:
    feeders: dict[int, set[int]] = {r: set() for r in g.rule_ids()}
    for e, vs in g.via.items():
        if e.role is Role.CONC or e.rule not in feeders:
            continue
        feeders[e.rule] |= {v for v in vs if v in feeders}
    return feeders


def _find_cycle(feeders: dict[int, set[int]]) -> int | None:
    state: dict[int, int] = {}
    for start in sorted(feeders):
        if state.get(start):
            continue
        stack = [(start, iter(sorted(feeders[start])))]
        state[start] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                return nxt
            elif not state.get(nxt):
                state[nxt] = 1
                stack.append((nxt, iter(sorted(feeders[nxt]))))
    return None


def inferential_order(g: MimpGraph) -> InferentialOrder:
    """Level every rule node: 0 when all its premises come from hypotheses,
    otherwise one more than the highest rule feeding it."""
    feeders = _rule_feeders(g)
    bad = _find_cycle(feeders)
    if bad is not None:
        raise CyclicOrder(bad)
    level: dict[int, int] = {}

    def lv(r: int) -> int:
        if r not in level:
            level[r] = 1 + max((lv(f) for f in feeders[r]), default=-1)
        return level[r]

    for r in feeders:
        lv(r)
    return InferentialOrder(level)


def live_nodes(g: MimpGraph) -> set[int]:
    """Rules and hypothesis delimiters reachable backwards from the conclusion."""
    seen: set[int] = set()
    stack = [v for e in g.conc_edges() for v in g.via.get(e, ())]
    uses: dict[int, list[Edge]] = {}
    for e in g.via:
        if e.rule is not None:
            uses.setdefault(e.rule, []).append(e)
    while stack:
        n = stack.pop()
        if n in seen or n not in g.nodes:
            continue
        seen.add(n)
        for e in uses.get(n, ()):
            stack.extend(g.via[e])
    return seen


# ---------------------------------------------------------------------------
# validation

_ROLE_ENDPOINTS: dict[Role, tuple[set[NodeKind], set[NodeKind]]] = {
    Role.LEFT: ({NodeKind.ARROW}, {NodeKind.ATOM, NodeKind.ARROW}),
    Role.RIGHT: ({NodeKind.ARROW}, {NodeKind.ATOM, NodeKind.ARROW}),
    Role.PREMISE: ({NodeKind.ATOM, NodeKind.ARROW}, {NodeKind.INTRO, NodeKind.INTRO_V}),
    Role.MINOR: ({NodeKind.ATOM, NodeKind.ARROW}, {NodeKind.ELIM}),
    Role.MAJOR: ({NodeKind.ATOM, NodeKind.ARROW}, {NodeKind.ELIM}),
    Role.CONCLUSION: ({NodeKind.ELIM, NodeKind.INTRO, NodeKind.INTRO_V}, {NodeKind.ATOM, NodeKind.ARROW}),
    Role.DISC: ({NodeKind.INTRO}, {NodeKind.HYP}),
    Role.HYP: ({NodeKind.HYP}, {NodeKind.ATOM, NodeKind.ARROW}),
    Role.CONC: ({NodeKind.ATOM, NodeKind.ARROW}, {NodeKind.CONC}),
}


def validate(g: MimpGraph, f_minimal: bool = True) -> list[Violation]:
    """Structural check: node types, edge arities, providers, order, liveness.

    Returns the list of violations (empty when ``g`` is a mimp-graph).  With
    ``f_minimal`` set, two formula nodes denoting the same formula are also
    reported.
    """
    out: list[Violation] = []
    nodes = g.nodes

    def bad(code: str, node: int | None, msg: str) -> None:
        out.append(Violation(code, node, msg))

    # edges: endpoint kinds and rule references
    for e in sorted(g.edges):
        if e.src not in nodes or e.dst not in nodes:
            bad("DanglingEdge", e.src if e.src in nodes else e.dst, f"edge {e} has a missing endpoint")
            continue
        srcs, dsts = _ROLE_ENDPOINTS[e.role]
        if nodes[e.src].kind not in srcs or nodes[e.dst].kind not in dsts:
            bad("EdgeType", e.src, f"{e.role.value} edge {e.src}->{e.dst} joins wrong node kinds")
            continue
        if e.role in RULE_ROLES:
            expected = e.dst if e.role in (Role.PREMISE, Role.MINOR, Role.MAJOR) else e.src
            if e.rule != expected:
                bad("EdgeType", e.src, f"{e.role.value} edge {e.src}->{e.dst} names rule {e.rule}")
        elif e.rule is not None:
            bad("EdgeType", e.src, f"{e.role.value} edge {e.src}->{e.dst} must not name a rule")
        if e.role in USE_ROLES and e not in g.via:
            bad("Provenance", e.dst if e.role is not Role.CONC else e.src, f"edge {e} has no providers")
    if out:
        return out

    outs: dict[int, list[Edge]] = {n: [] for n in nodes}
    ins: dict[int, list[Edge]] = {n: [] for n in nodes}
    for e in g.edges:
        outs[e.src].append(e)
        ins[e.dst].append(e)

    def count(edges: list[Edge], role: Role) -> list[Edge]:
        return [e for e in edges if e.role is role]

    concs = g.ids(NodeKind.CONC)
    if len(concs) != 1:
        bad("ConcDelimiter", concs[1] if concs else None, f"expected one conclusion delimiter, found {len(concs)}")

    seen_formula: dict[Formula, int] = {}
    seen_hyp: dict[tuple, int] = {}
    for n in sorted(nodes):
        node = nodes[n]
        kind = node.kind
        if kind is NodeKind.ATOM:
            if not isinstance(node.formula, Atom):
                bad("Label", n, "atom node must carry a propositional letter")
        elif kind is NodeKind.ARROW:
            ls, rs = count(outs[n], Role.LEFT), count(outs[n], Role.RIGHT)
            if not isinstance(node.formula, Impl):
                bad("Label", n, "arrow node must carry an implication")
            elif len(ls) != 1 or len(rs) != 1:
                bad("FormulaArity", n, f"arrow node needs one l and one r edge, has {len(ls)} and {len(rs)}")
            elif (nodes[ls[0].dst].formula, nodes[rs[0].dst].formula) != (node.formula.left, node.formula.right):
                bad("FormulaStructure", n, "l/r children do not match the formula")
        elif kind.is_rule:
            concl = count(outs[n], Role.CONCLUSION)
            disc = count(outs[n], Role.DISC)
            if kind is NodeKind.ELIM:
                minor, major = count(ins[n], Role.MINOR), count(ins[n], Role.MAJOR)
                if len(concl) != 1 or len(minor) != 1 or len(major) != 1 or disc:
                    bad("RuleArity", n, "elimination needs one m, one M and one c edge")
                    continue
                want = Impl(nodes[minor[0].src].formula, nodes[concl[0].dst].formula)
                if nodes[major[0].src].formula != want:
                    bad("RuleShape", n, f"major premise should be {format_formula(want)}")
            else:
                prem = count(ins[n], Role.PREMISE)
                want_disc = 1 if kind is NodeKind.INTRO else 0
                if len(concl) != 1 or len(prem) != 1 or len(disc) != want_disc:
                    bad("RuleArity", n, f"{kind.value} needs one p, one c and {want_disc} disc edge(s)")
                    continue
                arrow = nodes[concl[0].dst].formula
                beta = nodes[prem[0].src].formula
                if not isinstance(arrow, Impl) or arrow.right != beta:
                    bad("RuleShape", n, "introduced formula must have the premise as consequent")
                elif disc:
                    try:
                        target = g.hyp_label(disc[0].dst)[0]
                    except KeyError:
                        target = None
                    if target != arrow.left:
                        bad("RuleShape", n, "discharged hypothesis must be the antecedent")
        elif kind is NodeKind.HYP:
            hs = count(outs[n], Role.HYP)
            if len(hs) != 1 or len(outs[n]) != 1:
                bad("HypArity", n, f"hypothesis delimiter needs exactly one outgoing hyp edge, has {len(hs)}")
                continue
            label = g.hyp_label(n)
            if label in seen_hyp:
                bad("DuplicateDelimiter", n, f"same hypothesis label as node {seen_hyp[label]}")
            seen_hyp.setdefault(label, n)
        elif kind is NodeKind.CONC:
            cs = count(ins[n], Role.CONC)
            if len(cs) != 1:
                bad("ConcArity", n, f"conclusion delimiter needs exactly one ingoing conc edge, has {len(cs)}")
        if kind.is_formula:
            if f_minimal and node.formula in seen_formula:
                bad("DuplicateFormula", n, f"formula {format_formula(node.formula)} also at node {seen_formula[node.formula]}")
            seen_formula.setdefault(node.formula, n)

    # providers of each use
    for e in sorted(g.via):
        if e not in g.edges:
            bad("Provenance", e.src, f"provider record for missing edge {e}")
            continue
        vs = g.via[e]
        owner = e.dst if e.role is not Role.CONC else e.src
        if not vs:
            bad("Provenance", owner, f"use of node {e.src} has no provider")
            continue
        legal = g.providers(e.src)
        for v in sorted(vs - legal):
            bad("Provenance", owner, f"node {v} does not justify formula node {e.src}")

    if out:
        return out

    feeders = _rule_feeders(g)
    cyc = _find_cycle(feeders)
    if cyc is not None:
        bad("CyclicOrder", cyc, f"rule node {cyc} lies on a cycle of the inferential order")
        return out

    live = live_nodes(g)
    discharged = {e.dst for e in g.edges if e.role is Role.DISC}
    for n in g.rule_ids():
        if n not in live:
            bad("DeadRule", n, "rule does not contribute to the conclusion")
    for h in g.hyp_ids():
        if h not in live and h not in discharged:
            bad("DeadHypothesis", h, "open hypothesis is never used")
    anchored = _anchored_formulas(g)
    for n in g.formula_ids():
        if n not in anchored:
            bad("OrphanFormula", n, "formula node is not used by any rule, delimiter or formula")
    return out


def _anchored_formulas(g: MimpGraph) -> set[int]:
    roots = set()
    for e in g.edges:
        if e.role in (Role.PREMISE, Role.MINOR, Role.MAJOR, Role.CONC):
            roots.add(e.src)
        elif e.role in (Role.CONCLUSION, Role.HYP):
            roots.add(e.dst)
    children: dict[int, list[int]] = {}
    for e in g.edges:
        if e.role in (Role.LEFT, Role.RIGHT):
            children.setdefault(e.src, []).append(e.dst)
    seen: set[int] = set()
    stack = list(roots)
    while stack:
        n = stack.pop()
        if n in seen:
            continue
        seen.add(n)
        stack.extend(children.get(n, ()))
    return seen


# ---------------------------------------------------------------------------
# canonical form


def _digest(obj: object) -> str:
    return hashlib.sha256(repr(obj).encode()).hexdigest()[:24]


def canonical_form(g: MimpGraph) -> tuple:
    """Id-independent description of ``g``; equal for isomorphic graphs.

    Formula nodes are named by their formula and delimiters by their label.
    Rule nodes are named by a digest of their kind, formulas and the names of
    their providers, computed along the inferential order.
    """
    names: dict[int, str] = {}
    for n, node in g.nodes.items():
        if node.kind.is_formula:
            names[n] = "F:" + format_formula(node.formula)
        elif node.kind is NodeKind.HYP:
            f, tag = g.hyp_label(n)
            names[n] = f"H:{format_formula(f) if f is not None else '?'}:{tag}"
        elif node.kind is NodeKind.CONC:
            names[n] = "C"
    uses: dict[int, list[Edge]] = {}
    for e in g.edges:
        if e.rule is not None:
            uses.setdefault(e.rule, []).append(e)
    visiting: set[int] = set()

    def name(n: int) -> str:
        if n in names:
            return names[n]
        if n in visiting:
            return "cycle"
        visiting.add(n)
        parts = sorted(
            (e.role.value, names.get(e.src, "?"), names.get(e.dst, "?"), tuple(sorted(name(v) for v in g.via.get(e, ()))))
            for e in uses.get(n, ())
        )
        visiting.discard(n)
        names[n] = "R:" + _digest((g.nodes[n].kind.value, parts))
        return names[n]

    for r in g.rule_ids():
        name(r)
    nodes = sorted(names[n] for n in g.nodes)
    edges = sorted(
        (
            names[e.src],
            e.role.value,
            names[e.dst],
            names[e.rule] if e.rule is not None else "",
            tuple(sorted(names[v] for v in g.via.get(e, ()) if v in names)),
        )
        for e in g.edges
        if e.src in names and e.dst in names
    )
    return (tuple(nodes), tuple(edges))
