"""Seeded single-fault mutations of valid mimp-graphs.

Each mutation records the node a validator must blame and the violation
codes that count as naming the fault.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from mimpgraph.formula import Impl
from mimpgraph.mimp_graph import Edge, MimpGraph, Node, Role, inferential_order


@dataclass
class Mutation:
    kind: str
    graph: MimpGraph
    node: int
    codes: frozenset[str]


def drop_conc(g: MimpGraph, rng: random.Random) -> Mutation | None:
    g = g.copy()
    (edge,) = g.conc_edges()
    g.remove_edge(edge)
    return Mutation("deleted conc edge", g, edge.dst, frozenset({"ConcArity"}))


def duplicate_formula(g: MimpGraph, rng: random.Random) -> Mutation | None:
    g = g.copy()
    target = rng.choice(g.formula_ids())
    node = g.nodes[target]
    dup = g.add_node(Node(node.kind, node.formula))
    if isinstance(node.formula, Impl):
        for role in (Role.LEFT, Role.RIGHT):
            g.add_edge(Edge(dup, role, g.out_edges(target, role)[0].dst))
    return Mutation("duplicated formula label", g, dup, frozenset({"DuplicateFormula"}))


def _descendants(g: MimpGraph) -> dict[int, set[int]]:
    feeds: dict[int, set[int]] = {r: set() for r in g.rule_ids()}
    for e, vs in g.via.items():
        if e.rule is None:
            continue
        for v in vs:
            if v in feeds:
                feeds[v].add(e.rule)
    closure: dict[int, set[int]] = {}
    level = inferential_order(g).level
    for r in sorted(level, key=level.get, reverse=True):
        acc = set()
        for d in feeds[r]:
            acc |= {d} | closure[d]
        closure[r] = acc
    return closure


def cyclic_order(g: MimpGraph, rng: random.Random) -> Mutation | None:
    """Let a rule's premise be justified by a rule it feeds (or by itself)."""
    below = _descendants(g)
    options = []
    for e in sorted(g.via):
        if e.rule is None or e.role is Role.CONC:
            continue
        for d in sorted(below[e.rule] | {e.rule}):
            if g.rule_conclusion(d) == e.src:
                options.append((e, d))
    if not options:
        return None
    e, d = rng.choice(options)
    g = g.copy()
    g.via[e] = g.via[e] | {d}
    return Mutation("cyclic rule order", g, -1, frozenset({"CyclicOrder"}))


def wrong_arity(g: MimpGraph, rng: random.Random) -> Mutation | None:
    rules = g.rule_ids()
    if not rules:
        return None
    rule = rng.choice(rules)
    g = g.copy()
    incident = sorted(e for e in g.edges if e.rule == rule and e.role is not Role.DISC)
    if rng.random() < 0.5:
        g.remove_edge(rng.choice(incident))
    else:
        others = [f for f in g.formula_ids() if f != g.rule_conclusion(rule)]
        if not others:
            return None
        g.add_edge(Edge(rule, Role.CONCLUSION, rng.choice(others), rule))
    return Mutation("wrong rule arity", g, rule, frozenset({"RuleArity"}))


MUTATORS = [drop_conc, duplicate_formula, cyclic_order, wrong_arity]


def cycle_members(m: Mutation) -> set[int]:
    """Rule nodes that lie on some cycle of the inferential order."""
    from mimpgraph.mimp_graph import _rule_feeders

    feeders = _rule_feeders(m.graph)

    def above(n: int) -> set[int]:
        seen, stack = set(), [n]
        while stack:
            for f in feeders[stack.pop()]:
                if f not in seen:
                    seen.add(f)
                    stack.append(f)
        return seen

    return {r for r in feeders if r in above(r)}


def mutation_suite(graphs: list[MimpGraph], per_kind: int = 50, seed: int = 0) -> list[Mutation]:
    rng = random.Random(seed)
    suite: list[Mutation] = []
    for mutate in MUTATORS:
        made = 0
        attempts = 0
        while made < per_kind:
            attempts += 1
            if attempts > 100 * per_kind:
                raise RuntimeError(f"could not build {per_kind} cases with {mutate.__name__}")
            m = mutate(rng.choice(graphs), rng)
            if m is not None:
                suite.append(m)
                made += 1
    return suite


def blames(m: Mutation, violations) -> bool:
    """True when some violation has an accepted code and names the fault."""
    if m.kind == "cyclic rule order":
        members = cycle_members(m)
        return any(v.code in m.codes and v.node in members for v in violations)
    return any(v.code in m.codes and v.node == m.node for v in violations)
