"""Maximal formulas in mimp-graphs and their elimination.

A maximal formula is an arrow node that is concluded by an introduction and
used as the major premise of an elimination.  Because formulas are shared,
the pattern can also join an introduction to an elimination that a tree
deduction would only bring together after other reductions (a hidden redex);
those pairs count too.  Pairs that no sequence of reductions ever brings
together are ignored, see ``find_redexes``.

Eliminating a pair removes the elimination node, routes the uses of its
conclusion to the derivation above the introduction, and routes the uses of
the discharged hypothesis to the minor premise's derivation.  No node is ever
added, so the number of maximal formulas drops by at least one per step and
the graph never grows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .formula import Formula, format_formula
from .mimp_graph import (
    CyclicOrder,
    Edge,
    MimpGraph,
    MimpGraphError,
    NodeKind,
    Role,
    _anchored_formulas,
    canonical_form,
    conclusion,
    hypotheses,
    inferential_order,
    live_nodes,
    validate,
)

__all__ = [
    "Redex",
    "Branch",
    "Step",
    "NormalizationTrace",
    "Exploration",
    "NormalizationError",
    "NotARedex",
    "PreconditionViolated",
    "NormalizationStuck",
    "TraceInvariantError",
    "find_redexes",
    "nmax",
    "branches",
    "eliminate",
    "reorder",
    "is_normal",
    "normalize",
    "explore_all",
    "parse_strategy",
]


class NormalizationError(MimpGraphError):
    code = "NormalizationError"


class NotARedex(NormalizationError):
    code = "NotARedex"


class PreconditionViolated(NormalizationError):
    code = "PreconditionViolated"


class NormalizationStuck(NormalizationError):
    code = "NormalizationStuck"


class TraceInvariantError(NormalizationError):
    code = "TraceInvariantError"


@dataclass(frozen=True)
class Redex:
    rule_i: int
    rule_e: int
    arrow: int
    alpha: int
    beta: int
    hyp: int | None
    edges: tuple[Edge, ...]

    @property
    def key(self) -> tuple[int, int]:
        return (self.rule_i, self.rule_e)

    def describe(self, g: MimpGraph) -> dict:
        return {
            "intro": self.rule_i,
            "elim": self.rule_e,
            "arrow": self.arrow,
            "formula": format_formula(g.nodes[self.arrow].formula),
        }


def _pattern_pairs(g: MimpGraph) -> dict[tuple[int, int], int]:
    """(introduction, elimination) -> arrow node, for every arrow node that
    one rule introduces and another uses as major premise."""
    intros: dict[int, list[int]] = {}
    elims: dict[int, list[int]] = {}
    for e in g.edges:
        if e.role is Role.CONCLUSION and g.nodes[e.src].kind in (NodeKind.INTRO, NodeKind.INTRO_V):
            intros.setdefault(e.dst, []).append(e.src)
        elif e.role is Role.MAJOR:
            elims.setdefault(e.src, []).append(e.dst)
    return {(i, e): arrow for arrow in set(intros) & set(elims) for i in intros[arrow] for e in elims[arrow]}


def _head_spine(g: MimpGraph, e: int, pairs: set[tuple[int, int]], dischargers: dict[int, list[int]]) -> set[int]:
    """Introductions that reductions can bring to the head of ``e``'s major premise.

    Walks up from the major premise keeping count of pending arguments:
    an elimination adds one, an introduction with arguments pending consumes
    one and continues into its body, and an introduction with none pending is
    the partner of ``e``.  At a hypothesis discharged by an introduction
    already paired with some elimination, the walk continues into that
    elimination's minor premise, the argument that will replace it.
    """
    found: set[int] = set()
    seen: set[tuple[int, int]] = set()
    limit = len(g.nodes)
    stack = [(x, 0) for x in g.via[g.rule_edge(e, Role.MAJOR)]]
    while stack:
        x, depth = stack.pop()
        if (x, depth) in seen or depth > limit:
            continue
        seen.add((x, depth))
        kind = g.nodes[x].kind
        if kind is NodeKind.ELIM:
            stack.extend((y, depth + 1) for y in g.via[g.rule_edge(x, Role.MAJOR)])
        elif kind is NodeKind.HYP:
            for i in dischargers.get(x, ()):
                for i2, outer in pairs:
                    if i2 == i:
                        stack.extend((y, depth) for y in g.via[g.rule_edge(outer, Role.MINOR)])
        elif depth == 0:
            found.add(x)
        else:
            stack.extend((y, depth - 1) for y in g.via[g.rule_edge(x, Role.PREMISE)])
    return found


def find_redexes(g: MimpGraph) -> list[Redex]:
    """All maximal-formula pairs, ordered by the level of the elimination.

    A pair counts when the introduction can reach the head of the
    elimination's major premise, directly or after other reductions (the
    hidden case).  An introduction of the same formula in an unrelated part
    of the deduction does not count, nor does one fed by the elimination
    itself (as in ``λx. f x``): no order of reductions makes those a redex.
    """
    level = inferential_order(g).level
    candidates = _pattern_pairs(g)
    dischargers: dict[int, list[int]] = {}
    for edge in g.edges:
        if edge.role is Role.DISC:
            dischargers.setdefault(edge.dst, []).append(edge.src)
    pairs: set[tuple[int, int]] = set()
    while True:
        spines: dict[int, set[int]] = {}
        grown = set()
        for i, e in candidates:
            if (i, e) in pairs:
                continue
            if e not in spines:
                spines[e] = _head_spine(g, e, pairs, dischargers)
            if i in spines[e]:
                grown.add((i, e))
        if not grown:
            break
        pairs |= grown
    found = []
    for i, e in pairs:
        arrow = candidates[(i, e)]
        left = g.out_edges(arrow, Role.LEFT)[0]
        right = g.out_edges(arrow, Role.RIGHT)[0]
        alpha, beta = left.dst, right.dst
        h = g.discharged(i)
        edges = [left, right, Edge(beta, Role.PREMISE, i, i), Edge(i, Role.CONCLUSION, arrow, i)]
        if h is not None:
            edges += [Edge(h, Role.HYP, alpha), Edge(i, Role.DISC, h, i)]
        edges += [Edge(alpha, Role.MINOR, e, e), Edge(arrow, Role.MAJOR, e, e), Edge(e, Role.CONCLUSION, beta, e)]
        found.append(Redex(i, e, arrow, alpha, beta, h, tuple(edges)))
    found.sort(key=lambda r: (level[r.rule_e], level[r.rule_i], r.rule_e, r.rule_i))
    return found


def nmax(g: MimpGraph) -> int:
    return len(find_redexes(g))


def is_normal(g: MimpGraph) -> bool:
    return not find_redexes(g)


# ---------------------------------------------------------------------------
# branches


@dataclass(frozen=True)
class Branch:
    """Alternating formula/rule node ids from a hypothesis onwards.

    ``roles[k]`` labels the edge between ``nodes[k]`` and ``nodes[k + 1]``.
    """

    nodes: tuple[int, ...]
    roles: tuple[Role, ...]
    stops_at_minor: bool

    def rules(self) -> tuple[int, ...]:
        return self.nodes[1::2]


def branches(g: MimpGraph) -> list[Branch]:
    """Paths from hypotheses that follow each formula's actual uses.

    A branch ends at the conclusion node, or at the first minor premise of an
    elimination whose major premise is derived by a rule.
    """
    (conc,) = g.conc_edges()
    rule_ids = set(g.rule_ids())
    uses: dict[int, list[Edge]] = {}
    for e in g.via:
        if e.role is not Role.CONC:
            uses.setdefault(e.src, []).append(e)
    found: set[Branch] = set()

    def walk(f: int, provider: int, nodes: list[int], roles: list[Role]) -> None:
        if f == conc.src and provider in g.via[conc]:
            found.add(Branch(tuple(nodes), tuple(roles), False))
            return
        for e in sorted(uses.get(f, ())):
            if provider not in g.via[e]:
                continue
            rule = e.rule
            if e.role is Role.MINOR and g.via[g.rule_edge(rule, Role.MAJOR)] & rule_ids:
                found.add(Branch(tuple(nodes), tuple(roles), True))
                continue
            concl = g.rule_conclusion(rule)
            walk(concl, rule, nodes + [rule, concl], roles + [e.role, Role.CONCLUSION])

    for h in g.hyp_ids():
        target = g.hyp_target(h)
        walk(target, h, [target], [])
    return sorted(found, key=lambda b: (b.nodes, b.roles))


# ---------------------------------------------------------------------------
# elimination


def reorder(g: MimpGraph) -> MimpGraph:
    """Recompute rule levels after deletions and check the result is a mimp-graph."""
    order = inferential_order(g)
    problems = validate(g, f_minimal=False)
    if problems:
        raise PreconditionViolated(f"reordered graph is not a mimp-graph: {problems[0].message}")
    g.order = order
    return g


def _strip_missing_providers(g: MimpGraph) -> None:
    for e, vs in list(g.via.items()):
        kept = frozenset(v for v in vs if v in g.nodes)
        if kept != vs:
            g.via[e] = kept


def _prune(g: MimpGraph) -> None:
    """Drop rules that no longer reach the conclusion, unused delimiters and
    formula nodes nothing refers to."""
    while True:
        _strip_missing_providers(g)
        live = live_nodes(g)
        dead = [r for r in g.rule_ids() if r not in live]
        if not dead:
            break
        for r in dead:
            g.remove_node(r)
    discharged = {e.dst for e in g.edges if e.role is Role.DISC}
    for h in g.hyp_ids():
        if h not in live and h not in discharged:
            g.remove_node(h)
    anchored = _anchored_formulas(g)
    for n in g.formula_ids():
        if n not in anchored:
            g.remove_node(n)


def _replace_provider(g: MimpGraph, old: int, new: frozenset[int], keep_old: bool = False) -> None:
    for e, vs in list(g.via.items()):
        if old in vs:
            g.via[e] = (vs if keep_old else vs - {old}) | new


def _sole_discharger(g: MimpGraph, h: int | None, rule: int) -> bool:
    return h is not None and all(e.rule == rule for e in g.edges if e.role is Role.DISC and e.dst == h)


def _beta(g: MimpGraph, i: int, e: int) -> MimpGraph:
    g = g.copy()
    h = g.discharged(i)
    from_body = g.via[g.rule_edge(i, Role.PREMISE)]
    from_minor = g.via[g.rule_edge(e, Role.MINOR)]
    exclusive = _sole_discharger(g, h, i)
    g.remove_node(e)
    _replace_provider(g, e, from_body)
    still_used = any(i in vs for vs in g.via.values())
    if not still_used:
        g.remove_node(i)
        if exclusive:
            _replace_provider(g, h, from_minor)
            g.remove_node(h)
    elif exclusive:
        # the introduction survives for its other uses, so the hypothesis
        # keeps it as provider alongside the minor premise's derivation
        _replace_provider(g, h, from_minor, keep_old=True)
    _prune(g)
    return g


def _eta(g: MimpGraph, i: int, e: int) -> MimpGraph:
    g = g.copy()
    major = g.rule_edge(e, Role.MAJOR)
    others = g.via[major] - {i}
    g.via[major] = others
    _replace_provider(g, i, others)
    g.remove_node(i)
    if not others:
        g.remove_node(e)
    _prune(g)
    return g


def _acceptable(before: tuple[Formula, frozenset[Formula]], g: MimpGraph, f_minimal: bool) -> bool:
    if validate(g, f_minimal=f_minimal):
        return False
    try:
        reorder(g)
    except (CyclicOrder, PreconditionViolated):
        return False
    return conclusion(g) == before[0] and hypotheses(g) <= before[1]


def _ancestors(g: MimpGraph) -> dict[int, set[int]]:
    order = inferential_order(g)
    feeders: dict[int, set[int]] = {r: set() for r in order.level}
    for edge, vs in g.via.items():
        if edge.rule in feeders:
            feeders[edge.rule] |= {v for v in vs if v in feeders}
    anc: dict[int, set[int]] = {}
    for r in sorted(order.level, key=order.level.__getitem__):
        acc: set[int] = set()
        for f in feeders[r]:
            acc |= {f} | anc[f]
        anc[r] = acc
    return anc


def _lookup(g: MimpGraph, key: tuple[int, int]) -> Redex | None:
    for r in find_redexes(g):
        if r.key == key:
            return r
    return None


def _inner(g: MimpGraph, r: Redex) -> list[Redex]:
    anc = _ancestors(g)
    return [
        x
        for x in find_redexes(g)
        if x.key != r.key and r.rule_i in anc[x.rule_i] and x.rule_e in anc[r.rule_e]
    ]


def _eliminate(g: MimpGraph, key: tuple[int, int], f_minimal: bool) -> MimpGraph:
    while True:
        r = _lookup(g, key)
        if r is None:
            return g
        inner = _inner(g, r)
        if not inner:
            break
        g = _eliminate(g, inner[0].key, f_minimal)
    before = (conclusion(g), hypotheses(g))
    for contraction in (_beta, _eta):
        candidate = contraction(g, *key)
        if _acceptable(before, candidate, f_minimal):
            return candidate
    raise PreconditionViolated(
        f"eliminating the maximal formula at node {r.arrow} would not leave a mimp-graph "
        "with the same conclusion and no new hypotheses"
    )


def eliminate(g: MimpGraph, r: Redex) -> MimpGraph:
    """Return a copy of ``g`` with the maximal formula ``r`` eliminated.

    Maximal formulas lying between the two rule nodes of ``r`` are eliminated
    first.  The input graph is not modified.
    """
    if _lookup(g, r.key) is None:
        raise NotARedex(f"rules {r.rule_i} and {r.rule_e} do not form a maximal formula")
    f_minimal = len({g.nodes[n].formula for n in g.formula_ids()}) == g.formula_count()
    return _eliminate(g, r.key, f_minimal)


# ---------------------------------------------------------------------------
# driver


@dataclass(frozen=True)
class Step:
    redex: Redex
    formula: Formula
    nmax_before: int
    nmax_after: int
    size_before: int
    size_after: int

    def to_json(self, index: int) -> dict:
        return {
            "step": index,
            "intro": self.redex.rule_i,
            "elim": self.redex.rule_e,
            "formula": format_formula(self.formula),
            "nmax_before": self.nmax_before,
            "nmax_after": self.nmax_after,
            "size_before": self.size_before,
            "size_after": self.size_after,
        }


@dataclass(frozen=True)
class Exploration:
    """Outcome of trying every elimination order."""

    initial_nmax: int
    leaves: frozenset[tuple[Formula, frozenset[Formula]]]
    states: int
    longest: int
    stuck: int
    rejected: int

    @property
    def ok(self) -> bool:
        return self.stuck == 0 and len(self.leaves) == 1 and self.longest <= self.initial_nmax


@dataclass
class NormalizationTrace:
    steps: list[Step]
    strategy: str
    final: MimpGraph
    exploration: Exploration | None = field(default=None)


def parse_strategy(strategy: str) -> tuple[str, int | None]:
    name, _, arg = strategy.partition(":")
    if name not in ("first", "last", "random", "exhaustive"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if name == "random":
        return name, int(arg) if arg else 0
    if arg:
        raise ValueError(f"strategy {name} takes no argument")
    return name, None


def _chooser(name: str, seed: int | None) -> Callable[[list[Redex]], list[Redex]]:
    if name == "last":
        return lambda rs: rs[::-1]
    if name == "random":
        rng = random.Random(seed)

        def pick(rs: list[Redex]) -> list[Redex]:
            rs = list(rs)
            rng.shuffle(rs)
            return rs

        return pick
    return lambda rs: rs


def _step(g: MimpGraph, candidates: list[Redex]) -> tuple[MimpGraph, Redex]:
    for r in candidates:
        try:
            return eliminate(g, r), r
        except PreconditionViolated:
            continue
    raise NormalizationStuck(f"none of the {len(candidates)} maximal formulas can be eliminated")


def normalize(g: MimpGraph, strategy: str = "first", max_nmax: int = 3) -> NormalizationTrace:
    """Eliminate maximal formulas until none is left.

    ``strategy`` is ``first`` or ``last`` (by inferential order of the
    elimination), ``random:<seed>``, or ``exhaustive``, which additionally
    explores every order (graphs with at most ``max_nmax`` maximal formulas)
    and fails unless they all reach a normal graph with the same judgement.
    """
    name, seed = parse_strategy(strategy)
    exploration = None
    if name == "exhaustive":
        exploration = explore_all(g, max_nmax)
        if not exploration.ok:
            raise NormalizationError(
                f"orders disagree: {len(exploration.leaves)} distinct results, {exploration.stuck} stuck states"
            )
    choose = _chooser(name, seed)
    f_minimal = len({g.nodes[n].formula for n in g.formula_ids()}) == g.formula_count()
    steps: list[Step] = []
    redexes = find_redexes(g)
    while redexes:
        g2, r = _step(g, choose(redexes))
        after = find_redexes(g2)
        step = Step(r, g.nodes[r.arrow].formula, len(redexes), len(after), g.size(), g2.size())
        if step.nmax_after >= step.nmax_before:
            raise TraceInvariantError(f"measure did not decrease: {step.nmax_before} -> {step.nmax_after}")
        if f_minimal and step.size_after > step.size_before:
            raise TraceInvariantError(f"graph grew: {step.size_before} -> {step.size_after}")
        if not {g2.nodes[x.arrow].formula for x in after} <= {g.nodes[x.arrow].formula for x in redexes}:
            raise TraceInvariantError("elimination created a new maximal formula")
        steps.append(step)
        g, redexes = g2, after
    return NormalizationTrace(steps, strategy, g, exploration)


def explore_all(g: MimpGraph, max_nmax: int = 3) -> Exploration:
    """Follow every elimination order from ``g`` (states are shared by canonical form)."""
    initial = nmax(g)
    if initial > max_nmax:
        raise ValueError(f"graph has {initial} maximal formulas, more than the bound {max_nmax}")
    leaves: set[tuple[Formula, frozenset[Formula]]] = set()
    longest_from: dict[tuple, int] = {}
    counters = {"stuck": 0, "rejected": 0}

    def visit(state: MimpGraph) -> int:
        key = canonical_form(state)
        if key in longest_from:
            return longest_from[key]
        redexes = find_redexes(state)
        if not redexes:
            leaves.add((conclusion(state), hypotheses(state)))
            longest_from[key] = 0
            return 0
        best = -1
        for r in redexes:
            try:
                nxt = eliminate(state, r)
            except PreconditionViolated:
                counters["rejected"] += 1
                continue
            if nmax(nxt) >= len(redexes):
                raise TraceInvariantError("measure did not decrease")
            best = max(best, 1 + visit(nxt))
        if best < 0:
            counters["stuck"] += 1
            best = 0
        longest_from[key] = best
        return best

    longest = visit(g)
    return Exploration(initial, frozenset(leaves), len(longest_from), longest, counters["stuck"], counters["rejected"])
