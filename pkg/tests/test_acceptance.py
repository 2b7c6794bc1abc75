"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import re

import pytest

from helpers import SAMPLES, corpus, fixture_text, load_graph, load_proof
from mutations import blames, mutation_suite
from mimpgraph.formula import format_formula, parse_formula
from mimpgraph.mimp_graph import Role, conclusion, hypotheses, validate
from mimpgraph.nd_proof import check_proof, format_proof, parse_proof, tree_normalize, tree_redexes
from mimpgraph.normalization import eliminate, explore_all, find_redexes, nmax, normalize
from mimpgraph.serialize import dumps_graph, loads_graph
from mimpgraph.translation import f_minimal_check, to_mimp

CORPUS_SIZE = 1000
CORPUS_SEED = 20240601
STRATEGIES = ("first", "last", "random:7")
F = parse_formula


@pytest.fixture(scope="module")
def proofs():
    return corpus(CORPUS_SIZE, seed=CORPUS_SEED)


@pytest.fixture(scope="module")
def traces(proofs):
    out = []
    for proof in proofs:
        g, _ = to_mimp(proof)
        out.append((proof, g, {s: normalize(g, s) for s in STRATEGIES}))
    return out


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_1_fig2(capsys):
    g, _ = to_mimp(load_proof("fig2"))
    checks = {
        "7 formula nodes": g.formula_count() == 7,
        "4 rule nodes": g.rule_count() == 4,
        "conclusion": conclusion(g) == F("(q -> r) -> p -> r"),
        "hypotheses": hypotheses(g) == {F("p -> q")},
        "validate": validate(g) == [],
        "F-minimal": f_minimal_check(g) == [],
        "Nmax 0": nmax(g) == 0,
    }
    failed = [k for k, v in checks.items() if not v]
    report(capsys, 1, not failed, f"fig2 graph; failed: {failed or 'none'}")


def test_criterion_2_fig3(capsys):
    g, _ = to_mimp(load_proof("fig3"))
    target = F("(((r->s)->r)->r)->s")
    nodes = [n for n in g.formula_ids() if g.nodes[n].formula == target]
    majors = [e for e in g.edges if nodes and e.src == nodes[0] and e.role is Role.MAJOR]
    ok = len(nodes) == 1 and len(majors) == 2 and hypotheses(g) == frozenset() and validate(g) == []
    report(capsys, 2, ok, f"{len(nodes)} node(s) for the shared formula, {len(majors)} major uses, open hypotheses {set(hypotheses(g)) or '{}'}")


@pytest.mark.parametrize("name", ["fig7_instance", "fig7"])
def test_criterion_3_hidden_redex(capsys, name):
    proof = load_proof(name)
    g, _ = to_mimp(proof)
    by_formula = {str(g.nodes[r.arrow].formula): r for r in find_redexes(g)}
    inner = next(k for k in by_formula if k.count("->") == 1)
    outer = next(k for k in by_formula if k.count("->") == 2)
    one_step = nmax(eliminate(g, by_formula[inner]))
    mid = eliminate(g, by_formula[outer])
    two_steps = [nmax(mid), nmax(eliminate(mid, find_redexes(mid)[0]))] if find_redexes(mid) else [nmax(mid)]
    ok = len(tree_redexes(proof)) == 1 and nmax(g) == 2 and one_step == 0 and two_steps == [1, 0]
    report(
        capsys,
        3,
        ok,
        f"{name}: tree redexes {len(tree_redexes(proof))}, Nmax {nmax(g)}, "
        f"via {inner}: 2->{one_step}, via {outer}: 2->{'->'.join(map(str, two_steps))}",
    )


def test_criterion_4_size_bound(capsys, traces):
    violations = 0
    steps = 0
    for _, g, by_strategy in traces:
        for trace in by_strategy.values():
            steps += len(trace.steps)
            violations += sum(s.size_after > s.size_before for s in trace.steps)
            violations += trace.final.size() > g.size()
    report(capsys, 4, violations == 0, f"{len(traces)} proofs x {len(STRATEGIES)} strategies, {steps} steps, {violations} size violations")


def test_criterion_5_measure_decrease(capsys, traces):
    violations = 0
    for _, g, by_strategy in traces:
        start = nmax(g)
        for trace in by_strategy.values():
            violations += sum(s.nmax_after > s.nmax_before - 1 for s in trace.steps)
            violations += len(trace.steps) > start
            violations += nmax(trace.final) != 0
    report(capsys, 5, violations == 0, f"{len(traces)} proofs, {violations} measure violations")


def test_criterion_6_all_orders(capsys, traces):
    explored = divergent = 0
    for _, g, _ in traces:
        if nmax(g) > 3:
            continue
        explored += 1
        result = explore_all(g, max_nmax=3)
        divergent += not result.ok
    report(capsys, 6, divergent == 0 and explored > 0, f"{explored} graphs with Nmax <= 3 explored, {divergent} with divergent leaves")


def test_criterion_7_tree_oracle(capsys, traces):
    mismatches = 0
    for proof, g, by_strategy in traces:
        original = check_proof(proof)
        oracle = check_proof(tree_normalize(proof))
        for trace in by_strategy.values():
            got = (conclusion(trace.final), hypotheses(trace.final))
            mismatches += got != (oracle.conclusion, oracle.hypotheses)
            mismatches += not got[1] <= original.hypotheses
    report(capsys, 7, mismatches == 0, f"{len(traces)} proofs x {len(STRATEGIES)} strategies, {mismatches} disagreements with the tree normalizer")


def test_criterion_8_validator(capsys, proofs):
    graphs = [to_mimp(p)[0] for p in proofs] + [load_graph(n) for n in SAMPLES]
    accepted = sum(validate(g) == [] for g in graphs)
    suite = mutation_suite(graphs[:300] + graphs[-len(SAMPLES):])
    rejected = sum(blames(m, validate(m.graph)) for m in suite)
    ok = accepted == len(graphs) and rejected == len(suite) == 200
    report(capsys, 8, ok, f"accepted {accepted}/{len(graphs)} constructor graphs, rejected {rejected}/{len(suite)} mutants naming the faulty node")


def test_criterion_9_round_trips(capsys):
    failures = []
    for name in SAMPLES:
        proof_text = fixture_text(f"{name}.proof")
        if format_proof(parse_proof(proof_text)) + "\n" != proof_text:
            failures.append(f"{name}.proof")
        for formula_text in re.findall(r'"([^"]*)"', proof_text):
            if format_formula(parse_formula(formula_text)) != formula_text:
                failures.append(formula_text)
        graph_text = fixture_text(f"{name}.json")
        if dumps_graph(loads_graph(graph_text)) != graph_text:
            failures.append(f"{name}.json")
    report(capsys, 9, not failures, f"{len(SAMPLES)} fixtures, failures: {failures or 'none'}")
