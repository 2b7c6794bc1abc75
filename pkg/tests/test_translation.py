import pytest

from helpers import SAMPLES, corpus, load_proof
from mimpgraph.formula import Atom, parse_formula
from mimpgraph.mimp_graph import MimpGraph, Node, NodeKind, Role, conclusion, hypotheses, validate
from mimpgraph.nd_proof import Hyp, ImpElim, ImpIntro, MinorMismatch, check_proof, occurrence_count, positions
from mimpgraph.translation import f_minimal_check, graph_size, to_mimp, tree_size, uses_by_role

F = parse_formula


def test_fig2_translation():
    g, cert = to_mimp(load_proof("fig2"))
    assert g.formula_count() == 7
    assert g.rule_count() == 4
    assert hypotheses(g) == {F("p -> q")}
    assert f_minimal_check(g) == []
    assert graph_size(g) == 11
    assert occurrence_count(load_proof("fig2")) == 7
    assert g.formula_count() <= occurrence_count(load_proof("fig2"))


def test_hypothesis_translation():
    g, cert = to_mimp(Hyp(Atom("p"), "u"))
    assert len(g.nodes) == 3
    assert graph_size(g) == 1
    assert (cert.size_tree, cert.size_graph) == (1, 1)


def test_fig3_translation():
    proof = load_proof("fig3")
    g, _ = to_mimp(proof)
    assert uses_by_role(g, F("(((r->s)->r)->r)->s"), Role.MAJOR) == 2
    assert g.formula_count() == 7 and g.rule_count() == 7
    assert g.formula_count() < occurrence_count(proof)


def test_certificate_maps_every_inference():
    proof = load_proof("fig3")
    g, cert = to_mimp(proof)
    inferences = [pos for pos, node in positions(proof) if not isinstance(node, Hyp)]
    assert sorted(cert.node_map) == sorted(inferences)
    assert sorted(cert.node_map.values()) == g.rule_ids()
    for pos, rule in cert.node_map.items():
        node = dict(positions(proof))[pos]
        want = NodeKind.ELIM if isinstance(node, ImpElim) else (
            NodeKind.INTRO_V if node.vacuous else NodeKind.INTRO
        )
        assert g.nodes[rule].kind is want
    data = cert.to_json()
    assert data["node_map"]["root"] == cert.node_map[()]
    assert data["size_tree"] == tree_size(proof)


def test_translation_checks_the_proof():
    with pytest.raises(MinorMismatch):
        to_mimp(ImpElim(Hyp(F("p -> q"), "h"), Hyp(Atom("q"), "u")))


def test_same_formula_discharged_and_open():
    # p is discharged in one branch and open in the other
    proof = ImpElim(ImpIntro(Hyp(Atom("p"), "u"), Atom("p"), "u"), Hyp(Atom("p"), "v"))
    g, _ = to_mimp(proof)
    assert validate(g) == []
    assert hypotheses(g) == check_proof(proof).hypotheses == {Atom("p")}


def test_duplicate_formulas_are_reported():
    g = MimpGraph()
    g.nodes[0] = Node(NodeKind.ATOM, Atom("p"))
    g.nodes[1] = Node(NodeKind.ATOM, Atom("p"))
    assert f_minimal_check(g) == [Atom("p")]


@pytest.mark.parametrize("name", SAMPLES)
def test_fixture_judgements_survive(name):
    proof = load_proof(name)
    g, _ = to_mimp(proof)
    j = check_proof(proof)
    assert (conclusion(g), hypotheses(g)) == (j.conclusion, j.hypotheses)


def test_corpus_translations():
    for proof in corpus(1000, seed=3):
        g, cert = to_mimp(proof)
        j = check_proof(proof)
        assert f_minimal_check(g) == []
        assert validate(g) == []
        assert (conclusion(g), hypotheses(g)) == (j.conclusion, j.hypotheses)
        assert g.formula_count() <= cert.size_tree
        assert g.rule_count() == len(cert.node_map)
