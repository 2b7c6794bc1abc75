import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import SAMPLES, corpus, fixture_text, load_proof
from mimpgraph.corpus import CorpusSpec, gen_proof
from mimpgraph.formula import Atom, Impl, parse_formula
from mimpgraph.nd_proof import (
    DischargeMismatch,
    DuplicateTag,
    Hyp,
    ImpElim,
    ImpIntro,
    Judgement,
    MajorNotImplication,
    MinorMismatch,
    ProofSyntaxError,
    alpha_equal,
    check_proof,
    conclusion_of,
    contract,
    format_proof,
    inference_count,
    occurrence_count,
    parse_proof,
    positions,
    subproof,
    tree_normalize,
    tree_redexes,
)

F = parse_formula
p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_fig2_judgement():
    j = check_proof(load_proof("fig2"))
    assert j == Judgement(frozenset({F("p -> q")}), F("(q -> r) -> p -> r"))
    assert str(j) == "{p->q} |- (q->r)->p->r"


def test_fig2_shape():
    fig2 = load_proof("fig2")
    assert inference_count(fig2) == 4
    assert occurrence_count(fig2) == 7
    assert tree_redexes(fig2) == []


@pytest.mark.parametrize(
    "proof, error",
    [
        (ImpElim(Hyp(p, "u"), Hyp(q, "v")), MajorNotImplication),
        (ImpElim(Hyp(F("p -> q"), "u"), Hyp(q, "v")), MinorMismatch),
        (ImpIntro(Hyp(q, "u"), p, "u"), DischargeMismatch),
        (ImpIntro(Hyp(p, "u"), p, "u", vacuous=True), DischargeMismatch),
        (ImpIntro(Hyp(q, "v"), p, "u"), DischargeMismatch),
        (ImpIntro(ImpIntro(Hyp(p, "u"), p, "u"), p, "u", vacuous=True), DuplicateTag),
    ],
)
def test_check_errors(proof, error):
    with pytest.raises(error):
        check_proof(proof)


def test_error_position_points_at_the_bad_inference():
    bad = ImpIntro(ImpElim(Hyp(p, "u"), Hyp(q, "v")), r, "w", vacuous=True)
    with pytest.raises(MajorNotImplication) as info:
        check_proof(bad)
    assert info.value.position == (0,)


def test_hypothesis_alone():
    assert check_proof(Hyp(p, "u")) == Judgement(frozenset({p}), p)


def test_vacuous_discharge():
    proof = ImpIntro(Hyp(q, "v"), p, "u", vacuous=True)
    assert check_proof(proof) == Judgement(frozenset({q}), Impl(p, q))


@pytest.mark.parametrize(
    "text, expected",
    [
        ('(hyp "p" u)', Hyp(p, "u")),
        ('; comment\n(impI (hyp "q" v) "p" u vacuous)', ImpIntro(Hyp(q, "v"), p, "u", True)),
        ('(impE (hyp "p -> q" h) (hyp "p" u))', ImpElim(Hyp(F("p -> q"), "h"), Hyp(p, "u"))),
    ],
)
def test_parse_proof(text, expected):
    assert parse_proof(text) == expected


@pytest.mark.parametrize(
    "text",
    ['(impE (hyp "p" u))', '(hyp "p")', '(hyp "p ->" u)', '(foo "p" u)', '(hyp "p" u) extra', '(impI (hyp "p" u) "p" u maybe)'],
)
def test_parse_proof_errors(text):
    with pytest.raises(ProofSyntaxError):
        parse_proof(text)


def test_formula_error_offset_is_absolute():
    with pytest.raises(ProofSyntaxError) as info:
        parse_proof('(hyp "p ->" u)')
    assert info.value.offset == len('(hyp "p ->')


@pytest.mark.parametrize("name", SAMPLES)
def test_fixture_text_round_trips(name):
    text = fixture_text(f"{name}.proof")
    assert format_proof(parse_proof(text)) + "\n" == text


def test_positions_and_subproof():
    proof = load_proof("fig7_instance")
    for pos, node in positions(proof):
        assert subproof(proof, pos) == node
    with pytest.raises(IndexError):
        subproof(Hyp(p, "u"), (0,))


def test_fig7_tree_has_one_redex():
    assert tree_redexes(load_proof("fig7")) == [(0,)]
    assert tree_redexes(load_proof("fig7_instance")) == [(0,)]


def test_fig7_normal_form_plugs_arguments_into_body():
    # (λu.λv. w v u) x y  reduces to  w y x
    expected = parse_proof(
        '(impE (impE (hyp "q -> p -> r" w) (hyp "q" y)) (hyp "p" x))'
    )
    result = tree_normalize(load_proof("fig7"))
    assert alpha_equal(result, expected)
    assert tree_redexes(result) == []


def test_fig7_instance_normal_form():
    assert alpha_equal(tree_normalize(load_proof("fig7_instance")), Hyp(q, "y"))


def test_normal_tree_is_a_fixpoint():
    fig2 = load_proof("fig2")
    assert alpha_equal(tree_normalize(fig2), fig2)


def test_contract_rejects_non_redex():
    with pytest.raises(ValueError):
        contract(load_proof("fig2"), ())


def test_contract_avoids_capture():
    # (λx. λy. x) y0 with the argument's free tag equal to the inner binder
    body = ImpIntro(Hyp(p, "x"), q, "y", vacuous=True)
    proof = ImpElim(ImpIntro(body, p, "x"), Hyp(p, "y"))
    result = contract(proof, ())
    assert check_proof(result) == Judgement(frozenset({p}), Impl(q, p))


def test_duplicating_substitution_gets_fresh_binders():
    arg = ImpIntro(Hyp(p, "z"), p, "z")
    use_twice = ImpIntro(ImpElim(Hyp(F("p -> p"), "f"), ImpElim(Hyp(F("p -> p"), "f"), Hyp(p, "a"))), F("p -> p"), "f")
    proof = ImpElim(use_twice, arg)
    result = tree_normalize(proof)
    check_proof(result)
    tags = [n.tag for _, n in positions(result) if isinstance(n, ImpIntro)]
    assert len(tags) == len(set(tags))


def test_alpha_equal():
    a = ImpIntro(Hyp(p, "u"), p, "u")
    assert alpha_equal(a, ImpIntro(Hyp(p, "v"), p, "v"))
    assert not alpha_equal(a, ImpIntro(Hyp(p, "v"), p, "w", vacuous=False))


def test_corpus_normalization_preserves_judgement():
    for proof in corpus(1000, seed=99):
        before = check_proof(proof)
        normal = tree_normalize(proof)
        after = check_proof(normal)
        assert tree_redexes(normal) == []
        assert after.conclusion == before.conclusion
        assert after.hypotheses <= before.hypotheses
        assert conclusion_of(normal) == before.conclusion


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.floats(0, 1))
def test_generated_proofs_round_trip(seed, bias):
    import random

    proof = gen_proof(CorpusSpec(max_inferences=10, redex_bias=bias), random.Random(seed))
    assert parse_proof(format_proof(proof)) == proof
    check_proof(proof)
