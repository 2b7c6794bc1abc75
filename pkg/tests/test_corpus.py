import pytest

from mimpgraph.corpus import CorpusSpec, gen_corpus
from mimpgraph.mimp_graph import validate
from mimpgraph.nd_proof import check_proof, format_proof, inference_count, tree_redexes
from mimpgraph.normalization import nmax, normalize
from mimpgraph.translation import to_mimp


def test_seeded_corpus_is_reproducible():
    a = gen_corpus(CorpusSpec(count=3, seed=1))
    b = gen_corpus(CorpusSpec(count=3, seed=1))
    assert [format_proof(x) for x in a] == [format_proof(x) for x in b]
    assert a != gen_corpus(CorpusSpec(count=3, seed=2))


def test_every_proof_checks():
    spec = CorpusSpec(count=1000, seed=4)
    for proof in gen_corpus(spec):
        check_proof(proof)
        assert 1 <= inference_count(proof) <= spec.max_inferences


def test_zero_bias_gives_normal_trees():
    for proof in gen_corpus(CorpusSpec(count=500, seed=9, redex_bias=0.0)):
        assert tree_redexes(proof) == []
        assert nmax(to_mimp(proof)[0]) == 0


def test_bias_produces_redexes_and_sharing():
    proofs = gen_corpus(CorpusSpec(count=300, seed=9, redex_bias=0.6))
    assert sum(bool(tree_redexes(p)) for p in proofs) > 100
    # some translation must have a formula used by several rules
    assert any(
        nmax(to_mimp(p)[0]) > len(tree_redexes(p)) for p in proofs
    )


def test_pipeline_runs_on_every_proof():
    for proof in gen_corpus(CorpusSpec(count=300, seed=21, max_inferences=16)):
        g, _ = to_mimp(proof)
        assert validate(g) == []
        assert validate(normalize(g).final) == []


@pytest.mark.parametrize(
    "kwargs",
    [{"max_inferences": 0}, {"atom_pool": ()}, {"redex_bias": 1.5}],
)
def test_spec_checks(kwargs):
    with pytest.raises(ValueError):
        CorpusSpec(**kwargs)
