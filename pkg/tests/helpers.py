"""Shared fixtures data for the test modules."""

from functools import lru_cache
from pathlib import Path

from mimpgraph.corpus import CorpusSpec, gen_corpus
from mimpgraph.nd_proof import parse_proof
from mimpgraph.translation import to_mimp

FIXTURES = Path(__file__).parent / "fixtures"
SAMPLES = ["fig2", "fig3", "fig7", "fig7_instance"]


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


def load_proof(name: str):
    return parse_proof(fixture_text(f"{name}.proof"))


def load_graph(name: str):
    return to_mimp(load_proof(name))[0]


@lru_cache(maxsize=None)
def corpus(count: int = 200, seed: int = 2024, **kw):
    return tuple(gen_corpus(CorpusSpec(count=count, seed=seed, **kw)))
