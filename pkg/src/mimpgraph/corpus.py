"""Seeded random proofs for property runs.

Proofs are grown goal-first: pick a conclusion, then repeatedly choose a rule
that yields it.  Open assumptions draw on a small pool of formulas, so the
same hypothesis tends to be used several times, and an adjustable share of
eliminations are given an introduction as major premise (a tree redex),
sometimes two deep in the curried shape that hides a second redex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .formula import Atom, Formula, Impl
from .nd_proof import Hyp, ImpElim, ImpIntro, NDProof, check_proof, inference_count

__all__ = ["CorpusSpec", "gen_corpus", "gen_proof"]


@dataclass(frozen=True)
class CorpusSpec:
    count: int = 100
    max_inferences: int = 12
    atom_pool: tuple[str, ...] = ("p", "q", "r", "s")
    seed: int = 0
    # probability that an elimination gets an introduction as major premise
    redex_bias: float = 0.3
    # probability of reusing an already open assumption instead of a new one
    share_bias: float = 0.5
    max_formula_depth: int = 3

    def __post_init__(self) -> None:
        if self.max_inferences < 1:
            raise ValueError("max_inferences must be at least 1")
        if not self.atom_pool:
            raise ValueError("atom_pool must not be empty")
        if not 0.0 <= self.redex_bias <= 1.0:
            raise ValueError("redex_bias must lie in [0, 1]")


@dataclass
class _Gen:
    spec: CorpusSpec
    rng: random.Random
    budget: int
    counter: int = 0
    open_pool: list[Formula] = field(default_factory=list)

    def fresh(self) -> str:
        self.counter += 1
        return f"t{self.counter}"

    def formula(self, depth: int) -> Formula:
        if depth <= 0 or self.rng.random() < 0.4:
            return Atom(self.rng.choice(self.spec.atom_pool))
        return Impl(self.formula(depth - 1), self.formula(depth - 1))

    def antecedent(self, ctx: list[tuple[Formula, str]]) -> Formula:
        known = [f for f, _ in ctx] + self.open_pool
        if known and self.rng.random() < 0.5:
            return self.rng.choice(known)
        return self.formula(self.spec.max_formula_depth - 1)

    def leaf(self, goal: Formula, ctx: list[tuple[Formula, str]]) -> NDProof:
        bound = [tag for f, tag in ctx if f == goal]
        if bound and self.rng.random() < 0.8:
            return Hyp(goal, self.rng.choice(bound))
        if goal not in self.open_pool:
            self.open_pool.append(goal)
        # free assumptions share one tag per formula
        return Hyp(goal, f"a{self.open_pool.index(goal)}")

    def intro(self, goal: Impl, ctx: list[tuple[Formula, str]]) -> NDProof:
        tag = self.fresh()
        vacuous = self.rng.random() < 0.15
        inner = ctx if vacuous else ctx + [(goal.left, tag)]
        body = self.proof(goal.right, inner)
        if not vacuous and not _uses(body, tag):
            vacuous = True
        return ImpIntro(body, goal.left, tag, vacuous)

    def proof(self, goal: Formula, ctx: list[tuple[Formula, str]], allow_intro: bool = True) -> NDProof:
        if self.budget <= 0:
            return self.leaf(goal, ctx)
        roll = self.rng.random()
        if roll < 0.2 and any(f == goal for f, _ in ctx):
            return self.leaf(goal, ctx)
        if roll < 0.25 or (self.rng.random() < self.spec.share_bias and goal in self.open_pool):
            return self.leaf(goal, ctx)
        if isinstance(goal, Impl) and allow_intro and self.rng.random() < 0.45:
            self.budget -= 1
            return self.intro(goal, ctx)
        self.budget -= 1
        a = self.antecedent(ctx)
        if self.rng.random() < self.spec.redex_bias and self.budget >= 1:
            if self.budget >= 3 and self.rng.random() < 0.4:
                return self.curried(a, goal, ctx)
            self.budget -= 1
            major: NDProof = self.intro(Impl(a, goal), ctx)
        else:
            major = self.proof(Impl(a, goal), ctx, allow_intro=False)
        return ImpElim(major, self.proof(a, ctx))

    def curried(self, a: Formula, goal: Formula, ctx: list[tuple[Formula, str]]) -> NDProof:
        # (impE (impE (impI (impI body b) a) minor_a) minor_b)
        b = self.antecedent(ctx)
        self.budget -= 3
        t_a, t_b = self.fresh(), self.fresh()
        body = self.proof(goal, ctx + [(a, t_a), (b, t_b)])
        inner = ImpIntro(body, b, t_b, not _uses(body, t_b))
        outer = ImpIntro(inner, a, t_a, not _uses(inner, t_a))
        return ImpElim(ImpElim(outer, self.proof(a, ctx)), self.proof(b, ctx))


def _uses(p: NDProof, tag: str) -> bool:
    if isinstance(p, Hyp):
        return p.tag == tag
    if isinstance(p, ImpIntro):
        return p.tag != tag and _uses(p.body, tag)
    return _uses(p.major, tag) or _uses(p.minor, tag)


def gen_proof(spec: CorpusSpec, rng: random.Random) -> NDProof:
    while True:
        gen = _Gen(spec, rng, rng.randint(1, spec.max_inferences))
        p = gen.proof(gen.formula(spec.max_formula_depth), [])
        if 1 <= inference_count(p) <= spec.max_inferences:
            check_proof(p)
            return p


def gen_corpus(spec: CorpusSpec) -> list[NDProof]:
    """``spec.count`` well-formed proofs, identical for identical specs."""
    rng = random.Random(spec.seed)
    return [gen_proof(spec, rng) for _ in range(spec.count)]
