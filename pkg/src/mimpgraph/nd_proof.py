"""Tree-shaped natural deductions for minimal implicational logic.

Proofs are immutable trees built from three constructors.  Hypotheses carry a
discharge tag; an ``ImpIntro`` binds every hypothesis with its tag inside its
body.  Hypotheses whose tag is not bound by an enclosing introduction are open.

The module also contains the standard tree normalizer, used in the test suite
as an independent oracle for graph normalization.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, replace
from typing import Iterator, Union

from .formula import Formula, FormulaSyntaxError, Impl, format_formula, formula_size, parse_formula

__all__ = [
    "Hyp",
    "ImpIntro",
    "ImpElim",
    "NDProof",
    "Judgement",
    "ProofError",
    "MajorNotImplication",
    "MinorMismatch",
    "DischargeMismatch",
    "DuplicateTag",
    "ProofSyntaxError",
    "check_proof",
    "conclusion_of",
    "parse_proof",
    "format_proof",
    "tree_redexes",
    "tree_normalize",
    "contract",
    "subproof",
    "positions",
    "inference_count",
    "occurrence_count",
    "symbol_size",
    "alpha_equal",
]

_TAG_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

Position = tuple[int, ...]


@dataclass(frozen=True)
class Hyp:
    formula: Formula
    tag: str


@dataclass(frozen=True)
class ImpIntro:
    body: "NDProof"
    antecedent: Formula
    tag: str
    vacuous: bool = False


@dataclass(frozen=True)
class ImpElim:
    major: "NDProof"
    minor: "NDProof"


NDProof = Union[Hyp, ImpIntro, ImpElim]


def _fmt_hyps(hyps: frozenset[Formula]) -> str:
    return ", ".join(sorted(format_formula(h, compact=True) for h in hyps))


@dataclass(frozen=True)
class Judgement:
    hypotheses: frozenset[Formula]
    conclusion: Formula

    def __str__(self) -> str:
        return "{" + _fmt_hyps(self.hypotheses) + "} |- " + format_formula(self.conclusion, compact=True)


class ProofError(ValueError):
    code = "ProofError"

    def __init__(self, message: str, position: Position = ()) -> None:
        super().__init__(f"{message} (at {'.'.join(map(str, position)) or 'root'})")
        self.position = position


class MajorNotImplication(ProofError):
    code = "MajorNotImplication"


class MinorMismatch(ProofError):
    code = "MinorMismatch"


class DischargeMismatch(ProofError):
    code = "DischargeMismatch"


class DuplicateTag(ProofError):
    code = "DuplicateTag"


class ProofSyntaxError(ValueError):
    code = "ProofSyntaxError"

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


# ---------------------------------------------------------------------------
# checking


def check_proof(p: NDProof) -> Judgement:
    """Validate ``p`` and return its open hypotheses and conclusion."""
    open_hyps: set[Formula] = set()
    # tag -> [antecedent, used]
    scope: dict[str, list] = {}

    def go(node: NDProof, pos: Position) -> Formula:
        if isinstance(node, Hyp):
            binder = scope.get(node.tag)
            if binder is None:
                open_hyps.add(node.formula)
            else:
                if binder[0] != node.formula:
                    raise DischargeMismatch(
                        f"hypothesis {format_formula(node.formula)} tagged {node.tag} "
                        f"does not match discharged {format_formula(binder[0])}",
                        pos,
                    )
                binder[1] = True
            return node.formula
        if isinstance(node, ImpIntro):
            if node.tag in scope:
                raise DuplicateTag(f"tag {node.tag} discharged twice on one path", pos)
            binder = [node.antecedent, False]
            scope[node.tag] = binder
            try:
                body = go(node.body, pos + (0,))
            finally:
                del scope[node.tag]
            if node.vacuous and binder[1]:
                raise DischargeMismatch(f"vacuous discharge of {node.tag} but hypothesis is used", pos)
            if not node.vacuous and not binder[1]:
                raise DischargeMismatch(f"no hypothesis tagged {node.tag} to discharge", pos)
            return Impl(node.antecedent, body)
        major = go(node.major, pos + (0,))
        minor = go(node.minor, pos + (1,))
        if not isinstance(major, Impl):
            raise MajorNotImplication(f"major premise {format_formula(major)} is not an implication", pos)
        if major.left != minor:
            raise MinorMismatch(
                f"minor premise {format_formula(minor)} does not match {format_formula(major.left)}", pos
            )
        return major.right

    conclusion = go(p, ())
    return Judgement(frozenset(open_hyps), conclusion)


def conclusion_of(p: NDProof) -> Formula:
    if isinstance(p, Hyp):
        return p.formula
    if isinstance(p, ImpIntro):
        return Impl(p.antecedent, conclusion_of(p.body))
    major = conclusion_of(p.major)
    assert isinstance(major, Impl)
    return major.right


# ---------------------------------------------------------------------------
# traversal and sizes


def positions(p: NDProof, pos: Position = ()) -> Iterator[tuple[Position, NDProof]]:
    """Pre-order walk yielding ``(position, subproof)`` pairs."""
    stack = [(pos, p)]
    while stack:
        here, node = stack.pop()
        yield here, node
        if isinstance(node, ImpIntro):
            stack.append((here + (0,), node.body))
        elif isinstance(node, ImpElim):
            stack.append((here + (1,), node.minor))
            stack.append((here + (0,), node.major))


def subproof(p: NDProof, pos: Position) -> NDProof:
    for i in pos:
        if isinstance(p, ImpIntro) and i == 0:
            p = p.body
        elif isinstance(p, ImpElim) and i in (0, 1):
            p = p.major if i == 0 else p.minor
        else:
            raise IndexError(pos)
    return p


def inference_count(p: NDProof) -> int:
    return sum(1 for _, node in positions(p) if not isinstance(node, Hyp))


def occurrence_count(p: NDProof) -> int:
    """Formula occurrences in the tree: one per line of the deduction."""
    return sum(1 for _ in positions(p))


def symbol_size(p: NDProof) -> int:
    """Symbols written in the tree: formula symbols plus one per inference."""
    total = 0
    for _, node in positions(p):
        if isinstance(node, Hyp):
            total += formula_size(node.formula)
        else:
            total += 1 + formula_size(conclusion_of(node))
    return total


# ---------------------------------------------------------------------------
# text format


_SEXP_TOKEN = re.compile(r'\s*(?:(;[^\n]*)|(\()|(\))|"([^"]*)"|([A-Za-z_][A-Za-z0-9_]*)|(\S))')


def _sexp_tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _SEXP_TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        if m.group(1) is not None:
            continue
        if m.group(2):
            out.append(("(", "(", m.start(2)))
        elif m.group(3):
            out.append((")", ")", m.start(3)))
        elif m.group(4) is not None:
            out.append(("str", m.group(4), m.start(4) - 1))
        elif m.group(5):
            out.append(("sym", m.group(5), m.start(5)))
        elif m.group(6):
            raise ProofSyntaxError(f"unexpected character {m.group(6)!r}", m.start(6))
    out.append(("eof", "", len(text)))
    return out


def parse_proof(text: str) -> NDProof:
    """Parse the s-expression proof format.

    ``(hyp "<formula>" tag)``, ``(impI <body> "<formula>" tag [vacuous])`` and
    ``(impE <major> <minor>)``.  Lines starting with ``;`` are comments.
    """
    toks = _sexp_tokens(text)
    i = 0

    def expect(kind: str) -> tuple[str, str, int]:
        nonlocal i
        tok = toks[i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ProofSyntaxError(f"expected {kind}, found {what}", tok[2])
        i += 1
        return tok

    def formula_arg() -> Formula:
        _, s, off = expect("str")
        try:
            return parse_formula(s)
        except FormulaSyntaxError as exc:
            raise ProofSyntaxError(f"bad formula {s!r}: {exc}", off + 1 + exc.offset) from None

    def node() -> NDProof:
        nonlocal i
        expect("(")
        _, head, off = expect("sym")
        if head == "hyp":
            f = formula_arg()
            _, tag, _ = expect("sym")
            result: NDProof = Hyp(f, tag)
        elif head == "impI":
            body = node()
            f = formula_arg()
            _, tag, _ = expect("sym")
            vacuous = False
            if toks[i][0] == "sym":
                _, flag, foff = expect("sym")
                if flag != "vacuous":
                    raise ProofSyntaxError(f"unknown flag {flag!r}", foff)
                vacuous = True
            result = ImpIntro(body, f, tag, vacuous)
        elif head == "impE":
            major = node()
            if toks[i][0] == ")":
                raise ProofSyntaxError("impE expects two premises", toks[i][2])
            result = ImpElim(major, node())
        else:
            raise ProofSyntaxError(f"unknown rule {head!r}", off)
        expect(")")
        return result

    result = node()
    expect("eof")
    return result


def format_proof(p: NDProof, indent: int = 0) -> str:
    """Canonical multi-line rendering; ``parse_proof`` inverts it."""
    pad = "  " * indent
    if isinstance(p, Hyp):
        return f'{pad}(hyp "{format_formula(p.formula)}" {p.tag})'
    if isinstance(p, ImpIntro):
        flag = " vacuous" if p.vacuous else ""
        body = format_proof(p.body, indent + 1)
        return f'{pad}(impI\n{body}\n{pad}  "{format_formula(p.antecedent)}" {p.tag}{flag})'
    major = format_proof(p.major, indent + 1)
    minor = format_proof(p.minor, indent + 1)
    return f"{pad}(impE\n{major}\n{minor})"


# ---------------------------------------------------------------------------
# redexes and the tree normalizer


def tree_redexes(p: NDProof) -> list[Position]:
    return [
        pos
        for pos, node in positions(p)
        if isinstance(node, ImpElim) and isinstance(node.major, ImpIntro)
    ]


def _binder_tags(p: NDProof) -> set[str]:
    return {node.tag for _, node in positions(p) if isinstance(node, ImpIntro)}


def _all_tags(p: NDProof) -> set[str]:
    return {node.tag for _, node in positions(p) if isinstance(node, (Hyp, ImpIntro))}


class _Fresh:
    def __init__(self, avoid: set[str]) -> None:
        self.avoid = set(avoid)
        self.counter = itertools.count(1)

    def __call__(self) -> str:
        while True:
            tag = f"t{next(self.counter)}"
            if tag not in self.avoid:
                self.avoid.add(tag)
                return tag


def _rename_binders(p: NDProof, fresh: _Fresh, env: dict[str, str] | None = None) -> NDProof:
    env = env or {}
    if isinstance(p, Hyp):
        return Hyp(p.formula, env.get(p.tag, p.tag))
    if isinstance(p, ImpIntro):
        new = fresh()
        return ImpIntro(_rename_binders(p.body, fresh, {**env, p.tag: new}), p.antecedent, new, p.vacuous)
    return ImpElim(_rename_binders(p.major, fresh, env), _rename_binders(p.minor, fresh, env))


def _substitute(body: NDProof, tag: str, arg: NDProof, fresh: _Fresh) -> NDProof:
    # Binder tags are globally unique here, so no capture is possible; each
    # copy of ``arg`` gets fresh binders to keep that property.
    if isinstance(body, Hyp):
        return _rename_binders(arg, fresh) if body.tag == tag else body
    if isinstance(body, ImpIntro):
        return replace(body, body=_substitute(body.body, tag, arg, fresh))
    return ImpElim(_substitute(body.major, tag, arg, fresh), _substitute(body.minor, tag, arg, fresh))


def _fix_vacuous(p: NDProof) -> NDProof:
    used: set[str] = set()

    def go(node: NDProof) -> NDProof:
        if isinstance(node, Hyp):
            used.add(node.tag)
            return node
        if isinstance(node, ImpIntro):
            body = go(node.body)
            vacuous = node.tag not in used
            used.discard(node.tag)
            return ImpIntro(body, node.antecedent, node.tag, vacuous)
        return ImpElim(go(node.major), go(node.minor))

    return go(p)


def _replace_at(p: NDProof, pos: Position, new: NDProof) -> NDProof:
    if not pos:
        return new
    head, rest = pos[0], pos[1:]
    if isinstance(p, ImpIntro):
        return replace(p, body=_replace_at(p.body, rest, new))
    assert isinstance(p, ImpElim)
    if head == 0:
        return ImpElim(_replace_at(p.major, rest, new), p.minor)
    return ImpElim(p.major, _replace_at(p.minor, rest, new))


def contract(p: NDProof, pos: Position, _fresh: _Fresh | None = None) -> NDProof:
    """Contract the redex at ``pos``: plug the minor derivation into the body."""
    fresh = _fresh or _Fresh(_all_tags(p))
    redex = subproof(p, pos)
    if not (isinstance(redex, ImpElim) and isinstance(redex.major, ImpIntro)):
        raise ValueError(f"no redex at {pos}")
    intro = redex.major
    if _fresh is None:
        # make binders unique before substituting
        p = _rename_binders(p, fresh)
        redex = subproof(p, pos)
        assert isinstance(redex, ImpElim) and isinstance(redex.major, ImpIntro)
        intro = redex.major
    reduced = _substitute(intro.body, intro.tag, redex.minor, fresh)
    return _fix_vacuous(_replace_at(p, pos, reduced))


def _innermost_leftmost(p: NDProof) -> Position | None:
    # a redex none of whose proper subproofs contains a redex; pre-order is
    # leftmost, so the last redex on the first redex-path is innermost
    found = tree_redexes(p)
    if not found:
        return None
    for pos in found:
        if not any(len(other) > len(pos) and other[: len(pos)] == pos for other in found):
            return pos
    return found[-1]


def tree_normalize(p: NDProof) -> NDProof:
    """Contract redexes leftmost-innermost until the tree is normal."""
    fresh = _Fresh(_all_tags(p))
    p = _rename_binders(p, fresh)
    while True:
        pos = _innermost_leftmost(p)
        if pos is None:
            return p
        p = contract(p, pos, fresh)


def alpha_equal(a: NDProof, b: NDProof) -> bool:
    """Structural equality up to consistent renaming of bound tags."""

    def go(x: NDProof, y: NDProof, env_x: dict[str, int], env_y: dict[str, int], depth: int) -> bool:
        if isinstance(x, Hyp) and isinstance(y, Hyp):
            if x.formula != y.formula:
                return False
            bx, by = env_x.get(x.tag), env_y.get(y.tag)
            if bx is None and by is None:
                return x.tag == y.tag
            return bx == by
        if isinstance(x, ImpIntro) and isinstance(y, ImpIntro):
            return (
                x.antecedent == y.antecedent
                and x.vacuous == y.vacuous
                and go(x.body, y.body, {**env_x, x.tag: depth}, {**env_y, y.tag: depth}, depth + 1)
            )
        if isinstance(x, ImpElim) and isinstance(y, ImpElim):
            return go(x.major, y.major, env_x, env_y, depth) and go(x.minor, y.minor, env_x, env_y, depth)
        return False

    return go(a, b, {}, {}, 0)
