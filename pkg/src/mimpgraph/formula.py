"""Implicational formulas: syntax, printing and the shared formula graph."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

__all__ = [
    "Atom",
    "Impl",
    "Formula",
    "FormulaSyntaxError",
    "FormulaGraph",
    "parse_formula",
    "format_formula",
    "subformulas",
    "build_formula_graph",
    "formula_size",
]

_ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self) -> None:
        if not _ATOM_RE.match(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Impl:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


Formula = Union[Atom, Impl]


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


_TOKEN_RE = re.compile(r"\s*(?:(->)|([()])|([a-z][A-Za-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start)
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    # formula := atom_or_group ( "->" formula )?
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.primary()
        if self.peek()[0] == "->":
            self.take()
            return Impl(left, self.formula())
        return left

    def primary(self) -> Formula:
        tok, pos = self.take()
        if tok == "(":
            inner = self.formula()
            close, cpos = self.take()
            if close != ")":
                raise FormulaSyntaxError("expected ')'", cpos)
            return inner
        if tok and _ATOM_RE.match(tok):
            return Atom(tok)
        raise FormulaSyntaxError("expected atom or '('" if tok else "unexpected end of input", pos)


def parse_formula(text: str) -> Formula:
    """Parse ``text`` with ``->`` associating to the right.

    >>> parse_formula("p -> q -> r") == Impl(Atom("p"), Impl(Atom("q"), Atom("r")))
    True
    """
    if not text.strip():
        raise FormulaSyntaxError("empty formula", 0)
    parser = _Parser(text)
    result = parser.formula()
    tok, pos = parser.peek()
    if tok:
        raise FormulaSyntaxError(f"unexpected token {tok!r}", pos)
    return result


def format_formula(f: Formula, compact: bool = False) -> str:
    arrow = "->" if compact else " -> "
    if isinstance(f, Atom):
        return f.name
    left = format_formula(f.left, compact)
    if isinstance(f.left, Impl):
        left = f"({left})"
    return left + arrow + format_formula(f.right, compact)


def _walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Impl):
            stack.append(g.right)
            stack.append(g.left)


def subformulas(f: Formula) -> frozenset[Formula]:
    return frozenset(_walk(f))


def formula_size(f: Formula) -> int:
    """Number of symbol positions (atoms plus arrows) in ``f``."""
    return sum(1 for _ in _walk(f))


@dataclass
class FormulaGraph:
    """Maximally shared DAG of formulas with ``l``/``r`` edges."""

    nodes: dict[int, Formula] = field(default_factory=dict)
    index: dict[Formula, int] = field(default_factory=dict)
    edges: set[tuple[int, str, int]] = field(default_factory=set)

    def add(self, f: Formula) -> int:
        existing = self.index.get(f)
        if existing is not None:
            return existing
        if isinstance(f, Impl):
            left = self.add(f.left)
            right = self.add(f.right)
        node = len(self.nodes)
        self.nodes[node] = f
        self.index[f] = node
        if isinstance(f, Impl):
            self.edges.add((node, "l", left))
            self.edges.add((node, "r", right))
        return node

    def __len__(self) -> int:
        return len(self.nodes)


def build_formula_graph(fs: Iterable[Formula], graph: FormulaGraph | None = None) -> FormulaGraph:
    graph = graph if graph is not None else FormulaGraph()
    for f in fs:
        graph.add(f)
    return graph
